#include "qcvur/random_states.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

namespace qcvur {

namespace {

// exp(-i phi P / 2) for a Pauli-type P with P^2 = I.
ComplexMatrix pauli_rotation(const ComplexMatrix& p, double phi) {
  return ComplexMatrix::identity(p.dim()) * cplx{std::cos(phi / 2.0), 0.0} +
         p * cplx{0.0, -std::sin(phi / 2.0)};
}

ComplexMatrix on_qubit(const ComplexMatrix& op, std::size_t qubit, std::size_t n_qubits) {
  const std::vector<std::size_t> dims(n_qubits, 2);
  return embed(op, dims, qubit);
}

}  // namespace

double RandomStates::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

cplx RandomStates::gaussian() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re, im};
}

ComplexMatrix RandomStates::general(std::size_t dim) {
  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = gaussian();
  return g;
}

ComplexMatrix RandomStates::hermitian(std::size_t dim) {
  const ComplexMatrix g = general(dim);
  return (g + g.adjoint()) * cplx{0.5, 0.0};
}

DensityOperator RandomStates::mixed_state(std::vector<std::size_t> dims) {
  const std::size_t n =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  const ComplexMatrix g = general(n);
  ComplexMatrix m = g * g.adjoint();
  m *= cplx{1.0 / m.trace().real(), 0.0};
  m = (m + m.adjoint()) * cplx{0.5, 0.0};
  return DensityOperator(std::move(m), std::move(dims));
}

DensityOperator RandomStates::pure_state(std::vector<std::size_t> dims) {
  const std::size_t n =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  std::vector<cplx> amps(n);
  for (auto& a : amps) a = gaussian();
  return DensityOperator::pure(amps, std::move(dims));
}

ComplexMatrix RandomStates::unitary_qubits(std::size_t n_qubits, int layers) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  ComplexMatrix u = ComplexMatrix::identity(dim);
  const ComplexMatrix paulis[] = {pauli::x(), pauli::y(), pauli::z()};
  for (int layer = 0; layer < layers; ++layer) {
    for (std::size_t q = 0; q < n_qubits; ++q)
      for (const ComplexMatrix& p : paulis)
        u = on_qubit(pauli_rotation(p, uniform(0.0, 2.0 * std::numbers::pi)), q, n_qubits) * u;
    for (std::size_t q = 0; q + 1 < n_qubits; ++q) {
      const ComplexMatrix zz = on_qubit(pauli::z(), q, n_qubits) * on_qubit(pauli::z(), q + 1, n_qubits);
      u = pauli_rotation(zz, uniform(0.0, 2.0 * std::numbers::pi)) * u;
    }
  }
  return u;
}

MeasurementSetup random_setup(RandomStates& rng, std::size_t n_qubits, std::size_t n_controls) {
  std::vector<std::size_t> order(n_qubits);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t k = n_qubits; k > 1; --k) {
    const auto pick = static_cast<std::size_t>(rng.uniform(0.0, static_cast<double>(k)));
    std::swap(order[k - 1], order[std::min(pick, k - 1)]);
  }
  const std::size_t measured = order[0];

  MeasurementSetup setup;
  for (int k = 0; k < 2; ++k) {
    MeasurementPair pair{Observable(rng.hermitian(2), measured), {}};
    // Each pair gets its own control order.
    std::vector<std::size_t> others(order.begin() + 1, order.end());
    for (std::size_t i = others.size(); i > 1; --i) {
      const auto pick = static_cast<std::size_t>(rng.uniform(0.0, static_cast<double>(i)));
      std::swap(others[i - 1], others[std::min(pick, i - 1)]);
    }
    for (std::size_t n = 0; n < n_controls; ++n)
      pair.controls.emplace_back(rng.hermitian(2), others[n]);
    setup.pairs.push_back(std::move(pair));
  }
  setup.ltra_operator = rng.general(2);
  setup.theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return setup;
}

}  // namespace qcvur
