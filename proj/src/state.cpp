#include "qcvur/state.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "qcvur/errors.hpp"

namespace qcvur {

namespace {

constexpr double kStateTol = 1e-10;
constexpr double kEntropyFloor = 1e-14;

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void check_dims(const ComplexMatrix& m, const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw DimensionError("DensityOperator: empty subsystem list");
  for (std::size_t d : dims)
    if (d < 2) throw DimensionError("DensityOperator: subsystem dims must be >= 2");
  if (product(dims) != m.dim()) {
    throw DimensionError("DensityOperator: dims multiply to " + std::to_string(product(dims)) +
                         " but matrix dim is " + std::to_string(m.dim()));
  }
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  const EigenSystem es = eig_hermitian(m);
  const std::size_t n = m.dim();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(std::max(es.values[k], 0.0));
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += es.vectors(i, k) * root * std::conj(es.vectors(j, k));
  }
  return out;
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix matrix, std::vector<std::size_t> dims, NoCheck)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {}

DensityOperator::DensityOperator(ComplexMatrix matrix, std::vector<std::size_t> dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  check_dims(matrix_, dims_);
  if (!is_hermitian(matrix_, kStateTol)) throw ValidationError("DensityOperator: not Hermitian");
  const cplx tr = matrix_.trace();
  if (std::abs(tr - cplx{1.0, 0.0}) > kStateTol) {
    throw ValidationError("DensityOperator: trace " + std::to_string(tr.real()) + " != 1");
  }
  const EigenSystem es = eig_hermitian(matrix_);
  if (es.values.front() < -kStateTol) {
    throw ValidationError("DensityOperator: negative eigenvalue " +
                          std::to_string(es.values.front()));
  }
}

DensityOperator DensityOperator::unchecked(ComplexMatrix matrix, std::vector<std::size_t> dims) {
  return DensityOperator(std::move(matrix), std::move(dims), NoCheck{});
}

DensityOperator DensityOperator::pure(std::span<const cplx> amplitudes,
                                      std::vector<std::size_t> dims) {
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (norm2 == 0.0) throw ValidationError("DensityOperator::pure: zero vector");
  const std::size_t n = amplitudes.size();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / norm2;
  return DensityOperator(std::move(m), std::move(dims));
}

DensityOperator DensityOperator::maximally_mixed(std::vector<std::size_t> dims) {
  const std::size_t n = product(dims);
  return DensityOperator(ComplexMatrix::identity(n) * cplx{1.0 / static_cast<double>(n), 0.0},
                         std::move(dims));
}

std::vector<double> DensityOperator::spectrum() const {
  std::vector<double> values = eig_hermitian(matrix_).values;
  for (double& v : values)
    if (v < 0.0 && v >= -kStateTol) v = 0.0;
  return values;
}

DensityOperator DensityOperator::reduced(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> sorted_keep(keep.begin(), keep.end());
  std::sort(sorted_keep.begin(), sorted_keep.end());
  std::vector<std::size_t> kept_dims;
  for (std::size_t s : sorted_keep) {
    if (s >= dims_.size()) throw DimensionError("reduced: subsystem index out of range");
    kept_dims.push_back(dims_[s]);
  }
  return DensityOperator(partial_trace(matrix_, dims_, sorted_keep), std::move(kept_dims));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityOperator(kron(a.matrix(), b.matrix()), std::move(dims));
}

double mixedness(const DensityOperator& rho) {
  double purity = 0.0;
  for (const auto& z : rho.matrix().entries()) purity += std::norm(z);
  return 1.0 - purity;
}

double von_neumann_entropy(std::span<const double> spectrum) {
  double h = 0.0;
  for (double lambda : spectrum)
    if (lambda >= kEntropyFloor) h -= lambda * std::log2(lambda);
  return h;
}

double von_neumann_entropy(const DensityOperator& rho) {
  const std::vector<double> spectrum = rho.spectrum();
  return von_neumann_entropy(spectrum);
}

double concurrence_two_qubit(const DensityOperator& rho) {
  if (rho.dims() != std::vector<std::size_t>{2, 2}) {
    throw DimensionError("concurrence_two_qubit: state must have dims [2, 2]");
  }
  // sqrt(mu_i) are the singular values of sqrt(rho) sqrt(rho_tilde), where
  // sqrt(rho_tilde) = (Y x Y) conj(sqrt(rho)) (Y x Y). They are read off the
  // Hermitian dilation [[0, A], [A^dag, 0]], whose spectrum is +-sigma_i; this
  // avoids square roots of eigenvalues that are pure rounding noise.
  const ComplexMatrix yy = kron(pauli::y(), pauli::y());
  const ComplexMatrix root = sqrt_psd(rho.matrix());
  const ComplexMatrix a = root * (yy * root.conj() * yy);

  const std::size_t n = a.dim();
  ComplexMatrix dilation(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      dilation(i, n + j) = a(i, j);
      dilation(n + j, i) = std::conj(a(i, j));
    }
  const std::vector<double> spectrum = eig_hermitian(dilation).values;
  std::vector<double> sigma(spectrum.end() - static_cast<std::ptrdiff_t>(n), spectrum.end());
  for (double& s : sigma) s = std::max(s, 0.0);
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return std::max(0.0, sigma[0] - sigma[1] - sigma[2] - sigma[3]);
}

}  // namespace qcvur
