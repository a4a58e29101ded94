#include "qcvur/dm_model.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>

#include "qcvur/errors.hpp"

namespace qcvur::dm {

namespace {

// max over the exponents, used to rescale sums of exponentials.
double max_of(std::initializer_list<double> xs) { return std::max(xs); }

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw RangeError(std::string(what) + ": non-finite result after rescaling");
}

}  // namespace

ModelParams::ModelParams(double d, double j, double t) : d_(d), j_(j), t_(t) {
  if (!(d >= 0.0)) throw ValidationError("ModelParams: D must be >= 0");
  if (!(std::abs(j) >= 1e-9)) throw ValidationError("ModelParams: J must be nonzero");
  if (!(t >= kMinTemperature)) {
    throw ValidationError("ModelParams: T must be >= " + std::to_string(kMinTemperature));
  }
}

double ModelParams::delta() const { return 2.0 * j_ * std::sqrt(1.0 + d_ * d_); }

double ModelParams::theta_dm() const { return std::atan(d_); }

ComplexMatrix hamiltonian_unchecked(double d, double j) {
  using namespace pauli;
  ComplexMatrix h = kron(x(), x()) + kron(y(), y()) + kron(z(), z());
  h += (kron(x(), y()) - kron(y(), x())) * cplx{d, 0.0};
  return h * cplx{j / 2.0, 0.0};
}

ComplexMatrix hamiltonian(const ModelParams& p) { return hamiltonian_unchecked(p.d(), p.j()); }

DensityOperator thermal_state(const ModelParams& p) {
  ShiftedExp e = exp_hermitian_shifted(hamiltonian(p), -p.beta());
  const double z = e.value.trace().real();
  if (!(z > 0.0) || !std::isfinite(z)) throw RangeError("thermal_state: partition function underflow");
  ComplexMatrix rho = e.value * cplx{1.0 / z, 0.0};
  rho = (rho + rho.adjoint()) * cplx{0.5, 0.0};
  return DensityOperator(std::move(rho), {2, 2});
}

ComplexMatrix closed_form_thermal_matrix(const ModelParams& p) {
  const double x = p.beta() * p.j() / 2.0;
  const double y = p.beta() * p.delta() / 2.0;
  // Unnormalized weights all scaled by e^{-s}.
  const double s = max_of({-x, x + std::abs(y)});
  const double corner = std::exp(-x - s);
  const double grow = std::exp(x + std::abs(y) - s);
  const double shrink = std::exp(x - std::abs(y) - s);
  const double cosh_term = 0.5 * (grow + shrink);
  const double sinh_term = std::copysign(0.5 * (grow - shrink), y);
  const double z = 2.0 * corner + 2.0 * cosh_term;

  ComplexMatrix m(4);
  m(0, 0) = corner / z;
  m(3, 3) = corner / z;
  m(1, 1) = cosh_term / z;
  m(2, 2) = cosh_term / z;
  const cplx off = -std::polar(1.0, p.theta_dm()) * (sinh_term / z);
  m(1, 2) = off;
  m(2, 1) = std::conj(off);
  return m;
}

double closed_form_mixedness(const ModelParams& p) {
  const double a = p.beta() * p.j();
  const double b = p.beta() * p.delta();
  // gamma = 4 e^{a+b} [cosh a + 2 cosh(b/2)] / [e^{a+b} + e^a + 2 e^{b/2}]^2,
  // with the numerator expanded into exponentials and everything divided by e^{2s}.
  const double s = max_of({a + b, a, b / 2.0});
  const double numerator = 2.0 * std::exp(2.0 * a + b - 2.0 * s) + 2.0 * std::exp(b - 2.0 * s) +
                           4.0 * std::exp(a + 1.5 * b - 2.0 * s) +
                           4.0 * std::exp(a + 0.5 * b - 2.0 * s);
  const double root = std::exp(a + b - s) + std::exp(a - s) + 2.0 * std::exp(b / 2.0 - s);
  const double gamma = numerator / (root * root);
  require_finite(gamma, "closed_form_mixedness");
  return gamma;
}

double closed_form_concurrence(const ModelParams& p) {
  const double x = p.beta() * p.j() / 2.0;
  const double y = std::abs(p.beta() * p.delta() / 2.0);
  const double s = max_of({-x, x + y});
  const double grow = std::exp(x + y - s);
  const double shrink = std::exp(x - y - s);
  const double corner = std::exp(-x - s);
  const double z = 2.0 * corner + grow + shrink;
  const double gap = 0.5 * (grow - shrink) - corner;
  const double c = 2.0 * std::max(gap, 0.0) / z;
  require_finite(c, "closed_form_concurrence");
  return c;
}

}  // namespace qcvur::dm
