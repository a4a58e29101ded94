#pragma once

#include "qcvur/matrix.hpp"
#include "qcvur/state.hpp"

namespace qcvur::dm {

/// Lowest admissible temperature; keeps beta <= 1000.
inline constexpr double kMinTemperature = 1e-3;

/// Two-qubit Heisenberg model with a z-axis DM vector, in units with k = 1.
class ModelParams {
 public:
  /// Throws ValidationError if d < 0, |j| < 1e-9, or t < kMinTemperature.
  ModelParams(double d, double j, double t);

  double d() const { return d_; }
  double j() const { return j_; }
  double t() const { return t_; }

  double beta() const { return 1.0 / t_; }
  /// 2 J sqrt(1 + D^2); carries the sign of J.
  double delta() const;
  /// Phase of (1 + iD), i.e. arctan(D). Not to be confused with the free
  /// phase of the variance-sum bound.
  double theta_dm() const;

 private:
  double d_;
  double j_;
  double t_;
};

/// (J/2)[xx + yy + zz + D(xy - yx)], qubit 1 as the left tensor factor.
ComplexMatrix hamiltonian(const ModelParams& p);

/// Same operator without parameter validation; used for the J -> 0 boundary.
ComplexMatrix hamiltonian_unchecked(double d, double j);

/// Gibbs state exp(-beta H)/Z computed from the spectral exponential.
DensityOperator thermal_state(const ModelParams& p);

/// The X-state closed form of the thermal state, normalized by Z:
///   rho11 = rho44 = e^{-bJ/2},  rho22 = rho33 = e^{bJ/2} cosh(b delta/2),
///   rho23 = -e^{i theta_dm} e^{bJ/2} sinh(b delta/2).
/// Evaluated with a common exponential factor removed.
ComplexMatrix closed_form_thermal_matrix(const ModelParams& p);

/// Mixedness 1 - Tr(rho^2) from the model's closed form in (beta J, beta delta).
double closed_form_mixedness(const ModelParams& p);

/// Concurrence (2/Z) max(e^{bJ/2}|sinh(b delta/2)| - e^{-bJ/2}, 0).
/// The subtracted term is sqrt(rho11 rho44) of the thermal state; see README
/// for why its exponent is negative.
double closed_form_concurrence(const ModelParams& p);

}  // namespace qcvur::dm
