#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qcvur/matrix.hpp"
#include "qcvur/state.hpp"

namespace qcvur {

/// Branches with probability below this are skipped and carry zero weight.
inline constexpr double kMinBranchProbability = 1e-12;

/// Hermitian operator acting on one subsystem of a composite state.
class Observable {
 public:
  /// Throws HermiticityError for non-Hermitian matrices.
  Observable(ComplexMatrix matrix, std::size_t subsystem);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t subsystem() const { return subsystem_; }

 private:
  ComplexMatrix matrix_;
  std::size_t subsystem_;
};

struct Outcome {
  double eigenvalue;
  ComplexMatrix projector;
};

/// Spectral projectors of an observable, eigenvalues strictly increasing.
struct ProjectiveDecomposition {
  std::vector<Outcome> outcomes;
};

/// Eigenspaces whose eigenvalues differ by less than 1e-9 are merged.
ProjectiveDecomposition projective_decomposition(const Observable& obs);

struct Branch {
  double probability;
  DensityOperator conditional;  // over the remaining subsystems
};

/// Conditions `rho` on projector outcome `projector` of subsystem `subsystem`.
/// Throws NullBranch when the outcome probability is below kMinBranchProbability.
Branch condition_on_outcome(const DensityOperator& rho, const ComplexMatrix& projector,
                            std::size_t subsystem);

cplx expectation(const DensityOperator& rho, const ComplexMatrix& op, std::size_t subsystem);
double expectation(const DensityOperator& rho, const Observable& q);
double variance(const DensityOperator& rho, const Observable& q);

/// E[V(Q|O)] and V[E(Q|O)]; they sum to V(Q).
struct ConditionalStats {
  double e_of_v;
  double v_of_e;
};

/// Throws SubsystemError when q and o act on the same subsystem.
ConditionalStats conditional_stats(const DensityOperator& rho, const Observable& q,
                                   const Observable& o);

/// Chained law-of-total-variance split of V(Q) under ordered controls C_1..C_N:
///   V(Q) = residual + first_term + sum(nested)
/// residual   = E[V(Q | c_1..c_N)]
/// first_term = V[E(Q | c_1)]
/// nested[n-2] = E[ V( E[Q | c_1..c_n] | c_1..c_{n-1} ) ],  n = 2..N
struct SequentialDecomposition {
  double residual;
  double first_term;
  std::vector<double> nested;

  double total() const;
};

/// Outcome tuples are enumerated lexicographically in ascending eigenvalue
/// per control. Throws SubsystemError on duplicate subsystems or a control on
/// the measured subsystem.
SequentialDecomposition sequential_decomposition(const DensityOperator& rho, const Observable& q,
                                                 std::span<const Observable> controls);

}  // namespace qcvur
