#pragma once

#include <cstddef>
#include <vector>

#include "qcvur/matrix.hpp"

namespace qcvur {

/// A validated quantum state over a declared list of subsystem dimensions.
/// Construction checks Hermiticity, unit trace and positivity (all to 1e-10)
/// and throws ValidationError otherwise.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix matrix, std::vector<std::size_t> dims);

  /// Skips validation. Reserved for test oracles that build states whose
  /// validity is the thing under test.
  static DensityOperator unchecked(ComplexMatrix matrix, std::vector<std::size_t> dims);

  static DensityOperator pure(std::span<const cplx> amplitudes, std::vector<std::size_t> dims);
  static DensityOperator maximally_mixed(std::vector<std::size_t> dims);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim() const { return matrix_.dim(); }

  /// Eigenvalues with entries in [-1e-10, 0) clamped to zero.
  std::vector<double> spectrum() const;

  DensityOperator reduced(std::span<const std::size_t> keep) const;

 private:
  struct NoCheck {};
  DensityOperator(ComplexMatrix matrix, std::vector<std::size_t> dims, NoCheck);

  ComplexMatrix matrix_;
  std::vector<std::size_t> dims_;
};

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// 1 - Tr(rho^2).
double mixedness(const DensityOperator& rho);

/// Base-2 von Neumann entropy; eigenvalues below 1e-14 count as zero.
double von_neumann_entropy(const DensityOperator& rho);
double von_neumann_entropy(std::span<const double> spectrum);

/// Wootters concurrence max(0, s1 - s2 - s3 - s4), s_i the square roots of the
/// eigenvalues of rho (Y x Y) conj(rho) (Y x Y) in descending order.
double concurrence_two_qubit(const DensityOperator& rho);

}  // namespace qcvur
