#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcvur {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;

/// Dense square complex matrix, row-major. Sized for desk-scale states
/// (dimension up to 16), so there is no sparse path.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const { return dim_; }
  std::span<const cplx> entries() const { return data_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conj() const;
  cplx trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// max_{ij} |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Tr(a * b) without forming the product.
cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out every subsystem not listed in `keep`. Kept subsystems retain
/// their relative order. Throws DimensionError when `dims` does not multiply
/// out to m.dim() or `keep` is empty / out of range.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Lifts a single-subsystem operator to the full space, identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, std::span<const std::size_t> dims,
                    std::size_t subsystem);

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Cyclic complex Jacobi. Eigenvectors are phase-canonicalized (first
/// non-negligible component real positive); ties in eigenvalue are ordered
/// by the first differing real part of the canonical vectors.
EigenSystem eig_hermitian(const ComplexMatrix& m);

/// exp(s*m) with the largest exponent shifted out during exponentiation and
/// restored at the end. Throws RangeError if the restored result overflows.
ComplexMatrix exp_hermitian_scaled(const ComplexMatrix& m, double s);

/// exp(s*m - shift*I) together with the shift (the largest of s*lambda).
/// Used where only the normalized result matters.
struct ShiftedExp {
  ComplexMatrix value;
  double shift = 0.0;
};
ShiftedExp exp_hermitian_shifted(const ComplexMatrix& m, double s);

namespace pauli {
ComplexMatrix i2();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix plus();   // sigma_+ = |0><1|
ComplexMatrix minus();  // sigma_- = |1><0|
}  // namespace pauli

}  // namespace qcvur
