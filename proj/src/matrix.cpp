#include "qcvur/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "qcvur/errors.hpp"

namespace qcvur {

namespace {

constexpr double kJacobiOffTol = 1e-12;
constexpr int kJacobiMaxSweeps = 100;

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()));
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// Rotate so that the first component with magnitude above 1e-12 is real positive.
void canonicalize_phase(ComplexMatrix& v, std::size_t col) {
  const std::size_t n = v.dim();
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::abs(v(i, col));
    if (mag > 1e-12) {
      const cplx phase = std::conj(v(i, col)) / mag;
      for (std::size_t k = 0; k < n; ++k) v(k, col) *= phase;
      v(i, col) = mag;
      return;
    }
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw DimensionError("ComplexMatrix: expected " + std::to_string(dim_ * dim_) +
                         " entries, got " + std::to_string(data_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionError("ComplexMatrix: rows must form a square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out(*this);
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_dim(*this, o, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_dim(*this, o, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator*");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) worst = std::max(worst, std::abs(ea[k] - eb[k]));
  return worst;
}

double frobenius_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (const auto& z : m.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_of_product");
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (dims.empty() || total != m.dim()) {
    throw DimensionError("partial_trace: subsystem dims multiply to " + std::to_string(total) +
                         ", matrix dim is " + std::to_string(m.dim()));
  }
  if (keep.empty()) throw DimensionError("partial_trace: keep set is empty");

  const std::size_t n_sub = dims.size();
  std::vector<bool> kept(n_sub, false);
  for (std::size_t s : keep) {
    if (s >= n_sub) throw DimensionError("partial_trace: subsystem index out of range");
    kept[s] = true;
  }

  // Row-major strides of the full index, and of the reduced (kept) index.
  std::vector<std::size_t> stride(n_sub, 1);
  for (std::size_t s = n_sub - 1; s > 0; --s) stride[s - 1] = stride[s] * dims[s];
  std::vector<std::size_t> kept_stride(n_sub, 0);
  std::size_t kept_dim = 1;
  for (std::size_t s = n_sub; s-- > 0;) {
    if (kept[s]) {
      kept_stride[s] = kept_dim;
      kept_dim *= dims[s];
    }
  }

  auto digit = [&](std::size_t idx, std::size_t s) { return (idx / stride[s]) % dims[s]; };
  auto reduced_index = [&](std::size_t idx) {
    std::size_t r = 0;
    for (std::size_t s = 0; s < n_sub; ++s)
      if (kept[s]) r += digit(idx, s) * kept_stride[s];
    return r;
  };
  auto traced_match = [&](std::size_t a, std::size_t b) {
    for (std::size_t s = 0; s < n_sub; ++s)
      if (!kept[s] && digit(a, s) != digit(b, s)) return false;
    return true;
  };

  ComplexMatrix out(kept_dim);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      if (traced_match(i, j)) out(reduced_index(i), reduced_index(j)) += m(i, j);
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, std::span<const std::size_t> dims,
                    std::size_t subsystem) {
  if (subsystem >= dims.size()) throw DimensionError("embed: subsystem index out of range");
  if (op.dim() != dims[subsystem]) {
    throw DimensionError("embed: operator dim " + std::to_string(op.dim()) +
                         " does not match subsystem dim " + std::to_string(dims[subsystem]));
  }
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t s = 0; s < dims.size(); ++s)
    out = kron(out, s == subsystem ? op : ComplexMatrix::identity(dims[s]));
  return out;
}

EigenSystem eig_hermitian(const ComplexMatrix& m) {
  if (!is_hermitian(m)) throw HermiticityError("eig_hermitian: input is not Hermitian");
  const std::size_t n = m.dim();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double tol = kJacobiOffTol * std::max(1.0, frobenius_norm(m));

  int sweep = 0;
  while (off_diagonal_norm(a) >= tol) {
    if (++sweep > kJacobiMaxSweeps) {
      throw ConvergenceError("eig_hermitian: no convergence after " +
                             std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        const cplx phase = a(p, q) / apq;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const cplx gpp = c;
        const cplx gpq = s;
        const cplx gqp = -s * std::conj(phase);
        const cplx gqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) canonicalize_phase(v, k);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const double tie_tol = 1e-12 * std::max(1.0, frobenius_norm(m));
  auto vector_less = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < n; ++i) {
      const double rx = v(i, x).real();
      const double ry = v(i, y).real();
      if (std::abs(rx - ry) > 1e-12) return rx < ry;
    }
    return false;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  // Reorder runs of numerically equal eigenvalues by their canonical vectors.
  for (std::size_t begin = 0; begin < n;) {
    std::size_t end = begin + 1;
    while (end < n && a(order[end], order[end]).real() - a(order[begin], order[begin]).real() <= tie_tol)
      ++end;
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(begin),
                     order.begin() + static_cast<std::ptrdiff_t>(end), vector_less);
    begin = end;
  }

  EigenSystem out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

ShiftedExp exp_hermitian_shifted(const ComplexMatrix& m, double s) {
  const EigenSystem es = eig_hermitian(m);
  const std::size_t n = m.dim();
  double shift = -std::numeric_limits<double>::infinity();
  for (double lambda : es.values) shift = std::max(shift, s * lambda);
  if (n == 0) shift = 0.0;

  std::vector<double> weights(n);
  for (std::size_t k = 0; k < n; ++k) weights[k] = std::exp(s * es.values[k] - shift);

  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k)
        acc += es.vectors(i, k) * weights[k] * std::conj(es.vectors(j, k));
      out(i, j) = acc;
    }
  return {std::move(out), shift};
}

ComplexMatrix exp_hermitian_scaled(const ComplexMatrix& m, double s) {
  ShiftedExp e = exp_hermitian_shifted(m, s);
  const double scale = std::exp(e.shift);
  if (!std::isfinite(scale)) {
    throw RangeError("exp_hermitian_scaled: largest exponent " + std::to_string(e.shift) +
                     " overflows double");
  }
  e.value *= scale;
  return e.value;
}

namespace pauli {
ComplexMatrix i2() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix plus() { return {{0.0, 1.0}, {0.0, 0.0}}; }
ComplexMatrix minus() { return {{0.0, 0.0}, {1.0, 0.0}}; }
}  // namespace pauli

}  // namespace qcvur
