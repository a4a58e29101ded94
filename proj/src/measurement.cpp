#include "qcvur/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "qcvur/errors.hpp"

namespace qcvur {

namespace {

constexpr double kMergeTol = 1e-9;

ComplexMatrix symmetrized(const ComplexMatrix& m) {
  return (m + m.adjoint()) * cplx{0.5, 0.0};
}

}  // namespace

Observable::Observable(ComplexMatrix matrix, std::size_t subsystem)
    : matrix_(std::move(matrix)), subsystem_(subsystem) {
  if (!is_hermitian(matrix_)) throw HermiticityError("Observable: matrix is not Hermitian");
}

ProjectiveDecomposition projective_decomposition(const Observable& obs) {
  const EigenSystem es = eig_hermitian(obs.matrix());
  const std::size_t n = es.values.size();
  ProjectiveDecomposition out;
  for (std::size_t begin = 0; begin < n;) {
    std::size_t end = begin + 1;
    while (end < n && es.values[end] - es.values[end - 1] < kMergeTol) ++end;

    ComplexMatrix proj(n);
    double sum = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      sum += es.values[k];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          proj(i, j) += es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    out.outcomes.push_back({sum / static_cast<double>(end - begin), std::move(proj)});
    begin = end;
  }
  return out;
}

Branch condition_on_outcome(const DensityOperator& rho, const ComplexMatrix& projector,
                            std::size_t subsystem) {
  const auto& dims = rho.dims();
  if (dims.size() < 2) throw DimensionError("condition_on_outcome: need at least two subsystems");
  const ComplexMatrix p_full = embed(projector, dims, subsystem);
  const ComplexMatrix projected = p_full * rho.matrix() * p_full;
  const double prob = projected.trace().real();
  if (prob < kMinBranchProbability) {
    throw NullBranch("condition_on_outcome: outcome probability " + std::to_string(prob) +
                     " below threshold");
  }
  std::vector<std::size_t> keep;
  std::vector<std::size_t> kept_dims;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (s == subsystem) continue;
    keep.push_back(s);
    kept_dims.push_back(dims[s]);
  }
  ComplexMatrix cond = partial_trace(projected, dims, keep) * cplx{1.0 / prob, 0.0};
  return {prob, DensityOperator(symmetrized(cond), std::move(kept_dims))};
}

cplx expectation(const DensityOperator& rho, const ComplexMatrix& op, std::size_t subsystem) {
  return trace_of_product(rho.matrix(), embed(op, rho.dims(), subsystem));
}

double expectation(const DensityOperator& rho, const Observable& q) {
  return expectation(rho, q.matrix(), q.subsystem()).real();
}

double variance(const DensityOperator& rho, const Observable& q) {
  const ComplexMatrix full = embed(q.matrix(), rho.dims(), q.subsystem());
  const double mean = trace_of_product(rho.matrix(), full).real();
  const double second = trace_of_product(rho.matrix(), full * full).real();
  return std::max(second - mean * mean, 0.0);
}

ConditionalStats conditional_stats(const DensityOperator& rho, const Observable& q,
                                   const Observable& o) {
  if (q.subsystem() == o.subsystem()) {
    throw SubsystemError("conditional_stats: Q and O act on the same subsystem");
  }
  const std::size_t q_sub = q.subsystem() - (q.subsystem() > o.subsystem() ? 1 : 0);
  const Observable q_reduced(q.matrix(), q_sub);

  double e_of_v = 0.0;
  double weighted_mean = 0.0;
  double weighted_mean_sq = 0.0;
  for (const Outcome& outcome : projective_decomposition(o).outcomes) {
    try {
      const Branch b = condition_on_outcome(rho, outcome.projector, o.subsystem());
      const double m = expectation(b.conditional, q_reduced);
      e_of_v += b.probability * variance(b.conditional, q_reduced);
      weighted_mean += b.probability * m;
      weighted_mean_sq += b.probability * m * m;
    } catch (const NullBranch&) {
    }
  }
  return {e_of_v, weighted_mean_sq - weighted_mean * weighted_mean};
}

double SequentialDecomposition::total() const {
  double t = residual + first_term;
  for (double v : nested) t += v;
  return t;
}

SequentialDecomposition sequential_decomposition(const DensityOperator& rho, const Observable& q,
                                                 std::span<const Observable> controls) {
  const auto& dims = rho.dims();
  if (controls.empty()) throw SubsystemError("sequential_decomposition: no controls given");
  std::set<std::size_t> seen{q.subsystem()};
  for (const Observable& c : controls) {
    if (c.subsystem() >= dims.size()) {
      throw SubsystemError("sequential_decomposition: control subsystem out of range");
    }
    if (!seen.insert(c.subsystem()).second) {
      throw SubsystemError("sequential_decomposition: subsystem " + std::to_string(c.subsystem()) +
                           " used twice");
    }
  }

  const std::size_t n_controls = controls.size();
  std::vector<std::vector<ComplexMatrix>> projectors(n_controls);
  for (std::size_t n = 0; n < n_controls; ++n)
    for (const Outcome& o : projective_decomposition(controls[n]).outcomes)
      projectors[n].push_back(embed(o.projector, dims, controls[n].subsystem()));

  const ComplexMatrix q_full = embed(q.matrix(), dims, q.subsystem());
  const ComplexMatrix q_sq = q_full * q_full;

  struct Leaf {
    std::vector<std::size_t> tuple;
    double prob;
    double mean;
    double var;
  };
  std::vector<Leaf> leaves;

  // Odometer over outcome indices, last control fastest.
  auto advance = [&](std::vector<std::size_t>& t) {
    for (std::size_t pos = n_controls; pos-- > 0;) {
      if (++t[pos] < projectors[pos].size()) return true;
      t[pos] = 0;
    }
    return false;
  };

  std::vector<std::size_t> tuple(n_controls, 0);
  for (;;) {
    ComplexMatrix proj = projectors[0][tuple[0]];
    for (std::size_t n = 1; n < n_controls; ++n) proj = proj * projectors[n][tuple[n]];
    const ComplexMatrix projected = proj * rho.matrix() * proj;
    const double prob = projected.trace().real();
    if (prob >= kMinBranchProbability) {
      const double mean = trace_of_product(projected, q_full).real() / prob;
      const double second = trace_of_product(projected, q_sq).real() / prob;
      leaves.push_back({tuple, prob, mean, std::max(second - mean * mean, 0.0)});
    }
    if (!advance(tuple)) break;
  }

  SequentialDecomposition out{0.0, 0.0, {}};
  double total_prob = 0.0;
  double overall_mean = 0.0;
  for (const Leaf& leaf : leaves) {
    out.residual += leaf.prob * leaf.var;
    total_prob += leaf.prob;
    overall_mean += leaf.prob * leaf.mean;
  }
  overall_mean /= total_prob;

  // Conditional means for every prefix length 1..N.
  struct Acc {
    double prob = 0.0;
    double weighted = 0.0;
    double mean() const { return weighted / prob; }
  };
  std::vector<std::map<std::vector<std::size_t>, Acc>> by_prefix(n_controls + 1);
  for (const Leaf& leaf : leaves) {
    for (std::size_t len = 1; len <= n_controls; ++len) {
      Acc& acc = by_prefix[len][std::vector<std::size_t>(leaf.tuple.begin(),
                                                         leaf.tuple.begin() + static_cast<std::ptrdiff_t>(len))];
      acc.prob += leaf.prob;
      acc.weighted += leaf.prob * leaf.mean;
    }
  }

  for (std::size_t len = 1; len <= n_controls; ++len) {
    double term = 0.0;
    for (const auto& [prefix, acc] : by_prefix[len]) {
      double parent_mean = overall_mean;
      if (len > 1) {
        const std::vector<std::size_t> parent(prefix.begin(), prefix.end() - 1);
        parent_mean = by_prefix[len - 1].at(parent).mean();
      }
      const double diff = acc.mean() - parent_mean;
      term += acc.prob * diff * diff;
    }
    if (len == 1) {
      out.first_term = term;
    } else {
      out.nested.push_back(term);
    }
  }
  return out;
}

}  // namespace qcvur
