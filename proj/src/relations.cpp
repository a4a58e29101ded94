#include "qcvur/relations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcvur/errors.hpp"

namespace qcvur {

namespace {

constexpr double kImagTol = 1e-12;
constexpr double kOperatorNormTol = 1e-12;

double real_part_checked(cplx v, const char* what) {
  if (std::abs(v.imag()) > kImagTol * std::max(1.0, std::abs(v.real()))) {
    throw NumericalError(std::string(what) + ": imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

void require_single_subsystem(const DensityOperator& rho, std::size_t op_dim, const char* what) {
  if (rho.dims().size() != 1) {
    throw DimensionError(std::string(what) + ": expected a single-subsystem state");
  }
  if (op_dim != rho.dim()) throw DimensionError(std::string(what) + ": operator dimension mismatch");
}

ComplexMatrix centered(const DensityOperator& rho, const ComplexMatrix& op) {
  const cplx mean = trace_of_product(rho.matrix(), op);
  return op - ComplexMatrix::identity(op.dim()) * mean;
}

}  // namespace

void MeasurementSetup::validate() const {
  if (pairs.size() != 2) {
    throw ValidationError("MeasurementSetup: the variance-sum bound needs exactly K = 2 pairs, got " +
                          std::to_string(pairs.size()));
  }
  for (const MeasurementPair& pair : pairs) {
    if (pair.q.subsystem() != measured_subsystem()) {
      throw ValidationError("MeasurementSetup: all Q_k must act on the same subsystem");
    }
    if (pair.controls.empty()) throw ValidationError("MeasurementSetup: pair without controls");
  }
  if (ltra_operator.dim() != pairs.front().q.matrix().dim()) {
    throw ValidationError("MeasurementSetup: operator O does not match the measured subsystem");
  }
  if (!(theta >= 0.0 && theta <= 2.0 * std::numbers::pi)) {
    throw ValidationError("MeasurementSetup: theta must lie in [0, 2 pi]");
  }
}

MeasurementSetup default_setup(double theta) {
  const ComplexMatrix sx = pauli::x();
  const ComplexMatrix sz = pauli::z();
  MeasurementSetup setup{
      {MeasurementPair{Observable(sx, 0), {Observable(sx, 1)}},
       MeasurementPair{Observable(sz, 0), {Observable(sz, 1)}}},
      sx + sz,
      theta,
  };
  setup.validate();
  return setup;
}

SchrodingerResult schrodinger_bound(const DensityOperator& rho_a, const Observable& a,
                                    const Observable& b) {
  require_single_subsystem(rho_a, a.matrix().dim(), "schrodinger_bound");
  require_single_subsystem(rho_a, b.matrix().dim(), "schrodinger_bound");
  const ComplexMatrix& am = a.matrix();
  const ComplexMatrix& bm = b.matrix();
  const ComplexMatrix ac = centered(rho_a, am);
  const ComplexMatrix bc = centered(rho_a, bm);

  const double var_a = real_part_checked(trace_of_product(rho_a.matrix(), ac * ac), "var A");
  const double var_b = real_part_checked(trace_of_product(rho_a.matrix(), bc * bc), "var B");
  const cplx commutator = trace_of_product(rho_a.matrix(), am * bm - bm * am);
  const cplx anticommutator = trace_of_product(rho_a.matrix(), ac * bc + bc * ac);
  return {var_a * var_b, 0.25 * std::norm(commutator) + 0.25 * std::norm(anticommutator)};
}

double maximal_overlap_c(const Observable& r, const Observable& s) {
  if (r.subsystem() != s.subsystem()) {
    throw SubsystemError("maximal_overlap_c: observables act on different subsystems");
  }
  const ProjectiveDecomposition pr = projective_decomposition(r);
  const ProjectiveDecomposition ps = projective_decomposition(s);
  auto require_rank_one = [](const ProjectiveDecomposition& d, const char* name) {
    for (const Outcome& o : d.outcomes)
      if (std::abs(o.projector.trace().real() - 1.0) > 1e-9) {
        throw DegeneracyError(std::string("maximal_overlap_c: ") + name +
                              " has a degenerate eigenspace");
      }
  };
  require_rank_one(pr, "R");
  require_rank_one(ps, "S");

  // For rank-one projectors Tr(P_r P_s) = |<phi_r|phi_s>|^2.
  double c = 0.0;
  for (const Outcome& x : pr.outcomes)
    for (const Outcome& y : ps.outcomes)
      c = std::max(c, trace_of_product(x.projector, y.projector).real());
  return c;
}

QmEurResult qm_eur(const DensityOperator& rho, const Observable& r, const Observable& s) {
  if (rho.dims().size() != 2) throw DimensionError("qm_eur: expected a bipartite state");
  if (r.subsystem() != s.subsystem() || r.subsystem() > 1) {
    throw SubsystemError("qm_eur: R and S must act on the same subsystem of the pair");
  }
  const std::size_t measured = r.subsystem();
  const std::size_t memory = 1 - measured;
  const double c = maximal_overlap_c(r, s);

  const std::size_t keep[] = {memory};
  const double h_b = von_neumann_entropy(rho.reduced(keep));

  auto post_measurement_entropy = [&](const Observable& obs) {
    ComplexMatrix post(rho.dim());
    for (const Outcome& o : projective_decomposition(obs).outcomes) {
      const ComplexMatrix p = embed(o.projector, rho.dims(), measured);
      post += p * rho.matrix() * p;
    }
    post = (post + post.adjoint()) * cplx{0.5, 0.0};
    return von_neumann_entropy(DensityOperator(std::move(post), rho.dims()));
  };

  QmEurResult out{};
  out.h_rb = post_measurement_entropy(r) - h_b;
  out.h_sb = post_measurement_entropy(s) - h_b;
  out.h_ab = von_neumann_entropy(rho) - h_b;
  out.overlap_bound = std::log2(1.0 / c);
  out.rhs = out.overlap_bound + out.h_ab;
  if (std::abs(out.rhs) >= kRatioDenominatorTol) out.u_eur = (out.h_rb + out.h_sb) / out.rhs;
  return out;
}

double l_tra(const DensityOperator& rho_a, const ComplexMatrix& a, const ComplexMatrix& b,
             const ComplexMatrix& o, double theta) {
  require_single_subsystem(rho_a, a.dim(), "l_tra");
  require_single_subsystem(rho_a, b.dim(), "l_tra");
  require_single_subsystem(rho_a, o.dim(), "l_tra");
  const ComplexMatrix& rho = rho_a.matrix();
  const ComplexMatrix od = o.adjoint();

  const double norm = real_part_checked(trace_of_product(rho, od * o), "<O^dag O>");
  if (norm < kOperatorNormTol) {
    throw DegenerateOperator("l_tra: <O^dag O> = " + std::to_string(norm) + " is below 1e-12");
  }

  const cplx phase = std::polar(1.0, theta);
  const ComplexMatrix ac = centered(rho_a, a);
  const ComplexMatrix bc = centered(rho_a, b);
  const ComplexMatrix combined = ac + bc * phase;
  const double projection = std::norm(trace_of_product(rho, od * combined)) / norm;
  const ComplexMatrix cross = ac.adjoint() * bc * phase + bc.adjoint() * ac * std::conj(phase);
  const double correction = real_part_checked(trace_of_product(rho, cross), "{A, e^{i theta} B}_G");
  return projection - correction;
}

QcVurResult qc_vur(const DensityOperator& rho, const MeasurementSetup& setup) {
  setup.validate();
  QcVurResult out{};
  for (const MeasurementPair& pair : setup.pairs) {
    const SequentialDecomposition sd = sequential_decomposition(rho, pair.q, pair.controls);
    out.lhs += sd.residual;
    out.subtracted += sd.first_term;
    for (double v : sd.nested) out.subtracted += v;
  }
  const std::size_t keep[] = {setup.measured_subsystem()};
  const DensityOperator rho_a = rho.reduced(keep);
  out.l_tra = l_tra(rho_a, setup.pairs[0].q.matrix(), setup.pairs[1].q.matrix(),
                    setup.ltra_operator, setup.theta);
  out.w = out.l_tra - out.subtracted;
  if (std::abs(out.w) >= kRatioDenominatorTol) out.u = out.lhs / out.w;
  return out;
}

}  // namespace qcvur
