#include "qcvur/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qcvur/dm_model.hpp"
#include "qcvur/errors.hpp"
#include "qcvur/measurement.hpp"
#include "qcvur/random_states.hpp"
#include "qcvur/relations.hpp"
#include "qcvur/sweep.hpp"

namespace qcvur {

namespace {

using sweep::format_value;

const double kGridD[] = {0.0, 0.5, 1.0, 2.0};
const double kGridJ[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
const double kGridT[] = {0.2, 0.5, 1.0, 2.0, 5.0};

template <typename F>
void for_each_model_point(F&& f) {
  for (double d : kGridD)
    for (double j : kGridJ)
      for (double t : kGridT) f(dm::ModelParams(d, j, t));
}

CheckResult max_error_check(std::string name, double worst, double tol) {
  return {std::move(name), worst <= tol,
          "max error " + format_value(worst) + " (tol " + format_value(tol) + ")"};
}

CheckResult check_gibbs_consistency() {
  double worst = 0.0;
  for_each_model_point([&](const dm::ModelParams& p) {
    worst = std::max(worst, max_abs_diff(dm::thermal_state(p).matrix(),
                                         dm::closed_form_thermal_matrix(p)));
  });
  return max_error_check("gibbs state matches X-state closed form", worst, 1e-10);
}

CheckResult check_mixedness() {
  double worst = 0.0;
  for_each_model_point([&](const dm::ModelParams& p) {
    worst = std::max(worst, std::abs(dm::closed_form_mixedness(p) - mixedness(dm::thermal_state(p))));
  });
  return max_error_check("closed-form mixedness matches 1 - Tr(rho^2)", worst, 1e-10);
}

CheckResult check_concurrence() {
  double worst = 0.0;
  for_each_model_point([&](const dm::ModelParams& p) {
    worst = std::max(worst, std::abs(dm::closed_form_concurrence(p) -
                                     concurrence_two_qubit(dm::thermal_state(p))));
  });
  const double ground = concurrence_two_qubit(dm::thermal_state(dm::ModelParams(0, 1, dm::kMinTemperature)));
  CheckResult r = max_error_check("closed-form concurrence matches Wootters", worst, 1e-10);
  r.passed = r.passed && std::abs(ground - 1.0) <= 1e-6;
  r.detail += "; C(0, 1, T_MIN) = " + format_value(ground);
  return r;
}

CheckResult check_reduced_states() {
  double worst = 0.0;
  const ComplexMatrix half = ComplexMatrix::identity(2) * cplx{0.5, 0.0};
  for_each_model_point([&](const dm::ModelParams& p) {
    const DensityOperator rho = dm::thermal_state(p);
    for (std::size_t keep : {std::size_t{0}, std::size_t{1}}) {
      const std::size_t k[] = {keep};
      worst = std::max(worst, max_abs_diff(rho.reduced(k).matrix(), half));
    }
  });
  return max_error_check("thermal marginals equal I/2", worst, 1e-12);
}

CheckResult check_scale_invariance() {
  const MeasurementSetup setup = default_setup();
  double worst = 0.0;
  for (double d : kGridD)
    for (double j : {-1.0, 1.0})
      for (double t : {0.5, 1.0, 2.0}) {
        const sweep::SweepRecord base = sweep::evaluate_point(dm::ModelParams(d, j, t), setup);
        for (double k : {0.5, 2.0, 10.0}) {
          const sweep::SweepRecord s = sweep::evaluate_point(dm::ModelParams(d, k * j, k * t), setup);
          for (auto [a, b] : {std::pair{base.gamma, s.gamma}, std::pair{base.concurrence, s.concurrence},
                              std::pair{base.lhs, s.lhs}, std::pair{base.w, s.w}})
            worst = std::max(worst, std::abs(a - b));
          if (base.u && s.u) worst = std::max(worst, std::abs(*base.u - *s.u));
        }
      }
  return max_error_check("(J, T) -> (kJ, kT) invariance of gamma, C, lhs, W, U", worst, 1e-10);
}

CheckResult check_total_variance() {
  RandomStates rng(20240101);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = i % 2 == 0 ? 2 : 3;
    const DensityOperator rho = rng.mixed_state(std::vector<std::size_t>(n, 2));
    const auto a = static_cast<std::size_t>(i % static_cast<int>(n));
    const std::size_t c = (a + 1 + static_cast<std::size_t>(i / 2) % (n - 1)) % n;
    const Observable q(rng.hermitian(2), a);
    const Observable o(rng.hermitian(2), c);
    const ConditionalStats cs = conditional_stats(rho, q, o);
    worst = std::max(worst, std::abs(cs.e_of_v + cs.v_of_e - variance(rho, q)));
  }
  return max_error_check("law of total variance, 200 random cases", worst, 1e-10);
}

CheckResult check_chained_variance() {
  RandomStates rng(20240202);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = i % 2 == 0 ? 3 : 4;
    const DensityOperator rho = rng.mixed_state(std::vector<std::size_t>(n, 2));
    const MeasurementSetup s = random_setup(rng, n, n - 1);
    const MeasurementPair& pair = s.pairs[0];
    const SequentialDecomposition sd = sequential_decomposition(rho, pair.q, pair.controls);
    worst = std::max(worst, std::abs(sd.total() - variance(rho, pair.q)));
  }
  return max_error_check("chained variance decomposition, 100 random 3-4 qubit cases", worst, 1e-9);
}

CheckResult check_variance_sum_bound() {
  RandomStates rng(20240303);
  double worst = -1.0;
  for (int i = 0; i < 500; ++i) {
    const DensityOperator rho = i % 5 == 0 ? rng.pure_state({2}) : rng.mixed_state({2});
    const Observable a(rng.hermitian(2), 0);
    const Observable b(rng.hermitian(2), 0);
    const double bound = l_tra(rho, a.matrix(), b.matrix(), rng.general(2),
                               rng.uniform(0.0, 2.0 * std::numbers::pi));
    worst = std::max(worst, bound - (variance(rho, a) + variance(rho, b)));
  }
  return {"variance-sum bound holds on 500 random qubit cases", worst <= 1e-9,
          "max(L_tra - dA^2 - dB^2) = " + format_value(worst)};
}

CheckResult check_schrodinger() {
  RandomStates rng(20240404);
  double worst = -1.0;
  for (int i = 0; i < 500; ++i) {
    const DensityOperator rho = i % 5 == 0 ? rng.pure_state({2}) : rng.mixed_state({2});
    const SchrodingerResult r =
        schrodinger_bound(rho, Observable(rng.hermitian(2), 0), Observable(rng.hermitian(2), 0));
    worst = std::max(worst, r.rhs - r.lhs);
  }
  return {"Schrodinger relation holds on 500 random qubit cases", worst <= 1e-10,
          "max(rhs - lhs) = " + format_value(worst)};
}

CheckResult check_random_entropic() {
  RandomStates rng(20240505);
  double worst = -1.0;
  for (int i = 0; i < 200; ++i) {
    const DensityOperator rho = i % 4 == 0 ? rng.pure_state({2, 2}) : rng.mixed_state({2, 2});
    const QmEurResult r = qm_eur(rho, Observable(pauli::x(), 0), Observable(pauli::z(), 0));
    worst = std::max(worst, r.rhs - (r.h_rb + r.h_sb));
  }
  return {"memory-assisted entropic relation, 200 random two-qubit states", worst <= 1e-9,
          "max(rhs - lhs) = " + format_value(worst)};
}

CheckResult check_random_control() {
  RandomStates rng(20240606);
  double worst_gap = -1.0;
  double worst_bridge = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 3);
    const DensityOperator rho = rng.mixed_state(std::vector<std::size_t>(n, 2));
    const MeasurementSetup s = random_setup(rng, n, n - 1);
    QcVurResult r;
    try {
      r = qc_vur(rho, s);
    } catch (const DegenerateOperator&) {
      continue;
    }
    double total = 0.0;
    for (const MeasurementPair& p : s.pairs) total += variance(rho, p.q);
    worst_bridge = std::max(worst_bridge, std::abs(r.lhs + r.subtracted - total));
    worst_gap = std::max(worst_gap, r.w - r.lhs);
  }
  return {"control-assisted relation on 200 random 2-4 qubit setups",
          worst_gap <= 1e-9 && worst_bridge <= 1e-9,
          "max(w - lhs) = " + format_value(worst_gap) + ", chain identity error " +
              format_value(worst_bridge)};
}

CheckResult check_dm_grid_sweeps() {
  std::size_t points = 0;
  std::size_t failures = 0;
  std::string first;
  for (const char* name : {"fig1a", "fig1b", "fig3a", "fig3b"}) {
    const sweep::FigurePreset p = sweep::figure_preset(name);
    const sweep::SweepResult r = sweep::run_sweep(p.grid, p.setup);
    points += r.records.size();
    failures += r.invariant_failures;
    if (first.empty() && !r.diagnostics.empty()) first = r.diagnostics.front();
  }
  return {"both relations hold on the DM sweep grids", failures == 0,
          std::to_string(points) + " points, " + std::to_string(failures) + " violations" +
              (first.empty() ? "" : "; first: " + first)};
}

// Correlators <xx> and <zz> of the thermal state from its closed form.
std::pair<double, double> correlators(const dm::ModelParams& p) {
  const ComplexMatrix m = dm::closed_form_thermal_matrix(p);
  const double cxx = 2.0 * m(1, 2).real();
  const double czz = (m(0, 0) - m(1, 1) - m(2, 2) + m(3, 3)).real();
  return {cxx, czz};
}

CheckResult check_model_points() {
  const MeasurementSetup setup = default_setup();
  std::ostringstream detail;
  bool ok = true;

  const QcVurResult hot = qc_vur(dm::thermal_state(dm::ModelParams(1, 1, 1e6)), setup);
  ok = ok && std::abs(hot.lhs - 2.0) <= 1e-5 && std::abs(hot.w - (1.0 + std::cos(0.5))) <= 1e-5 &&
       hot.u && std::abs(*hot.u - 2.0 / (1.0 + std::cos(0.5))) <= 1e-4;
  detail << "T=1e6: lhs=" << format_value(hot.lhs) << " w=" << format_value(hot.w)
         << " u=" << format_value(hot.u);

  const dm::ModelParams p(1, 1, 1);
  const auto [cxx, czz] = correlators(p);
  const double lhs = 2.0 - cxx * cxx - czz * czz;
  const double w = 1.0 + std::cos(0.5) - cxx * cxx - czz * czz;
  const QcVurResult mid = qc_vur(dm::thermal_state(p), setup);
  ok = ok && std::abs(mid.lhs - lhs) <= 1e-4 && std::abs(mid.w - w) <= 1e-4 && mid.u &&
       std::abs(*mid.u - lhs / w) <= 1e-4;
  detail << "; (1,1,1): lhs=" << format_value(mid.lhs) << " w=" << format_value(mid.w)
         << " u=" << format_value(mid.u);
  return {"fixed-setting point values", ok, detail.str()};
}

CheckResult check_pure_singlet_point() {
  const dm::ModelParams p(0, 1, dm::kMinTemperature);
  const DensityOperator rho = dm::thermal_state(p);
  const QcVurResult r = qc_vur(rho, default_setup());
  const double gamma = mixedness(rho);
  const bool ok = gamma <= 1e-5 && std::abs(r.w) <= 0.13 && r.lhs <= 1e-5;
  std::ostringstream detail;
  detail << "D=0 J=1 T=T_MIN: gamma=" << format_value(gamma) << " lhs=" << format_value(r.lhs)
         << " W=" << format_value(r.w) << " (unclamped; cos(0.5)-1 = " << format_value(std::cos(0.5) - 1.0)
         << "). A vanishing W at gamma = D = 0 is not reproduced with theta = 0.5 fixed.";
  return {"pure-singlet point (gamma = D = 0)", ok, detail.str()};
}

CheckResult check_single_valuedness() {
  const MeasurementSetup setup = default_setup();
  double worst_w = 0.0;
  double worst_u = 0.0;
  std::size_t matched = 0;
  for (double d : {0.0, 1.0, 2.0})
    for (const std::vector<double>& js : {std::vector<double>{0.5, 1.0, 2.0},
                                          std::vector<double>{-0.5, -1.0, -2.0}}) {
      const sweep::SpreadReport r = sweep::check_single_valued(d, js, setup);
      worst_w = std::max(worst_w, r.w_spread);
      worst_u = std::max(worst_u, r.u_spread);
      matched += r.matched;
    }
  const sweep::SpreadReport cross = sweep::matched_spread(1.0, {1.0, -1.0}, setup);
  const double cross_spread = std::max(cross.w_spread, cross.u_spread);
  const bool ok = worst_w <= 1e-6 && worst_u <= 1e-6 && cross_spread > 1e-3;
  return {"W and U single-valued in mixedness for fixed sign of J", ok,
          "same-sign spreads w=" + format_value(worst_w) + " u=" + format_value(worst_u) + " over " +
              std::to_string(matched) + " matched targets; cross-sign spread at D=1 " +
              format_value(cross_spread)};
}

CheckResult check_tightness_comparison() {
  const sweep::FigurePreset p = sweep::figure_preset("fig7b");
  const sweep::SweepResult r = sweep::run_sweep(p.grid, p.setup);
  std::size_t both = 0;
  std::size_t tighter = 0;
  for (const sweep::SweepRecord& rec : r.records) {
    if (!rec.u || !rec.u_eur) continue;
    ++both;
    if (*rec.u < *rec.u_eur) ++tighter;
  }
  const double fraction = both == 0 ? 0.0 : static_cast<double>(tighter) / static_cast<double>(both);
  return {"QC-VUR tighter than QM-EUR on most of the T = 1 map", fraction > 0.5,
          "fraction " + format_value(fraction) + " of " + std::to_string(both) + " points"};
}

CheckResult check_determinism() {
  const sweep::FigurePreset p = sweep::figure_preset("fig1a");
  std::ostringstream first;
  std::ostringstream second;
  sweep::emit_csv(sweep::run_sweep(p.grid, p.setup).records, first);
  sweep::emit_csv(sweep::run_sweep(p.grid, p.setup).records, second);
  return {"fig1a CSV is reproducible", first.str() == second.str(),
          std::to_string(first.str().size()) + " bytes"};
}

}  // namespace

std::vector<CheckResult> run_invariant_suite() {
  using Check = CheckResult (*)();
  const Check checks[] = {
      check_gibbs_consistency,  check_mixedness,          check_concurrence,
      check_reduced_states,     check_scale_invariance,   check_total_variance,
      check_chained_variance,   check_variance_sum_bound, check_schrodinger,
      check_random_entropic,    check_random_control,     check_dm_grid_sweeps,
      check_model_points,       check_pure_singlet_point, check_single_valuedness,
      check_tightness_comparison, check_determinism,
  };
  std::vector<CheckResult> results;
  for (Check c : checks) {
    try {
      results.push_back(c());
    } catch (const std::exception& e) {
      results.push_back({"(check aborted)", false, e.what()});
    }
  }
  return results;
}

}  // namespace qcvur
