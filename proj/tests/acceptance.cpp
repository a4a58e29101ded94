// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcvur/dm_model.hpp"
#include "qcvur/random_states.hpp"
#include "qcvur/relations.hpp"
#include "qcvur/sweep.hpp"

using namespace qcvur;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.passed) ++failures;
  std::printf("%s criterion %2d %s: %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

template <typename F>
void for_each_model_point(F&& f) {
  for (double d : {0.0, 0.5, 1.0, 2.0})
    for (double j : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0})
      for (double t : {0.2, 0.5, 1.0, 2.0, 5.0}) f(d, j, t);
}

double purity_loss(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t k = 0; k < m.dim(); ++k) s += std::norm(m(i, k));
  return 1.0 - s;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const MeasurementSetup kSetup = default_setup(0.5);

Outcome check_gibbs() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for_each_model_point([&](double d, double j, double t) {
    const DensityOperator rho = dm::thermal_state(dm::ModelParams(d, j, t));
    worst = std::max(worst, max_abs_diff(rho.matrix(), oracle::x_state(d, j, t).normalized()));
  });
  const double secs = seconds_since(start);
  return {worst <= 1e-10 && secs < 1.0, "max entry error " + fmt(worst) + ", " + fmt(secs) + " s"};
}

Outcome check_mixedness() {
  double worst = 0.0;
  for_each_model_point([&](double d, double j, double t) {
    const dm::ModelParams p(d, j, t);
    worst = std::max(worst, std::abs(dm::closed_form_mixedness(p) - purity_loss(dm::thermal_state(p).matrix())));
  });
  const double g = dm::closed_form_mixedness(dm::ModelParams(1, 1, 1));
  const double ref = oracle::mixedness_formula(1, 1, 1);
  const bool ok = worst <= 1e-10 && std::abs(ref - 0.33482) <= 1e-4 && std::abs(g - ref) <= 1e-10;
  return {ok, "grid error " + fmt(worst) + ", gamma(1,1,1) = " + fmt(g)};
}

Outcome check_concurrence() {
  double worst = 0.0;
  std::size_t printed_mismatches = 0;
  for_each_model_point([&](double d, double j, double t) {
    const dm::ModelParams p(d, j, t);
    const double c = concurrence_two_qubit(dm::thermal_state(p));
    worst = std::max({worst, std::abs(c - dm::closed_form_concurrence(p)),
                      std::abs(c - oracle::x_state_concurrence(d, j, t))});
    if (std::abs(c - oracle::printed_concurrence(d, j, t)) > 1e-10) ++printed_mismatches;
  });
  const double c111 = concurrence_two_qubit(dm::thermal_state(dm::ModelParams(1, 1, 1)));
  const double c_ground = concurrence_two_qubit(dm::thermal_state(dm::ModelParams(0, 1, dm::kMinTemperature)));
  const bool ok = worst <= 1e-10 && std::abs(oracle::x_state_concurrence(1, 1, 1) - 0.61557) <= 1e-4 &&
                  std::abs(c111 - oracle::x_state_concurrence(1, 1, 1)) <= 1e-10 &&
                  std::abs(c_ground - 1.0) <= 1e-6 && printed_mismatches >= 1;
  return {ok, "grid error " + fmt(worst) + ", C(1,1,1) = " + fmt(c111) + ", C(0,1,T_MIN) = " + fmt(c_ground) +
                  ", printed form mismatches at " + std::to_string(printed_mismatches) + " of 120 points"};
}

Outcome check_total_variance() {
  const auto start = std::chrono::steady_clock::now();
  RandomStates rng(4001);
  double worst_single = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
    const DensityOperator rho = rng.mixed_state(std::vector<std::size_t>(n, 2));
    const Observable q(rng.hermitian(2), 0);
    const Observable o(rng.hermitian(2), n - 1);
    const ConditionalStats s = conditional_stats(rho, q, o);
    worst_single = std::max(worst_single, std::abs(s.e_of_v + s.v_of_e - variance(rho, q)));
  }
  double worst_chain = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 3 + static_cast<std::size_t>(i % 2);
    const DensityOperator rho = rng.mixed_state(std::vector<std::size_t>(n, 2));
    const MeasurementSetup s = random_setup(rng, n, n - 1);
    const MeasurementPair& pair = s.pairs[0];
    const SequentialDecomposition sd = sequential_decomposition(rho, pair.q, pair.controls);
    const std::vector<double> ref = oracle::chain_rule(rho, pair.q, pair.controls);
    double ref_total = 0.0;
    for (double v : ref) ref_total += v;
    worst_chain = std::max({worst_chain, std::abs(sd.total() - variance(rho, pair.q)),
                            std::abs(ref_total - variance(rho, pair.q)), std::abs(sd.residual - ref[0]),
                            std::abs(sd.first_term - ref[1])});
    for (std::size_t k = 0; k < sd.nested.size(); ++k)
      worst_chain = std::max(worst_chain, std::abs(sd.nested[k] - ref[k + 2]));
  }
  const double secs = seconds_since(start);
  return {worst_single <= 1e-10 && worst_chain <= 1e-9 && secs < 10.0,
          "single-control error " + fmt(worst_single) + ", chained error " + fmt(worst_chain) + ", " + fmt(secs) +
              " s"};
}

Outcome check_inequalities() {
  const auto start = std::chrono::steady_clock::now();
  RandomStates rng(5001);
  std::size_t eq9 = 0, eq1 = 0, eq4 = 0, eq3 = 0, eq3_defined = 0, grid_points = 0;
  for (int i = 0; i < 500; ++i) {
    const DensityOperator rho = rng.mixed_state({2});
    const ComplexMatrix a = rng.hermitian(2);
    const ComplexMatrix b = rng.hermitian(2);
    const double bound = l_tra(rho, a, b, rng.general(2), rng.uniform(0.0, 2 * std::numbers::pi));
    if (variance(rho, Observable(a, 0)) + variance(rho, Observable(b, 0)) < bound - 1e-10) ++eq9;
  }
  for (int i = 0; i < 500; ++i) {
    const DensityOperator rho = rng.mixed_state({2});
    const SchrodingerResult r = schrodinger_bound(rho, Observable(rng.hermitian(2), 0), Observable(rng.hermitian(2), 0));
    if (r.lhs < r.rhs - 1e-10) ++eq1;
  }
  for (const char* name : {"fig1a", "fig1b", "fig2", "fig3a", "fig3b"}) {
    const sweep::FigurePreset p = sweep::figure_preset(name);
    for (const sweep::SweepRecord& r : sweep::run_sweep(p.grid, p.setup).records) {
      ++grid_points;
      if (!(r.lhs >= r.w - 1e-9)) ++eq4;
      if (std::isfinite(r.eur_rhs)) {
        ++eq3_defined;
        if (!(r.h_rb + r.h_sb >= r.eur_rhs - 1e-9)) ++eq3;
      }
    }
  }
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 3);
    const DensityOperator rho = rng.mixed_state(std::vector<std::size_t>(n, 2));
    const QcVurResult r = qc_vur(rho, random_setup(rng, n, 1 + static_cast<std::size_t>(i) % (n - 1)));
    if (r.lhs < r.w - 1e-9) ++eq4;
  }
  for (int i = 0; i < 200; ++i) {
    const DensityOperator rho = rng.mixed_state({2, 2});
    const QmEurResult e = qm_eur(rho, Observable(rng.hermitian(2), 0), Observable(rng.hermitian(2), 0));
    ++eq3_defined;
    if (e.h_rb + e.h_sb < e.rhs - 1e-9) ++eq3;
  }
  const double secs = seconds_since(start);
  const bool ok = eq9 == 0 && eq1 == 0 && eq4 == 0 && eq3 == 0 && secs < 10.0;
  return {ok, "violations: variance-sum " + std::to_string(eq9) + "/500, Schrodinger " + std::to_string(eq1) +
                  "/500, control-assisted " + std::to_string(eq4) + "/" + std::to_string(grid_points + 200) +
                  ", entropic " + std::to_string(eq3) + "/" + std::to_string(eq3_defined) + ", " + fmt(secs) + " s"};
}

Outcome check_model_points() {
  const QcVurResult hot = qc_vur(dm::thermal_state(dm::ModelParams(1, 1, 1e6)), kSetup);
  const double hot_u = hot.u.value_or(NAN);
  bool ok = std::abs(hot.lhs - 2.0) <= 1e-5 && std::abs(hot.w - (1.0 + std::cos(0.5))) <= 1e-5 &&
            std::abs(hot_u - 1.06518) <= 1e-4;

  const oracle::XState x = oracle::x_state(1, 1, 1);
  const double c2 = x.cxx() * x.cxx() + x.czz() * x.czz();
  const double lhs = 2.0 - c2;
  const double w = 1.0 + std::cos(0.5) - c2;
  const QcVurResult r = qc_vur(dm::thermal_state(dm::ModelParams(1, 1, 1)), kSetup);
  const double u = r.u.value_or(NAN);
  ok = ok && std::abs(r.lhs - lhs) <= 1e-4 && std::abs(r.w - w) <= 1e-4 && std::abs(u - lhs / w) <= 1e-4;
  ok = ok && std::abs(lhs - 1.20560) <= 1e-4 && std::abs(w - 1.08318) <= 1e-4 && std::abs(lhs / w - 1.11302) <= 1e-4;
  return {ok, "T=1e6: lhs " + fmt(hot.lhs) + ", w " + fmt(hot.w) + ", u " + fmt(hot_u) + "; (1,1,1): lhs " +
                  fmt(r.lhs) + ", w " + fmt(r.w) + ", u " + fmt(u)};
}

Outcome check_ground_state() {
  const dm::ModelParams p(0, 1, dm::kMinTemperature);
  const DensityOperator rho = dm::thermal_state(p);
  const QcVurResult r = qc_vur(rho, kSetup);
  const double gamma = purity_loss(rho.matrix());
  bool ok = gamma <= 1e-5 && std::abs(r.w) <= 0.13 && r.lhs <= 1e-5;
  if (r.u) ok = ok && std::abs(*r.u) <= 1e-5;
  return {ok, "gamma " + fmt(gamma) + ", lhs " + fmt(r.lhs) + ", unclamped W " + fmt(r.w) + " (does not vanish)"};
}

Outcome check_single_valued() {
  const auto start = std::chrono::steady_clock::now();
  double worst_w = 0.0, worst_u = 0.0;
  std::size_t matched = 0;
  for (double d : {0.0, 1.0, 2.0}) {
    for (const std::vector<double>& js : {std::vector<double>{0.5, 1, 2}, std::vector<double>{-0.5, -1, -2}}) {
      const sweep::SpreadReport s = sweep::check_single_valued(d, js, kSetup, 20);
      worst_w = std::max(worst_w, s.w_spread);
      worst_u = std::max(worst_u, s.u_spread);
      matched += s.matched;
    }
  }
  const sweep::SpreadReport cross = sweep::matched_spread(1.0, {1.0, -1.0}, kSetup, 20);
  const double secs = seconds_since(start);
  const bool ok = worst_w <= 1e-6 && worst_u <= 1e-6 && matched > 0 && cross.w_spread > 1e-3 && secs < 5.0;
  return {ok, "same-sign spreads W " + fmt(worst_w) + ", U " + fmt(worst_u) + " over " + std::to_string(matched) +
                  " matches, cross-sign W spread " + fmt(cross.w_spread) + ", " + fmt(secs) + " s"};
}

Outcome check_tightness_comparison() {
  const sweep::FigurePreset p = sweep::figure_preset("fig7b");
  std::size_t both = 0, better = 0;
  for (const sweep::SweepRecord& r : sweep::run_sweep(p.grid, p.setup).records) {
    if (!r.u || !r.u_eur) continue;
    ++both;
    if (*r.u < *r.u_eur) ++better;
  }
  const double frac = both ? static_cast<double>(better) / static_cast<double>(both) : 0.0;
  return {frac > 0.5, "control-assisted tighter at " + std::to_string(better) + "/" + std::to_string(both) +
                          " points (fraction " + fmt(frac) + ")"};
}

Outcome check_determinism() {
  const std::string cli = QCVUR_CLI_PATH;
  const std::filesystem::path a = "acceptance_fig1a_run1.csv";
  const std::filesystem::path b = "acceptance_fig1a_run2.csv";
  for (const auto& out : {a, b}) {
    const std::string cmd = "\"" + cli + "\" sweep --preset fig1a --out " + out.string() + " 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "sweep command failed: " + cmd};
  }
  const std::string da = read_file(a);
  const bool same = !da.empty() && da == read_file(b);

  const auto start = std::chrono::steady_clock::now();
  const int rc = std::system(("\"" + cli + "\" verify > acceptance_verify.log 2>&1").c_str());
  const double secs = seconds_since(start);
  const bool ok = same && rc == 0 && secs < 60.0;
  return {ok, std::string(same ? "fig1a CSV byte-identical" : "fig1a CSV differs") + " (" +
                  std::to_string(da.size()) + " bytes), verify exit " + std::to_string(rc) + " in " + fmt(secs) +
                  " s"};
}

}  // namespace

int main() {
  report(1, "Gibbs state matches closed form", check_gibbs);
  report(2, "mixedness closed form", check_mixedness);
  report(3, "concurrence closed form", check_concurrence);
  report(4, "law of total variance", check_total_variance);
  report(5, "inequality suites", check_inequalities);
  report(6, "fixed-setting model points", check_model_points);
  report(7, "ground-state singlet", check_ground_state);
  report(8, "single-valuedness in mixedness", check_single_valued);
  report(9, "tightness comparison", check_tightness_comparison);
  report(10, "determinism and verify runtime", check_determinism);
  std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
