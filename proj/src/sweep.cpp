#include "qcvur/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "qcvur/errors.hpp"

namespace qcvur::sweep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInvariantTol = 1e-9;
constexpr double kMaxScanTemperature = 1e4;
constexpr std::size_t kScanPoints = 701;  // 100 per decade
constexpr double kMatchTol = 1e-10;

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::string point_label(double d, double j, double t) {
  return "(d=" + format_value(d) + ", j=" + format_value(j) + ", t=" + format_value(t) + ")";
}

struct Bound {
  double w;
  std::optional<double> u;
};

Bound bound_at(double d, double j, double t, const MeasurementSetup& setup) {
  const QcVurResult r = qc_vur(dm::thermal_state(dm::ModelParams(d, j, t)), setup);
  return {r.w, r.u};
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> out(steps);
  if (steps == 1) {
    out[0] = start;
    return out;
  }
  const double step = (stop - start) / static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) out[k] = start + step * static_cast<double>(k);
  out.back() = stop;
  return out;
}

Range parse_range(std::string_view text) {
  auto parse_double = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw UsageError("cannot parse number '" + std::string(s) + "' in range '" +
                       std::string(text) + "'");
    }
    return v;
  };
  const auto first = text.find(':');
  if (first == std::string_view::npos) return Range::single(parse_double(text));
  const auto second = text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw UsageError("range '" + std::string(text) + "' must be start:stop:steps");
  }
  Range r;
  r.start = parse_double(text.substr(0, first));
  r.stop = parse_double(text.substr(first + 1, second - first - 1));
  const double steps = parse_double(text.substr(second + 1));
  if (steps < 1 || steps != std::floor(steps)) {
    throw UsageError("range '" + std::string(text) + "': steps must be a positive integer");
  }
  r.steps = static_cast<std::size_t>(steps);
  return r;
}

void SweepGrid::validate() const {
  auto check = [](const Range& r, const char* name) {
    if (r.steps < 1) throw UsageError(std::string(name) + " range needs at least one step");
    if (!(r.start <= r.stop)) throw UsageError(std::string(name) + " range has start > stop");
    if (r.steps == 1 && r.start != r.stop) {
      throw UsageError(std::string(name) + " range with one step must have start == stop");
    }
  };
  check(d, "D");
  check(j, "J");
  check(t, "T");
  if (d.start < 0.0) throw UsageError("D must be >= 0");
  if (t.start < dm::kMinTemperature) {
    throw UsageError("T must be >= " + format_value(dm::kMinTemperature));
  }
  for (double v : j.values())
    if (std::abs(v) < 1e-9) throw UsageError("J grid contains a point with |J| < 1e-9");
  if (!(theta >= 0.0 && theta <= 2.0 * std::numbers::pi)) {
    throw UsageError("theta must lie in [0, 2 pi]");
  }
}

SweepRecord evaluate_point(const dm::ModelParams& p, const MeasurementSetup& setup) {
  const DensityOperator rho = dm::thermal_state(p);
  SweepRecord r;
  r.d = p.d();
  r.j = p.j();
  r.t = p.t();
  r.theta = setup.theta;
  r.gamma = mixedness(rho);
  r.concurrence = concurrence_two_qubit(rho);

  const QcVurResult qc = qc_vur(rho, setup);
  r.l_tra = qc.l_tra;
  r.lhs = qc.lhs;
  r.w = qc.w;
  r.u = qc.u;

  const QmEurResult eur = qm_eur(rho, setup.pairs[0].q, setup.pairs[1].q);
  r.h_rb = eur.h_rb;
  r.h_sb = eur.h_sb;
  r.h_ab = eur.h_ab;
  r.eur_rhs = eur.rhs;
  r.u_eur = eur.u_eur;
  return r;
}

std::vector<std::string> record_violations(const SweepRecord& r) {
  std::vector<std::string> out;
  auto nan = [](double v) { return std::isnan(v); };
  if (!nan(r.gamma) && (r.gamma < -kInvariantTol || r.gamma > 0.75 + kInvariantTol))
    out.push_back("gamma outside [0, 0.75]: " + format_value(r.gamma));
  if (!nan(r.concurrence) && (r.concurrence < 0.0 || r.concurrence > 1.0 + kInvariantTol))
    out.push_back("concurrence outside [0, 1]: " + format_value(r.concurrence));
  if (!nan(r.lhs) && !nan(r.w) && r.lhs < r.w - kInvariantTol)
    out.push_back("QC-VUR violated: lhs " + format_value(r.lhs) + " < w " + format_value(r.w));
  if (!nan(r.h_rb) && !nan(r.eur_rhs) && r.h_rb + r.h_sb < r.eur_rhs - kInvariantTol)
    out.push_back("QM-EUR violated: " + format_value(r.h_rb + r.h_sb) + " < " +
                  format_value(r.eur_rhs));
  return out;
}

SweepResult run_sweep(const SweepGrid& grid, const MeasurementSetup& setup) {
  grid.validate();
  MeasurementSetup point_setup = setup;
  point_setup.theta = grid.theta;
  point_setup.validate();

  SweepResult result;
  result.records.reserve(grid.size());
  for (double d : grid.d.values())
    for (double j : grid.j.values())
      for (double t : grid.t.values()) {
        SweepRecord rec;
        rec.d = d;
        rec.j = j;
        rec.t = t;
        rec.theta = grid.theta;
        try {
          rec = evaluate_point(dm::ModelParams(d, j, t), point_setup);
        } catch (const Error& e) {
          rec.gamma = rec.concurrence = rec.l_tra = rec.lhs = rec.w = kNaN;
          rec.h_rb = rec.h_sb = rec.h_ab = rec.eur_rhs = kNaN;
          result.diagnostics.push_back(point_label(d, j, t) + ": " + e.what());
        }
        for (const std::string& v : record_violations(rec)) {
          result.diagnostics.push_back(point_label(d, j, t) + ": " + v);
          ++result.invariant_failures;
        }
        result.records.push_back(rec);
      }
  return result;
}

std::string format_value(double v) {
  if (std::isnan(v)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_value(const std::optional<double>& v) {
  return v ? format_value(*v) : std::string{};
}

namespace {

template <typename Emit>
void for_each_field(const SweepRecord& r, Emit&& emit) {
  emit("d", format_value(r.d));
  emit("j", format_value(r.j));
  emit("t", format_value(r.t));
  emit("theta", format_value(r.theta));
  emit("gamma", format_value(r.gamma));
  emit("concurrence", format_value(r.concurrence));
  emit("l_tra", format_value(r.l_tra));
  emit("lhs", format_value(r.lhs));
  emit("w", format_value(r.w));
  emit("u", format_value(r.u));
  emit("h_rb", format_value(r.h_rb));
  emit("h_sb", format_value(r.h_sb));
  emit("h_ab", format_value(r.h_ab));
  emit("eur_rhs", format_value(r.eur_rhs));
  emit("u_eur", format_value(r.u_eur));
}

}  // namespace

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const SweepRecord& r : records) {
    bool first = true;
    for_each_field(r, [&](std::string_view, const std::string& value) {
      if (!first) out << ',';
      out << value;
      first = false;
    });
    out << '\n';
  }
}

void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  emit_csv(records, file);
  file.flush();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

void print_record(const SweepRecord& r, std::ostream& out) {
  for_each_field(r, [&](std::string_view key, const std::string& value) {
    out << key << '=' << value << '\n';
  });
}

double match_mixedness(double d, double j, double target) {
  const std::vector<double> scan = log_space(dm::kMinTemperature, kMaxScanTemperature, kScanPoints);
  auto gamma_at = [&](double t) { return dm::closed_form_mixedness(dm::ModelParams(d, j, t)); };

  double lo_seen = std::numeric_limits<double>::infinity();
  double hi_seen = -std::numeric_limits<double>::infinity();
  double prev_t = 0.0;
  double prev_f = 0.0;
  for (std::size_t k = 0; k < scan.size(); ++k) {
    const double t = scan[k];
    const double g = gamma_at(t);
    lo_seen = std::min(lo_seen, g);
    hi_seen = std::max(hi_seen, g);
    const double f = g - target;
    if (f == 0.0) return t;
    if (k > 0 && (prev_f < 0.0) != (f < 0.0)) {
      double lo = prev_t;
      double hi = t;
      double f_lo = prev_f;
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double f_mid = gamma_at(mid) - target;
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      const double f_hi = gamma_at(hi) - target;
      const double best = std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
      if (std::abs(gamma_at(best) - target) > kMatchTol) {
        throw RangeError("match_mixedness: bisection stalled at |gamma - target| = " +
                         format_value(std::abs(gamma_at(best) - target)));
      }
      return best;
    }
    prev_t = t;
    prev_f = f;
  }
  throw RangeError("match_mixedness: target " + format_value(target) +
                   " not reached for d=" + format_value(d) + ", j=" + format_value(j) +
                   "; achieved gamma range [" + format_value(lo_seen) + ", " +
                   format_value(hi_seen) + "]");
}

SpreadReport matched_spread(double d, const std::vector<double>& j_samples,
                            const MeasurementSetup& setup, std::size_t n_targets) {
  if (j_samples.empty()) throw UsageError("matched_spread: no J samples");
  SpreadReport report;
  const double j0 = j_samples.front();
  for (double t_ref : log_space(0.1 * std::abs(j0), 10.0 * std::abs(j0), n_targets)) {
    const double target = dm::closed_form_mixedness(dm::ModelParams(d, j0, t_ref));
    std::vector<Bound> bounds;
    try {
      for (double j : j_samples) bounds.push_back(bound_at(d, j, match_mixedness(d, j, target), setup));
    } catch (const RangeError&) {
      ++report.skipped;
      continue;
    }
    ++report.matched;
    const auto [w_min, w_max] = std::minmax_element(
        bounds.begin(), bounds.end(), [](const Bound& a, const Bound& b) { return a.w < b.w; });
    report.w_spread = std::max(report.w_spread, w_max->w - w_min->w);
    if (std::all_of(bounds.begin(), bounds.end(), [](const Bound& b) { return b.u.has_value(); })) {
      const auto [u_min, u_max] = std::minmax_element(
          bounds.begin(), bounds.end(), [](const Bound& a, const Bound& b) { return *a.u < *b.u; });
      report.u_spread = std::max(report.u_spread, *u_max->u - *u_min->u);
    }
  }
  return report;
}

SpreadReport check_single_valued(double d, const std::vector<double>& j_samples,
                                 const MeasurementSetup& setup, std::size_t n_targets) {
  if (j_samples.empty()) throw UsageError("check_single_valued: need at least one J sample");
  const bool positive = j_samples.front() > 0.0;
  for (double j : j_samples) {
    if ((j > 0.0) != positive || j == 0.0) {
      throw UsageError("check_single_valued: J samples must be nonzero and share one sign");
    }
  }
  return matched_spread(d, j_samples, setup, n_targets);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig1a", "fig1b", "fig2",  "fig3a",
                                                 "fig3b", "fig4a", "fig4b", "fig5",
                                                 "fig6a", "fig6b", "fig7a", "fig7b"};
  return names;
}

FigurePreset figure_preset(std::string_view name) {
  // (D, J) maps use an even J step count so that J = 0 is never a grid point.
  const Range d_axis{0.0, 3.0, 101};
  const Range j_axis{-3.0, 3.0, 100};
  const Range t_line{0.01, 5.0, 401};
  const Range t_axis{dm::kMinTemperature, 5.0, 101};
  const double theta = 0.5;

  auto dj_map = [&](double t) { return SweepGrid{d_axis, j_axis, Range::single(t), theta}; };
  auto t_curve = [&] { return SweepGrid{Range::single(1.0), Range::single(1.0), t_line, theta}; };
  auto gamma_d_map = [&](double j) { return SweepGrid{d_axis, Range::single(j), t_axis, theta}; };

  FigurePreset p{std::string(name), {}, {}, default_setup(theta), {}};
  if (name == "fig1a" || name == "fig1b") {
    const double t = name == "fig1a" ? 0.5 : 1.0;
    p.grid = dj_map(t);
    p.description = "C, gamma and W over (D, J) at T = " + format_value(t);
    p.columns = {"d", "j", "concurrence", "gamma", "w"};
  } else if (name == "fig2") {
    p.grid = t_curve();
    p.description = "W, C and gamma versus T at D = 1, J = 1";
    p.columns = {"t", "w", "concurrence", "gamma"};
  } else if (name == "fig3a" || name == "fig3b") {
    const double j = name == "fig3a" ? 1.0 : -1.0;
    p.grid = gamma_d_map(j);
    p.description = "W over (gamma, D) at J = " + format_value(j) + ", realized as a (T, D) grid";
    p.columns = {"gamma", "d", "w"};
  } else if (name == "fig4a" || name == "fig4b") {
    const double t = name == "fig4a" ? 0.5 : 1.0;
    p.grid = dj_map(t);
    p.description = "U over (D, J) at T = " + format_value(t);
    p.columns = {"d", "j", "u"};
  } else if (name == "fig5") {
    p.grid = t_curve();
    p.description = "U, C and gamma versus T at D = 1, J = 1";
    p.columns = {"t", "u", "concurrence", "gamma"};
  } else if (name == "fig6a" || name == "fig6b") {
    const double j = name == "fig6a" ? 1.0 : -1.0;
    p.grid = gamma_d_map(j);
    p.description = "U over (gamma, D) at J = " + format_value(j) + ", realized as a (T, D) grid";
    p.columns = {"gamma", "d", "u"};
  } else if (name == "fig7a") {
    p.grid = dj_map(1.0);
    p.description = "QM-EUR tightness over (D, J) at T = 1";
    p.columns = {"d", "j", "u_eur"};
  } else if (name == "fig7b") {
    p.grid = dj_map(1.0);
    p.description = "QC-VUR tightness over (D, J) at T = 1";
    p.columns = {"d", "j", "u"};
  } else {
    std::string valid;
    for (const std::string& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw UsageError("unknown preset '" + std::string(name) + "'; valid presets: " + valid);
  }
  return p;
}

}  // namespace qcvur::sweep
