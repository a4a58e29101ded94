#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qcvur/dm_model.hpp"
#include "qcvur/relations.hpp"

namespace qcvur::sweep {

/// Inclusive linear range with `steps` points; steps == 1 yields `start`.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 1;

  static Range single(double v) { return {v, v, 1}; }
  std::vector<double> values() const;
};

/// Parses "start:stop:steps" or a bare number (one point). Throws UsageError.
Range parse_range(std::string_view text);

struct SweepGrid {
  Range d;
  Range j;
  Range t;
  double theta = 0.5;

  /// Throws UsageError on steps == 0, start > stop, t.start < T_MIN, negative
  /// D, or any J grid point with |J| < 1e-9.
  void validate() const;
  std::size_t size() const { return d.steps * j.steps * t.steps; }
};

struct SweepRecord {
  double d = 0.0;
  double j = 0.0;
  double t = 0.0;
  double theta = 0.0;
  double gamma = 0.0;
  double concurrence = 0.0;
  double l_tra = 0.0;
  double lhs = 0.0;
  double w = 0.0;
  std::optional<double> u;
  double h_rb = 0.0;
  double h_sb = 0.0;
  double h_ab = 0.0;
  double eur_rhs = 0.0;
  std::optional<double> u_eur;
};

inline constexpr std::string_view kCsvHeader =
    "d,j,t,theta,gamma,concurrence,l_tra,lhs,w,u,h_rb,h_sb,h_ab,eur_rhs,u_eur";

/// Every quantity at one model point. `setup.theta` is used for L_tra; R and S
/// of the entropic relation are the setup's Q_1 and Q_2.
SweepRecord evaluate_point(const dm::ModelParams& p, const MeasurementSetup& setup);

/// Invariant violations of a record, empty when it is consistent.
std::vector<std::string> record_violations(const SweepRecord& r);

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<std::string> diagnostics;  // per-point errors, prefixed with the grid point
  std::size_t invariant_failures = 0;
};

/// Row-major in (d, j, t). Per-point errors leave the affected fields NaN
/// (rendered empty) and add a diagnostic; they never abort the sweep.
SweepResult run_sweep(const SweepGrid& grid, const MeasurementSetup& setup);

/// 17 significant digits, '.' separator; NaN and empty optionals render as "".
std::string format_value(double v);
std::string format_value(const std::optional<double>& v);

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out);
/// Throws IoError if the file cannot be written.
void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path);

/// `key=value` lines in CSV column order.
void print_record(const SweepRecord& r, std::ostream& out);

/// Temperature at which the closed-form mixedness equals `target`. Scans a
/// log-spaced grid over [T_MIN, 1e4], takes the lowest-T sign change, and
/// bisects it to machine precision. Throws RangeError when the target is not
/// bracketed, quoting the min/max mixedness seen on the scan.
double match_mixedness(double d, double j, double target);

struct SpreadReport {
  double w_spread = 0.0;
  double u_spread = 0.0;
  std::size_t matched = 0;  // targets matched by every sample
  std::size_t skipped = 0;  // targets some sample could not reach
};

/// Takes `n_targets` mixedness values from the first sample on a log-spaced
/// T grid over [0.1|j0|, 10|j0|], matches each at every sample, and reports the
/// largest W and U spread across samples. No sign restriction on the samples.
SpreadReport matched_spread(double d, const std::vector<double>& j_samples,
                            const MeasurementSetup& setup, std::size_t n_targets = 20);

/// matched_spread restricted to same-sign samples; throws UsageError on an
/// empty list or mixed signs.
SpreadReport check_single_valued(double d, const std::vector<double>& j_samples,
                                 const MeasurementSetup& setup, std::size_t n_targets = 20);

struct FigurePreset {
  std::string name;
  std::string description;
  SweepGrid grid;
  MeasurementSetup setup;
  std::vector<std::string> columns;  // the quantities the figure plots
};

const std::vector<std::string>& preset_names();
/// Throws UsageError listing the valid names.
FigurePreset figure_preset(std::string_view name);

}  // namespace qcvur::sweep
