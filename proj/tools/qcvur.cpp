// Command-line front end: parameter sweeps to CSV, single points, mixedness
// matching and the invariant suite.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcvur/dm_model.hpp"
#include "qcvur/errors.hpp"
#include "qcvur/relations.hpp"
#include "qcvur/sweep.hpp"
#include "qcvur/verify.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

using namespace qcvur;

int run_sweep_command(const std::optional<std::string>& preset, const std::string& d,
                      const std::string& j, const std::string& t, double theta,
                      const std::string& out) {
  sweep::SweepGrid grid;
  MeasurementSetup setup = default_setup();
  if (preset) {
    const sweep::FigurePreset p = sweep::figure_preset(*preset);
    grid = p.grid;
    setup = p.setup;
    std::string cols;
    for (const auto& c : p.columns) cols += (cols.empty() ? "" : ",") + c;
    std::cerr << p.name << ": " << p.description << " [plotted columns: " << cols << "]\n";
  } else {
    if (d.empty() || j.empty() || t.empty()) {
      throw UsageError("sweep needs --preset or all of --d, --j, --t");
    }
    grid = {sweep::parse_range(d), sweep::parse_range(j), sweep::parse_range(t), theta};
  }
  const sweep::SweepResult result = sweep::run_sweep(grid, setup);
  sweep::emit_csv(result.records, std::filesystem::path(out));
  for (const std::string& line : result.diagnostics) std::cerr << "diagnostic: " << line << '\n';
  std::cerr << result.records.size() << " records written to " << out << '\n';
  if (result.invariant_failures > 0) {
    std::cerr << result.invariant_failures << " invariant violation(s)\n";
    return kNumerical;
  }
  return kOk;
}

int run_point_command(double d, double j, double t, double theta) {
  MeasurementSetup setup = default_setup(theta);
  const sweep::SweepRecord r = sweep::evaluate_point(dm::ModelParams(d, j, t), setup);
  sweep::print_record(r, std::cout);
  const auto violations = sweep::record_violations(r);
  for (const auto& v : violations) std::cerr << "invariant: " << v << '\n';
  return violations.empty() ? kOk : kNumerical;
}

int run_verify_command() {
  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (const CheckResult& c : run_invariant_suite()) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    if (!c.passed) ++failed;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed")
            << " in " << elapsed.count() << " s\n";
  return failed == 0 ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variance-based and entropic conditional uncertainty relations on the "
               "two-qubit Heisenberg model with DM interaction"};
  app.require_subcommand(1);

  std::optional<std::string> preset;
  std::string d_range, j_range, t_range, out;
  double sweep_theta = 0.5;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a (D, J, T) grid and write CSV");
  sweep_cmd->add_option("--preset", preset, "Figure preset")
      ->check(CLI::IsMember(sweep::preset_names()));
  sweep_cmd->add_option("--d", d_range, "D range start:stop:steps");
  sweep_cmd->add_option("--j", j_range, "J range start:stop:steps");
  sweep_cmd->add_option("--t", t_range, "T range start:stop:steps");
  sweep_cmd->add_option("--theta", sweep_theta, "Phase of the variance-sum bound");
  sweep_cmd->add_option("--out", out, "Output CSV path")->required();

  double pd = 0, pj = 0, pt = 0, ptheta = 0.5;
  auto* point_cmd = app.add_subcommand("point", "Print every quantity at one point");
  point_cmd->add_option("--d", pd)->required();
  point_cmd->add_option("--j", pj)->required();
  point_cmd->add_option("--t", pt)->required();
  point_cmd->add_option("--theta", ptheta);

  double md = 0, mj = 0, target = 0;
  auto* match_cmd = app.add_subcommand("match-gamma", "Find T with the given mixedness");
  match_cmd->add_option("--d", md)->required();
  match_cmd->add_option("--j", mj)->required();
  match_cmd->add_option("--target", target)->required();

  double sd = 0;
  std::vector<double> samples;
  std::size_t n_targets = 20;
  auto* single_cmd =
      app.add_subcommand("check-single-valued", "Spread of W and U at matched mixedness");
  single_cmd->add_option("--d", sd)->required();
  single_cmd->add_option("--j", samples, "Comma-separated J samples of one sign")
      ->required()
      ->delimiter(',');
  single_cmd->add_option("--targets", n_targets, "Number of mixedness targets");

  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (sweep_cmd->parsed()) {
      return run_sweep_command(preset, d_range, j_range, t_range, sweep_theta, out);
    }
    if (point_cmd->parsed()) return run_point_command(pd, pj, pt, ptheta);
    if (match_cmd->parsed()) {
      std::cout << "t=" << sweep::format_value(sweep::match_mixedness(md, mj, target)) << '\n';
      return kOk;
    }
    if (single_cmd->parsed()) {
      const sweep::SpreadReport r =
          sweep::check_single_valued(sd, samples, default_setup(), n_targets);
      std::cout << "w_spread=" << sweep::format_value(r.w_spread) << '\n'
                << "u_spread=" << sweep::format_value(r.u_spread) << '\n'
                << "matched=" << r.matched << '\n'
                << "skipped=" << r.skipped << '\n';
      return kOk;
    }
    if (verify_cmd->parsed()) return run_verify_command();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
