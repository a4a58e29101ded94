#pragma once

#include <string>
#include <vector>

namespace qcvur {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The invariant suite behind the `verify` command: model cross-checks,
/// variance identities, every inequality on seeded random inputs and on the
/// DM grid, the fixed-setting point values, single-valuedness and the
/// QC-VUR/QM-EUR tightness comparison.
std::vector<CheckResult> run_invariant_suite();

}  // namespace qcvur
