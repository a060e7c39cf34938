#pragma once

#include <string>
#include <vector>

namespace fracwave {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;
  bool passed() const;
  /// One "PASS|FAIL name: detail" line per check plus a summary line.
  std::string text() const;
};

struct SelftestOptions {
  /// Test hook: perturbs one 2D coefficient before the oracle comparison.
  bool corrupt_coefficients = false;
};

/// Fast invariant suite (well under a minute). Deterministic: the report
/// contains no timings and all random data comes from fixed seeds.
SelftestReport run_selftest(const SelftestOptions& options = {});

}  // namespace fracwave
