#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ogk {

/// One verified inequality or identity. pass == (slack >= -tolerance).
struct CheckRecord {
  std::string name;
  double slack = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::string witness;  // empty unless informative
};

struct SuiteReport {
  std::string suite;
  std::string groupoid_id = "-";
  std::string young_pair = "-";
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<CheckRecord> checks;
  double wall_ms = 0.0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  /// Slack-style check: passes iff slack >= -tolerance.
  void add_slack(const std::string& name, double slack, double tolerance,
                 const std::string& witness = "") {
    checks.push_back({name, slack, tolerance, slack >= -tolerance, witness});
  }

  /// Deviation-style check: passes iff deviation <= bound; recorded with
  /// slack = bound - deviation so the slack convention stays uniform.
  void add_deviation(const std::string& name, double deviation, double bound,
                     const std::string& witness = "") {
    checks.push_back({name, bound - deviation, 0.0, deviation <= bound, witness});
  }

  /// Boolean check.
  void add_flag(const std::string& name, bool ok, const std::string& witness = "") {
    checks.push_back({name, ok ? 0.0 : -1.0, 0.0, ok, witness});
  }
};

}  // namespace ogk
