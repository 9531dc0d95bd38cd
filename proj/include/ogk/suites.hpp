#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ogk/report.hpp"
#include "ogk/tolerances.hpp"

namespace ogk {

struct SuiteConfig {
  std::uint64_t seed = 7;
  int trials = 0;  // 0 keeps each suite's built-in counts
  Tolerances tol = Tolerances::from_env();
  std::string inject_fault;   // "", "assoc"
  std::string groupoid_only;  // restrict convolution suites to one zoo id
  std::string young_only;     // restrict to one young pair id
};

std::vector<std::string> suite_names();

/// Run one suite ("orlicz.norms") or "all". Reports come back sorted by
/// suite name; a given (seed, config) always produces the same values.
std::vector<SuiteReport> run_suites(const std::string& selector, const SuiteConfig& config);

}  // namespace ogk
