#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qfourier/quad.hpp"

namespace qfourier::acceptance {

struct Options {
  QuadratureConfig quad{};
  unsigned workers = 0;
  std::uint64_t seed = 20101023;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Names of the checks in execution order.
std::vector<std::string> criterion_names();

/// Runs every check. When `log` is given, one line per check is written as it
/// finishes, plus informational lines that do not count towards the verdict.
std::vector<CriterionResult> run_all(const Options& opts, std::ostream* log = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace qfourier::acceptance
