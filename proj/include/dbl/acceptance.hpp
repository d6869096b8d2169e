#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dbl/fixtures.hpp"

namespace dbl {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = kFixtureSeed;
  long budget = 2000;  // search budget for the Archimedean tensor upper bound
};

inline constexpr int kCriterionCount = 10;

/// Runs one criterion (1..10). Exceptions are caught and reported as failures.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

}  // namespace dbl
