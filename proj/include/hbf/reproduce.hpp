#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hbf/family.hpp"
#include "hbf/parallel.hpp"

namespace hbf {

struct ReproduceOptions {
  std::uint64_t seed = Family::kDefaultSeed;
  unsigned workers = default_workers();
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;  ///< 0 means no runtime limit
  std::vector<std::string> failures;  ///< empty when passed
  std::string summary;
};

struct CriterionInfo {
  int id;
  std::string title;
  double budget_seconds;
};

/// The ten end-to-end checks, in order.
const std::vector<CriterionInfo>& criteria();

/// Runs one check. Exceptions inside the check count as failures. A run that
/// exceeds its budget fails even if every assertion held.
CriterionResult run_criterion(int id, const ReproduceOptions& options = {});

/// "PASS  3  12.41s / 120s  title" style line.
std::string format_result_line(const CriterionResult& r);

}  // namespace hbf
