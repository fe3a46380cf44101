#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fbpir {

enum class Suite { kFast, kFull };

Suite parse_suite(const std::string& s);

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  double seconds;
  std::string detail;
};

inline constexpr int kCriterionCount = 13;

/// Runs one criterion in isolation.
CriterionResult run_criterion(int id, Suite suite);

/// Runs every criterion in order; values computed by earlier criteria are
/// reused by the bound sandwich check. `on_result` sees each result as it
/// completes.
std::vector<CriterionResult> run_acceptance(Suite suite,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace fbpir
