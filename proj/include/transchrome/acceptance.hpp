#pragma once

// The fixed acceptance suite, shared by the acceptance test binary and the
// `reproduce` subcommand.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace transchrome {

struct CriterionResult {
  unsigned number = 0;
  std::string title;
  bool passed = false;
  /// One line: what was checked, or what went wrong.
  std::string detail;
  double seconds = 0;
};

inline constexpr unsigned kCriterionCount = 11;

CriterionResult run_criterion(unsigned number, std::uint64_t seed);

/// Runs every criterion in order; `on_result` sees each result as soon as
/// it is available.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "criterion  3  PASS  title  (1.23 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace transchrome
