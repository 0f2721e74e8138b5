#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace interlace {

struct SelftestOptions {
  std::size_t max_n = 7;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  // Run with a deliberately broken pivot to exercise failure reporting.
  bool inject_pivot_fault = false;
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
  // Graph-file text of a smallest failing instance found.
  std::optional<std::string> reproducer;
};

struct SelftestReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
  // One line per suite, e.g. "recursion: 5120 checks, 0 failures".
  std::string summary() const;
};

// All graphs on up to min(4, max_n) vertices, then `samples` seeded random
// instances per suite with up to max_n vertices.
SelftestReport run_selftest(const SelftestOptions& opts);

}  // namespace interlace
