// Verification suites over a block: the checks behind `bkd verify`.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bkd/blockdata.hpp"
#include "bkd/report.hpp"

namespace bkd {

enum class Suite { hecke, duality, variety, cross_oracle };

/// In report order.
const std::vector<Suite>& all_suites();
std::string suite_name(Suite s);
/// Accepts the names printed by suite_name; throws std::invalid_argument otherwise.
Suite parse_suite(const std::string& name);

struct SuiteOptions {
  /// Overrides every per-check truncation degree when set.
  std::optional<int> max_degree;
};

struct SuiteResult {
  std::string suite;
  std::string block;
  std::vector<Check> checks;
  std::string skipped;  // reason the suite did not apply; empty when it ran
  bool ok() const;
};

/// Runs one suite.  Invalid block data is reported as failed "axiom" checks and
/// nothing else runs.  TruncationError propagates to the caller.
SuiteResult run_suite(Suite s, const BlockRegistry& reg, const BlockDatum& b, const SuiteOptions& opt = {});

}  // namespace bkd
