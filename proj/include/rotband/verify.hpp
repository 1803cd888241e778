#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rotband {

struct CheckResult {
  int number = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Criteria in a named suite: "all", a criterion number ("1".."10"),
/// or one of the short names (prop1, eff_equivalence, eff_properties,
/// lemma1, rested_ratio, bound_domination, sublinearity,
/// event_frequency, ingestion_golden, dataset_smoke). Throws
/// std::invalid_argument on unknown names.
std::vector<int> suite_criteria(const std::string& suite);

/// Runs the given acceptance checks. workdir holds generated
/// artifacts (synthetic logs, emitted CSV/SVG) and is created if
/// missing.
std::vector<CheckResult> run_acceptance(const std::vector<int>& criteria,
                                        const std::string& workdir);

/// Deterministic two-article synthetic click log (click probabilities
/// 0.03 and 0.05) used by the ingestion and dataset-protocol checks.
void write_synthetic_click_log(const std::string& path, long rows,
                               std::uint64_t seed);

}  // namespace rotband
