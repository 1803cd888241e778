#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rotband/environments.hpp"
#include "rotband/evaluation.hpp"
#include "rotband/policies.hpp"

namespace rotband {

struct PolicyEntry {
  std::string id;
  PolicyConfig config;
  std::string label;  // result/output name; defaults to id
};

struct ExperimentConfig {
  std::string name;
  Environment env;
  long T = 0;
  long replications = 1;
  std::uint64_t base_seed = 0;
  std::array<double, 2> quantiles{0.1, 0.9};
  std::vector<PolicyEntry> policies;
  std::string output_dir = ".";
  OracleKind oracle = OracleKind::Greedy;
  bool write_runs = true;
  bool write_svg = true;
  bool svg_log_x = false;
  bool svg_log_y = false;
};

/// Parses and validates the JSON config document (see README for the
/// schema). Throws std::invalid_argument on any violation.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

struct RunResult {
  std::string policy;
  long replication = 0;
  std::vector<ArmId> arms;     // pulled arm per round
  std::vector<double> regret;  // cumulative regret per round
  double wall_seconds = 0.0;
};

/// One policy on one replication. Arm-noise streams are keyed by
/// (base seed, replication, arm) so every policy in a replication sees
/// the same noise realization; policy-internal randomness is keyed by
/// (base seed, policy id, replication).
RunResult run_one(const Environment& env, const PolicyEntry& entry, long T,
                  long replication, std::uint64_t base_seed, OracleKind oracle);

/// All (policy, replication) cells, executed on a thread pool sized by
/// BANDIT_THREADS (unset or 0 = hardware concurrency). Output bytes
/// are independent of the thread count.
std::vector<RunResult> run_experiment(const ExperimentConfig& config);

struct PolicyAggregate {
  std::string policy;
  std::vector<double> mean;
  std::vector<double> q_lo;
  std::vector<double> q_hi;
  double wall_seconds = 0.0;
};

struct AggregateResult {
  std::vector<PolicyAggregate> policies;
  std::array<double, 2> quantiles{0.1, 0.9};
};

/// Pointwise mean and linearly interpolated empirical quantiles over
/// replications, per policy, preserving config order.
AggregateResult aggregate(const std::vector<RunResult>& results,
                          std::array<double, 2> quantiles);

/// Click-log ingestion: bucket timestamps, drop articles missing from
/// any bucket, average each article's trailing rolling mean (over the
/// last rolling_window click events) within each bucket, and count
/// traffic per bucket. Input CSV columns: timestamp_seconds,
/// article_id, click. Malformed rows raise std::runtime_error naming
/// the line number; an empty span raises too.
std::vector<DatasetRow> ingest_click_log(
    const std::string& path, long bucket_minutes, long rolling_window,
    std::optional<std::array<long, 2>> span_seconds = std::nullopt);

std::vector<DatasetRow> read_dataset_csv(const std::string& path);
void write_dataset_csv(const std::vector<DatasetRow>& table,
                       const std::string& path);

/// Schemas: runs file (policy, replication, t, arm, regret); aggregate
/// file (policy, t, mean_regret, q_lo, q_hi). Header always present,
/// LF endings, floats at 17 significant digits.
void emit_csv(const std::vector<RunResult>& results, const std::string& path);
void emit_csv(const AggregateResult& agg, const std::string& path);

struct SvgOptions {
  bool log_x = false;
  bool log_y = false;
  // Named overlay curves (e.g. theoretical bounds), one value per round.
  std::vector<std::pair<std::string, std::vector<double>>> overlays;
};

/// Standalone SVG: one mean-regret line per policy, shaded quantile
/// band, optional overlays, labeled axes. Throws std::invalid_argument
/// on an empty aggregate.
void emit_svg(const AggregateResult& agg, const std::string& path,
              const SvgOptions& options = {});

}  // namespace rotband
