#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rotband/harness.hpp"
#include "rotband/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rotband;

namespace {

int cmd_simulate(const std::string& config_path) {
  const ExperimentConfig cfg = load_experiment_config(config_path);
  fs::create_directories(cfg.output_dir);
  const auto runs = run_experiment(cfg);
  const AggregateResult agg = aggregate(runs, cfg.quantiles);
  const fs::path dir(cfg.output_dir);
  if (cfg.write_runs) {
    emit_csv(runs, (dir / (cfg.name + "_runs.csv")).string());
  }
  emit_csv(agg, (dir / (cfg.name + "_agg.csv")).string());
  if (cfg.write_svg) {
    SvgOptions opt;
    opt.log_x = cfg.svg_log_x;
    opt.log_y = cfg.svg_log_y;
    emit_svg(agg, (dir / (cfg.name + ".svg")).string(), opt);
  }
  for (const PolicyAggregate& p : agg.policies) {
    std::printf("%-14s final mean regret %.6g  [%g, %g]  (%.2fs)\n",
                p.policy.c_str(), p.mean.back(), p.q_lo.back(), p.q_hi.back(),
                p.wall_seconds);
  }
  return 0;
}

int cmd_ingest(const std::string& input, long bucket_min, long window,
               const std::string& out, long span_start, long span_end) {
  std::optional<std::array<long, 2>> span;
  if (span_end > span_start) span = {{span_start, span_end}};
  const auto table = ingest_click_log(input, bucket_min, window, span);
  write_dataset_csv(table, out);
  long buckets = 0;
  for (const DatasetRow& r : table) buckets = std::max(buckets, r.bucket + 1);
  std::printf("wrote %zu rows (%ld buckets) to %s\n", table.size(), buckets,
              out.c_str());
  return 0;
}

BoundKind bound_kind(const std::string& setting) {
  static const std::map<std::string, BoundKind> kinds = {
      {"variation_minimax_upper", BoundKind::VariationMinimaxUpper},
      {"piecewise_minimax_upper", BoundKind::PiecewiseMinimaxUpper},
      {"piecewise_gap_upper", BoundKind::PiecewiseGapUpper},
      {"rested_gapfree_upper", BoundKind::RestedGapFreeUpper},
      {"rested_gap_upper", BoundKind::RestedGapUpper},
      {"variation_lower", BoundKind::VariationLower},
      {"piecewise_lower", BoundKind::PiecewiseLower}};
  if (auto it = kinds.find(setting); it != kinds.end()) return it->second;
  throw std::invalid_argument("unknown bound setting: " + setting);
}

int cmd_bound(const std::string& setting, const std::string& params_json) {
  json j;
  try {
    j = json::parse(params_json);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("bad --params JSON: ") +
                                err.what());
  }
  BoundParams p;
  p.T = j.at("T").get<long>();
  p.K = j.at("K").get<int>();
  p.sigma = j.value("sigma", 1.0);
  p.V = j.value("V", 0.0);
  p.upsilon = j.value("upsilon", 1L);
  p.gaps = j.value("gaps", std::vector<double>{});
  if (j.contains("C")) {
    p.c_policy = j.at("C").get<double>();
  } else if (j.contains("policy")) {
    static const std::map<std::string, PolicyKind> kinds = {
        {"raw_ucb", PolicyKind::RawUcb},
        {"fewa", PolicyKind::Fewa},
        {"eff_raw_ucb", PolicyKind::EffRawUcb},
        {"eff_fewa", PolicyKind::EffFewa}};
    const std::string id = j.at("policy").get<std::string>();
    auto it = kinds.find(id);
    if (it == kinds.end()) {
      throw std::invalid_argument("unknown policy for bound: " + id);
    }
    p.c_policy = policy_constant(it->second, j.value("alpha", 4.0));
  }
  std::printf("%.17g\n", theoretical_bound(bound_kind(setting), p));
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& workdir) {
  const auto results = run_acceptance(suite_criteria(suite), workdir);
  bool all = true;
  for (const CheckResult& r : results) {
    std::printf("%s  criterion %2d: %s — %s (%.1fs)\n",
                r.passed ? "PASS" : "FAIL", r.number, r.name.c_str(),
                r.detail.c_str(), r.seconds);
    all = all && r.passed;
  }
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotting-bandit simulation and benchmark harness"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "run a configured experiment");
  std::string config_path;
  sim->add_option("--config", config_path, "JSON experiment config")
      ->required();

  auto* ing = app.add_subcommand("ingest", "preprocess a click log");
  std::string input, out;
  long bucket_min = 5, window = 30000, span_start = 0, span_end = 0;
  ing->add_option("--input", input, "click-log CSV")->required();
  ing->add_option("--bucket-min", bucket_min, "bucket size in minutes");
  ing->add_option("--window", window, "rolling-mean window (click events)");
  ing->add_option("--out", out, "output dataset table CSV")->required();
  ing->add_option("--span-start", span_start, "span filter start (seconds)");
  ing->add_option("--span-end", span_end, "span filter end (seconds)");

  auto* bnd = app.add_subcommand("bound", "evaluate a regret-bound formula");
  std::string setting, params = "{}";
  bnd->add_option("--setting", setting, "bound name")->required();
  bnd->add_option("--params", params, "JSON parameters")->required();

  auto* ver = app.add_subcommand("verify", "run an acceptance suite");
  std::string suite = "all", workdir = "acceptance_out";
  ver->add_option("--suite", suite, "suite name or criterion number");
  ver->add_option("--workdir", workdir, "artifact directory");

  try {
    app.parse(argc, argv);
    if (sim->parsed()) return cmd_simulate(config_path);
    if (ing->parsed()) {
      return cmd_ingest(input, bucket_min, window, out, span_start, span_end);
    }
    if (bnd->parsed()) return cmd_bound(setting, params);
    if (ver->parsed()) return cmd_verify(suite, workdir);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
