#include "rotband/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rotband/environments.hpp"
#include "rotband/evaluation.hpp"
#include "rotband/harness.hpp"
#include "rotband/policies.hpp"
#include "rotband/rng.hpp"
#include "rotband/window_stats.hpp"

namespace rotband {

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kVerifySeed = 0x5eed5eed5eedULL;

Environment rested_bench(long T, double L = 1.0, double sigma = 1.0) {
  return make_rested_two_arm(L, T / 4, T, sigma);
}

PolicyEntry entry_of(const std::string& id, double alpha,
                     bool dense = false) {
  PolicyEntry e;
  e.id = id;
  e.config.alpha = alpha;
  e.config.sigma = 1.0;
  e.config.dense = dense;
  return e;
}

std::vector<RunResult> run_policy(const Environment& env,
                                  const PolicyEntry& entry, long T, long R,
                                  OracleKind oracle) {
  ExperimentConfig cfg;
  cfg.env = env;
  cfg.T = T;
  cfg.replications = R;
  cfg.base_seed = kVerifySeed;
  cfg.policies = {entry};
  cfg.oracle = oracle;
  return run_experiment(cfg);
}

double mean_regret_at(const std::vector<RunResult>& runs, long t) {
  double sum = 0.0;
  for (const RunResult& r : runs) sum += r.regret[t - 1];
  return sum / static_cast<double>(runs.size());
}

/// Replays run_one's simulation loop but keeps the full trace for
/// white-box diagnostics.
Trace run_trace(const Environment& env, const PolicyEntry& entry, long T,
                long replication) {
  const std::uint64_t rep_seed =
      substream_seed(kVerifySeed, static_cast<std::uint64_t>(replication));
  std::vector<Rng> arm_rng;
  for (ArmId i = 0; i < env.K; ++i) {
    arm_rng.emplace_back(
        substream_seed(rep_seed, static_cast<std::uint64_t>(i) + 1));
  }
  auto policy = make_policy(entry.id, env.K, entry.config, &env.surface,
                            env.declared_range, rep_seed);
  std::vector<long> pulls(env.K, 0);
  Trace trace;
  trace.reserve(T);
  for (long t = 1; t <= T; ++t) {
    const ArmId arm = policy->choose(t);
    const double mean = env.surface.mean(arm, t, pulls[arm]);
    const double obs = mean + sample_noise(env, mean, arm_rng[arm]);
    ++pulls[arm];
    policy->observe(arm, obs);
    trace.push_back({t, arm, mean, obs});
  }
  return trace;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// ---- criterion 1 ------------------------------------------------------

CheckResult check_prop1() {
  CheckResult res{1, "greedy-vs-exhaustive exactness", true, "", 0};
  std::ostringstream detail;
  for (long T : {4L, 8L, 12L, 16L, 20L}) {
    auto [mu0, mu1] = make_prop1_pair(T);
    const double opt0 = exhaustive_optimal(mu0, T).value;
    const double want_opt0 = 1.5 * static_cast<double>(T / 2);
    const double greedy0 = opt0 - greedy_oracle_value(mu0, T);
    const double greedy1 =
        exhaustive_optimal(mu1, T).value - greedy_oracle_value(mu1, T);
    const bool ok = std::abs(opt0 - want_opt0) < 1e-9 &&
                    std::abs(greedy0 - static_cast<double>(T / 4)) < 1e-9 &&
                    std::abs(greedy1) < 1e-9;
    if (!ok) {
      res.passed = false;
      detail << "T=" << T << " opt=" << opt0 << " greedy_regret=" << greedy0
             << " second_regret=" << greedy1 << "; ";
    }
  }
  res.detail = res.passed ? "exact at T in {4,8,12,16,20}" : detail.str();
  return res;
}

// ---- criterion 2 ------------------------------------------------------

CheckResult check_eff_equivalence() {
  CheckResult res{2, "exact/efficient pull-sequence equivalence", true, "", 0};
  const long T = 10000;
  const Environment env =
      make_piecewise_lb_instance(3, 4, T, 1.0, {0, 1, 2, 0});
  long divergences = 0;
  const std::vector<std::pair<PolicyEntry, PolicyEntry>> pairs = {
      {entry_of("raw_ucb", 4.0), entry_of("eff_raw_ucb", 4.0, true)},
      {entry_of("fewa", 4.0), entry_of("eff_fewa", 4.0, true)}};
  for (const auto& [exact, eff] : pairs) {
    for (long r = 0; r < 50; ++r) {
      const RunResult a = run_one(env, exact, T, r, kVerifySeed,
                                  OracleKind::Greedy);
      const RunResult b =
          run_one(env, eff, T, r, kVerifySeed, OracleKind::Greedy);
      if (a.arms != b.arms) ++divergences;
    }
  }
  res.passed = divergences == 0;
  res.detail = std::to_string(divergences) + " divergent runs of 100";
  return res;
}

// ---- criterion 3 ------------------------------------------------------

// Range-tracking mirror of the efficient-update step: triplets carry
// explicit sample-index ranges instead of sums, so every structural
// claim is checkable against exact prefix sums.
struct ShadowTriplet {
  long h;
  long mu_lo = -1, mu_hi = -1;  // mu_eff covers samples [mu_lo, mu_hi)
  long p_lo = 0, p_hi = 0;      // pending block covers [p_lo, p_hi)
};

struct ShadowEff {
  double m;
  long n = 0;
  std::vector<ShadowTriplet> tr{{1}};

  void push() {
    ++n;
    if (n == tr.back().h) {
      tr.push_back({ceil_ratio(m, n), -1, -1, tr.back().p_lo, tr.back().p_hi});
    }
    tr[0] = {1, n - 1, n, n - 1, n};
    for (std::size_t j = 1; j < tr.size(); ++j) tr[j].p_hi = n;
    for (std::size_t j = tr.size(); j-- > 1;) {
      if (tr[j].p_hi - tr[j].p_lo == tr[j].h) {
        tr[j].mu_lo = tr[j].p_lo;
        tr[j].mu_hi = tr[j].p_hi;
        tr[j].p_lo = tr[j - 1].p_lo;
        tr[j].p_hi = tr[j - 1].p_hi;
      }
    }
  }
};

CheckResult check_eff_properties() {
  CheckResult res{3, "efficient-statistic structural properties", true, "", 0};
  long violations = 0;
  Rng rng(substream_seed(kVerifySeed, 3));
  const long streams_per_m = 5000;  // 10^4 across both grid ratios
  for (double m : {2.0, 1.5}) {
    for (long s = 0; s < streams_per_m && violations == 0; ++s) {
      const long len = 1 + static_cast<long>(rng.next_u64() % 512);
      EffArmStats eff(m);
      ShadowEff shadow{m};
      ArmStats exact;
      // last_mu/last_change track refresh cadence (checked for m=2).
      std::map<long, double> last_mu;
      std::map<long, long> last_change;
      for (long i = 0; i < len; ++i) {
        const double v = rng.next_gaussian(1.0);
        eff.push(v);
        shadow.push();
        exact.push(v);
        const auto& ts = eff.triplets();
        if (ts.size() != shadow.tr.size()) {
          ++violations;
          break;
        }
        for (std::size_t j = 0; j < ts.size(); ++j) {
          const EffTriplet& a = ts[j];
          const ShadowTriplet& b = shadow.tr[j];
          // Property 4: pending sums are sums of trailing blocks.
          const double want_p =
              exact.prefix_sum(b.p_hi) - exact.prefix_sum(b.p_lo);
          if (a.h != b.h || a.pending_count != b.p_hi - b.p_lo ||
              std::abs(a.pending_sum - want_p) > 1e-9 ||
              a.mu_eff.has_value() != (b.mu_lo >= 0)) {
            ++violations;
            continue;
          }
          // Property 1: a defined statistic averages exactly h
          // consecutive samples.
          if (a.mu_eff) {
            if (b.mu_hi - b.mu_lo != a.h) ++violations;
            const double want_mu =
                (exact.prefix_sum(b.mu_hi) - exact.prefix_sum(b.mu_lo)) / a.h;
            if (std::abs(*a.mu_eff - want_mu) > 1e-9) ++violations;
          }
          // Property 5: pending blocks stay strictly smaller than the
          // window (h = 1 holds its own promoted sample).
          if (a.h > 1 && a.pending_count >= a.h) ++violations;
          // Property 6: pending counts grow with the window size.
          if (j > 0 && a.pending_count < ts[j - 1].pending_count) {
            ++violations;
          }
          // Property 3 (m = 2 only): window 2^{j-1} refreshes every
          // 2^{j-1}/2 pulls, starting at pull 2^{j-1}.
          if (m == 2.0 && a.mu_eff) {
            auto it = last_mu.find(a.h);
            if (it == last_mu.end()) {
              if (eff.count() != a.h) ++violations;
              last_mu[a.h] = *a.mu_eff;
              last_change[a.h] = eff.count();
            } else if (*a.mu_eff != it->second) {
              const long cadence = std::max(1L, a.h / 2);
              if (eff.count() - last_change[a.h] != cadence) ++violations;
              it->second = *a.mu_eff;
              last_change[a.h] = eff.count();
            }
          }
        }
      }
    }
  }
  res.passed = violations == 0;
  res.detail = std::to_string(violations) + " structural violations";
  return res;
}

// ---- criterion 4 ------------------------------------------------------

CheckResult check_lemma1() {
  CheckResult res{4, "chosen-arm quality on favorable-event rounds", true, "",
                  0};
  const long T = 2000;
  const std::vector<Environment> envs = {
      rested_bench(T), make_piecewise_lb_instance(3, 4, T, 1.0, {0, 1, 2, 0})};
  long violations = 0;
  long event_rounds = 0;
  for (const Environment& env : envs) {
    for (const auto& [id, slack] :
         std::vector<std::pair<std::string, double>>{{"raw_ucb", 2.0},
                                                     {"fewa", 4.0}}) {
      const PolicyEntry entry = entry_of(id, 4.0);
      for (long r = 0; r < 100; ++r) {
        const Trace trace = run_trace(env, entry, T, r);
        const EventReport rep =
            favorable_event_check(trace, env, 4.0, 1.0, false, slack);
        violations += rep.lemma1_violations;
        event_rounds += rep.event_rounds;
      }
    }
  }
  res.passed = violations == 0;
  res.detail = std::to_string(violations) + " violations over " +
               std::to_string(event_rounds) + " event rounds";
  return res;
}

// ---- criterion 5 ------------------------------------------------------

CheckResult check_rested_ratio() {
  CheckResult res{5, "rested-benchmark filter/index regret ratio", true, "",
                  0};
  const long T = 10000;
  const Environment env = rested_bench(T);
  const auto raw = run_policy(env, entry_of("raw_ucb", 4.0), T, 200,
                              OracleKind::Greedy);
  const auto few =
      run_policy(env, entry_of("fewa", 4.0), T, 200, OracleKind::Greedy);
  const double ratio = mean_regret_at(few, T) / mean_regret_at(raw, T);
  res.passed = ratio >= 2.0 && ratio <= 8.0;
  res.detail = "final-regret ratio " + fmt(ratio) + " (want [2, 8])";
  return res;
}

// ---- criterion 6 ------------------------------------------------------

CheckResult check_bound_domination() {
  CheckResult res{6, "empirical regret below the piecewise bound", true, "",
                  0};
  const long T = 10000;
  Rng rng(substream_seed(kVerifySeed, 6));
  std::vector<int> i_star;
  for (int k = 0; k < 4; ++k) {
    i_star.push_back(static_cast<int>(rng.next_u64() % 3));
  }
  const Environment env = make_piecewise_lb_instance(3, 4, T, 1.0, i_star);
  const auto runs =
      run_policy(env, entry_of("raw_ucb", 4.0), T, 100, OracleKind::Greedy);
  const double mean_final = mean_regret_at(runs, T);
  BoundParams p;
  p.T = T;
  p.K = 3;
  p.sigma = 1.0;
  p.c_policy = policy_constant(PolicyKind::RawUcb, 4.0);
  p.upsilon = 4;
  p.V = variation_budget(env, T);
  const double bound = theoretical_bound(BoundKind::PiecewiseMinimaxUpper, p);
  res.passed = mean_final >= 0.0 && mean_final <= bound;
  res.detail = "mean regret " + fmt(mean_final) + " vs bound " + fmt(bound);
  return res;
}

// ---- criterion 7 ------------------------------------------------------

CheckResult check_sublinearity() {
  CheckResult res{7, "stationary logarithmic-growth signature", true, "", 0};
  const long T = 10000;
  PiecewiseSpec spec;
  spec.levels = {{0.5, 0.0}};
  const Environment env = make_piecewise_env(spec, T, 1.0);
  const auto runs =
      run_policy(env, entry_of("raw_ucb", 1.4), T, 200, OracleKind::Greedy);
  const double at_half = mean_regret_at(runs, T / 2);
  const double at_full = mean_regret_at(runs, T);
  const double ratio = at_full / at_half;
  res.passed = ratio <= 1.5;
  res.detail = "regret(T)/regret(T/2) = " + fmt(ratio) + " (want <= 1.5)";
  return res;
}

// ---- criterion 8 ------------------------------------------------------

CheckResult check_event_frequency() {
  CheckResult res{8, "confidence-event failure frequency", true, "", 0};
  const long t = 100;
  const double alpha = 4.0;
  const int K = 2;
  const long reps = 100000;
  const double delta = delta_t(t, alpha);
  std::vector<double> radius(t);  // radius[h-1] = c(h, delta_t)
  for (long h = 1; h < t; ++h) radius[h - 1] = confidence_radius(h, delta, 1.0);
  long failures = 0;
  std::vector<double> prefix(t, 0.0);
  for (long r = 0; r < reps; ++r) {
    bool failed = false;
    for (int arm = 0; arm < K && !failed; ++arm) {
      Rng rng(substream_seed(kVerifySeed,
                             static_cast<std::uint64_t>(r) * K + arm + 17));
      double sum = 0.0;
      for (long i = 1; i < t; ++i) {
        sum += rng.next_gaussian(1.0);
        prefix[i] = sum;
      }
      // All trailing windows of a maximally-sampled arm at round t.
      for (long h = 1; h < t && !failed; ++h) {
        const double dev = std::abs(prefix[t - 1] - prefix[t - 1 - h]) / h;
        if (dev > radius[h - 1]) failed = true;
      }
    }
    if (failed) ++failures;
  }
  const double freq = static_cast<double>(failures) / reps;
  const double limit = K * std::pow(static_cast<double>(t), 2.0 - alpha);
  res.passed = freq <= limit;
  res.detail = "failure frequency " + fmt(freq) + " vs limit " + fmt(limit);
  return res;
}

// ---- criteria 9 and 10 -------------------------------------------------

constexpr double kLogProb[2] = {0.03, 0.05};

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string ensure_click_log(const std::string& workdir) {
  const std::string path = (fs::path(workdir) / "clicklog.csv").string();
  write_synthetic_click_log(path, 100000, 0xC11C5ULL);
  return path;
}

CheckResult check_ingestion_golden(const std::string& workdir) {
  CheckResult res{9, "click-log ingestion accuracy and determinism", true, "",
                  0};
  const std::string log = ensure_click_log(workdir);
  const auto table = ingest_click_log(log, 5, 30000);
  double worst = 0.0;
  for (const DatasetRow& row : table) {
    worst = std::max(worst, std::abs(row.mean - kLogProb[row.arm]));
  }
  const std::string out1 = (fs::path(workdir) / "ingest1.csv").string();
  const std::string out2 = (fs::path(workdir) / "ingest2.csv").string();
  write_dataset_csv(table, out1);
  write_dataset_csv(ingest_click_log(log, 5, 30000), out2);
  const bool identical = read_bytes(out1) == read_bytes(out2);
  res.passed = worst <= 0.02 && identical;
  res.detail = "worst bucket-mean error " + fmt(worst) +
               (identical ? ", outputs byte-identical"
                          : ", OUTPUTS DIFFER ACROSS RUNS");
  return res;
}

CheckResult check_dataset_smoke(const std::string& workdir) {
  CheckResult res{10, "dataset protocol end-to-end", true, "", 0};
  const std::string log = ensure_click_log(workdir);
  const auto table = ingest_click_log(log, 5, 30000);
  const Environment env = dataset_env_from_table(table, 10);
  const long T = env.T;

  ExperimentConfig cfg;
  cfg.env = env;
  cfg.T = T;
  cfg.replications = 3;
  cfg.base_seed = kVerifySeed;
  cfg.oracle = OracleKind::Greedy;
  cfg.policies = {entry_of("raw_ucb", 4.0), entry_of("eff_raw_ucb", 4.0),
                  entry_of("fewa", 4.0), entry_of("exp3s", 4.0)};
  cfg.policies[1].config.m = 2.0;
  cfg.policies[3].config.exp3s = exp3s_tuning_from_batches(T, env.K, 12);
  const auto runs = run_experiment(cfg);
  const AggregateResult agg = aggregate(runs, cfg.quantiles);
  emit_csv(runs, (fs::path(workdir) / "dataset_runs.csv").string());
  emit_csv(agg, (fs::path(workdir) / "dataset_agg.csv").string());
  emit_svg(agg, (fs::path(workdir) / "dataset_agg.svg").string());

  const RunResult oracle = run_one(env, entry_of("greedy_oracle", 4.0), T, 0,
                                   kVerifySeed, OracleKind::Greedy);
  const double oracle_final = oracle.regret.back();
  res.passed = std::abs(oracle_final) <= 1e-9;
  res.detail = "pipeline complete; oracle final regret " + fmt(oracle_final);
  return res;
}

}  // namespace

void write_synthetic_click_log(const std::string& path, long rows,
                               std::uint64_t seed) {
  fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write click log: " + path);
  out << "timestamp_seconds,article_id,click\n";
  Rng rng(seed);
  // Spread rows evenly over 100 minutes: 20 buckets at 5 minutes.
  for (long i = 0; i < rows; ++i) {
    const long ts = i * 6000 / rows;
    const int article = static_cast<int>(i % 2);
    const int click = rng.next_bernoulli(kLogProb[article]) ? 1 : 0;
    out << ts << ',' << article << ',' << click << '\n';
  }
}

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, int> names = {
      {"prop1", 1},          {"eff_equivalence", 2}, {"eff_properties", 3},
      {"lemma1", 4},         {"rested_ratio", 5},    {"bound_domination", 6},
      {"sublinearity", 7},   {"event_frequency", 8}, {"ingestion_golden", 9},
      {"dataset_smoke", 10}};
  if (suite == "all") {
    std::vector<int> all;
    for (int i = 1; i <= 10; ++i) all.push_back(i);
    return all;
  }
  if (auto it = names.find(suite); it != names.end()) return {it->second};
  try {
    const int n = std::stoi(suite);
    if (n >= 1 && n <= 10) return {n};
  } catch (...) {
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

std::vector<CheckResult> run_acceptance(const std::vector<int>& criteria,
                                        const std::string& workdir) {
  fs::create_directories(workdir);
  std::vector<CheckResult> out;
  for (int n : criteria) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult res;
    switch (n) {
      case 1: res = check_prop1(); break;
      case 2: res = check_eff_equivalence(); break;
      case 3: res = check_eff_properties(); break;
      case 4: res = check_lemma1(); break;
      case 5: res = check_rested_ratio(); break;
      case 6: res = check_bound_domination(); break;
      case 7: res = check_sublinearity(); break;
      case 8: res = check_event_frequency(); break;
      case 9: res = check_ingestion_golden(workdir); break;
      case 10: res = check_dataset_smoke(workdir); break;
      default: throw std::invalid_argument("unknown criterion");
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace rotband
