#include "rotband/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "rotband/policies.hpp"

namespace rotband {

double total_reward(const Trace& trace) {
  double sum = 0.0;
  for (const TraceEntry& e : trace) sum += e.mean_collected;
  return sum;
}

Trace greedy_oracle_trace(const Environment& env, long T) {
  Trace trace;
  trace.reserve(T);
  std::vector<long> pulls(env.K, 0);
  for (long t = 1; t <= T; ++t) {
    const ArmId arm = greedy_oracle_choose(env.surface, pulls, t);
    const double mean = env.surface.mean(arm, t, pulls[arm]);
    ++pulls[arm];
    trace.push_back({t, arm, mean, mean});
  }
  return trace;
}

double greedy_oracle_value(const Environment& env, long T) {
  return total_reward(greedy_oracle_trace(env, T));
}

namespace {

// Pull-count vectors packed into one key; valid while every count and
// K stay within the encoding budget enforced by exhaustive_optimal.
std::uint64_t pack_counts(const std::vector<long>& counts) {
  std::uint64_t key = 0;
  for (long c : counts) key = (key << 16) | static_cast<std::uint64_t>(c);
  return key;
}

struct ExhaustiveSolver {
  const Environment& env;
  long T;
  std::unordered_map<std::uint64_t, double> memo;

  double value(long t, std::vector<long>& counts) {
    if (t > T) return 0.0;
    const std::uint64_t key = pack_counts(counts);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    double best = -std::numeric_limits<double>::infinity();
    for (ArmId i = 0; i < env.K; ++i) {
      const double mu = env.surface.mean(i, t, counts[i]);
      ++counts[i];
      best = std::max(best, mu + value(t + 1, counts));
      --counts[i];
    }
    memo[key] = best;
    return best;
  }
};

}  // namespace

OptimalResult exhaustive_optimal(const Environment& env, long T) {
  if (T * std::log(static_cast<double>(env.K)) > std::log(1e7)) {
    throw std::length_error("exhaustive_optimal: K^T budget exceeded");
  }
  if (env.K > 4 || T >= (1L << 16)) {
    throw std::length_error("exhaustive_optimal: state encoding budget exceeded");
  }
  ExhaustiveSolver solver{env, T, {}};
  std::vector<long> counts(env.K, 0);
  const double best = solver.value(1, counts);

  // Re-walk the memo to extract one optimal sequence.
  std::vector<ArmId> seq;
  seq.reserve(T);
  for (long t = 1; t <= T; ++t) {
    ArmId pick = 0;
    double pick_value = -std::numeric_limits<double>::infinity();
    for (ArmId i = 0; i < env.K; ++i) {
      const double mu = env.surface.mean(i, t, counts[i]);
      ++counts[i];
      const double v = mu + solver.value(t + 1, counts);
      --counts[i];
      if (v > pick_value) {
        pick_value = v;
        pick = i;
      }
    }
    seq.push_back(pick);
    ++counts[pick];
  }
  return {best, std::move(seq)};
}

RegretReport regret_trajectory(const Trace& trace, const Environment& env,
                               OracleKind oracle) {
  const long T = static_cast<long>(trace.size());
  RegretReport report;
  report.oracle = oracle;
  report.instantaneous.assign(T, 0.0);
  report.cumulative.assign(T, 0.0);
  if (oracle == OracleKind::Greedy) {
    if (env.surface.kind == SurfaceKind::General) {
      throw std::logic_error(
          "greedy oracle is not exact on mixed rested/restless surfaces");
    }
    const Trace oracle_trace = greedy_oracle_trace(env, T);
    double cum = 0.0;
    for (long t = 0; t < T; ++t) {
      const double inst =
          oracle_trace[t].mean_collected - trace[t].mean_collected;
      cum += inst;
      report.instantaneous[t] = inst;
      report.cumulative[t] = cum;
    }
  } else {
    // Prefix-optimal policies differ per horizon on General surfaces,
    // so only the final value is meaningful; it lands on the last round.
    const double final_regret =
        exhaustive_optimal(env, T).value - total_reward(trace);
    if (T > 0) {
      report.instantaneous[T - 1] = final_regret;
      report.cumulative[T - 1] = final_regret;
    }
  }
  return report;
}

EventReport favorable_event_check(const Trace& trace, const Environment& env,
                                  double alpha, double sigma, bool eff_mode,
                                  double slack, double m) {
  const long T = static_cast<long>(trace.size());
  const int K = env.K;
  // Per-arm prefix sums of observations and of true means, in pull order.
  std::vector<std::vector<double>> obs_prefix(K, {0.0});
  std::vector<std::vector<double>> mean_prefix(K, {0.0});
  std::vector<long> counts(K, 0);
  EventReport report;
  report.event_holds.assign(T, false);
  constexpr double kNumTol = 1e-9;

  for (long ti = 0; ti < T; ++ti) {
    const long t = ti + 1;
    const double delta = delta_t(t, alpha);
    const double base = sigma * std::sqrt(2.0 * std::log(2.0 / delta));

    // Favorable event over the pre-pull state.
    bool holds = true;
    for (ArmId i = 0; i < K && holds; ++i) {
      const long n = counts[i];
      const auto& op = obs_prefix[i];
      const auto& mp = mean_prefix[i];
      if (eff_mode) {
        for (long h : grid_windows(m, n)) {
          if (h > n) break;
          const double emp = (op[n] - op[n - h]) / h;
          const double truth = (mp[n] - mp[n - h]) / h;
          if (std::abs(emp - truth) > base / std::sqrt(double(h)) + kNumTol) {
            holds = false;
            break;
          }
        }
      } else {
        for (long h = 1; h <= n; ++h) {
          const double emp = (op[n] - op[n - h]) / h;
          const double truth = (mp[n] - mp[n - h]) / h;
          if (std::abs(emp - truth) > base / std::sqrt(double(h)) + kNumTol) {
            holds = false;
            break;
          }
        }
      }
    }
    report.event_holds[ti] = holds;
    if (holds) ++report.event_rounds;

    const TraceEntry& e = trace[ti];
    if (holds && t > K) {
      double best_avail = -std::numeric_limits<double>::infinity();
      for (ArmId i = 0; i < K; ++i) {
        best_avail = std::max(best_avail, env.surface.mean(i, t, counts[i]));
      }
      const ArmId it = e.arm;
      const long n = counts[it];
      const auto& mp = mean_prefix[it];
      bool violated = false;
      auto check = [&](long h) {
        const double trailing = (mp[n] - mp[n - h]) / h;
        if (trailing <
            best_avail - slack * base / std::sqrt(double(h)) - kNumTol) {
          violated = true;
        }
      };
      if (eff_mode) {
        for (long h : grid_windows(m, n)) {
          if (h > n) break;
          check(h);
        }
      } else {
        for (long h = 1; h <= n && !violated; ++h) check(h);
      }
      if (violated) ++report.lemma1_violations;
    }

    // Fold the round's pull into the per-arm state.
    obs_prefix[e.arm].push_back(obs_prefix[e.arm].back() + e.observation);
    mean_prefix[e.arm].push_back(mean_prefix[e.arm].back() + e.mean_collected);
    ++counts[e.arm];
  }
  return report;
}

double theoretical_bound(BoundKind kind, const BoundParams& p) {
  if (p.T < 1 || p.K < 1) throw std::invalid_argument("T and K are required");
  const double T = static_cast<double>(p.T);
  const double K = static_cast<double>(p.K);
  const double logT = std::log(T);
  const double C = p.c_policy;
  const double s = p.sigma;
  auto need_c = [&] {
    if (C <= 0.0) throw std::invalid_argument("policy constant C is required");
  };
  switch (kind) {
    case BoundKind::VariationMinimaxUpper:
      need_c();
      return 4.0 * std::cbrt(C * C * s * s * p.V * K * T * T * logT);
    case BoundKind::PiecewiseMinimaxUpper: {
      need_c();
      const double U = static_cast<double>(p.upsilon);
      return C * s * std::sqrt(logT) * (std::sqrt(U * K * T) + U * K) +
             6.0 * K * p.V;
    }
    case BoundKind::PiecewiseGapUpper: {
      need_c();
      if (p.gaps.empty()) throw std::invalid_argument("gaps are required");
      double sum = 0.0;
      for (double gap : p.gaps) {
        if (gap > 0.0) sum += C * C * s * s * logT / gap;
      }
      return sum + s * p.upsilon * K * std::sqrt(logT);
    }
    case BoundKind::RestedGapFreeUpper:
      need_c();
      return C * s * std::sqrt(logT) * (std::sqrt(K * T) + K) + 6.0 * K * p.V;
    case BoundKind::RestedGapUpper: {
      need_c();
      if (p.gaps.empty()) throw std::invalid_argument("pseudo-gaps are required");
      double sum = 0.0;
      for (double gap : p.gaps) {
        if (gap > 0.0) sum += C * C * s * s * logT / gap;
        sum += C * s * std::sqrt(logT) + 6.0 * p.V;
      }
      return sum;
    }
    case BoundKind::VariationLower:
      return std::cbrt(s * s * p.V * K * T * T) / (16.0 * std::sqrt(2.0));
    case BoundKind::PiecewiseLower:
      return s / 32.0 * std::sqrt(static_cast<double>(p.upsilon) * K * T);
  }
  throw std::invalid_argument("unknown bound kind");
}

}  // namespace rotband
