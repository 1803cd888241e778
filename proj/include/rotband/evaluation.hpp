#pragma once

#include <optional>
#include <vector>

#include "rotband/environments.hpp"

namespace rotband {

struct TraceEntry {
  long t;
  ArmId arm;
  double mean_collected;  // true mean at the recorded pull state
  double observation;     // noisy sample delivered to the policy
};
using Trace = std::vector<TraceEntry>;

/// Sum of collected true means (pseudo-reward; noise never enters).
double total_reward(const Trace& trace);

/// Reward of the clairvoyant greedy policy over T rounds. Optimal for
/// pure rested and pure restless surfaces.
double greedy_oracle_value(const Environment& env, long T);

/// Greedy trace (for regret trajectories and diagnostics).
Trace greedy_oracle_trace(const Environment& env, long T);

struct OptimalResult {
  double value;
  std::vector<ArmId> pulls;  // one optimal pull sequence
};

/// Exact maximum of total_reward over all deterministic pull sequences,
/// by depth-first search memoized on the pull-count vector (the round
/// is determined by the total pull count, so the memo is exact for any
/// surface). Throws std::length_error when K^T exceeds 10^7.
OptimalResult exhaustive_optimal(const Environment& env, long T);

enum class OracleKind { Greedy, Exhaustive };

struct RegretReport {
  std::vector<double> instantaneous;
  std::vector<double> cumulative;
  OracleKind oracle;
};

/// Regret against the chosen oracle. Greedy gives a full trajectory
/// (prefix-consistent on pure settings); the exhaustive oracle reports
/// the exact final value spread as a flat correction on the last round.
/// Requesting the greedy oracle on a General surface throws.
RegretReport regret_trajectory(const Trace& trace, const Environment& env,
                               OracleKind oracle);

struct EventReport {
  std::vector<bool> event_holds;  // favorable event per round, t = 1..T
  long event_rounds = 0;
  long lemma1_violations = 0;  // on event rounds only
};

/// White-box diagnostic. Per round t, the favorable event holds iff
/// every arm's trailing-window empirical mean is within c(h, delta_t)
/// of the matching trailing mean of true means, over all windows
/// (exact mode) or grid windows only (eff mode with ratio m). On
/// rounds where the event holds and t > K, the pulled arm must satisfy
/// trailing-mean(h) >= max available mean - slack * c(h, delta_t) for
/// all h; slack is 2 for RAW-UCB and 4 for FEWA.
EventReport favorable_event_check(const Trace& trace, const Environment& env,
                                  double alpha, double sigma,
                                  bool eff_mode = false, double slack = 2.0,
                                  double m = 2.0);

enum class BoundKind {
  VariationMinimaxUpper,   // 4 (C^2 sigma^2 V K T^2 log T)^{1/3}
  PiecewiseMinimaxUpper,   // C sigma sqrt(log T)(sqrt(Ups K T) + Ups K) + 6KV
  PiecewiseGapUpper,       // sum_{k,i} C^2 sigma^2 log T / gap + O-term
  RestedGapFreeUpper,      // C sigma sqrt(log T)(sqrt(KT) + K) + 6KL
  RestedGapUpper,          // sum_i C^2 sigma^2 log T / pseudo-gap + ...
  VariationLower,          // (1/(16 sqrt 2)) (sigma^2 V K T^2)^{1/3}
  PiecewiseLower,          // (sigma/32) sqrt(Ups K T)
};

struct BoundParams {
  long T = 0;
  int K = 0;
  double sigma = 1.0;
  double c_policy = 0.0;  // C_pi; ignored by the lower bounds
  double V = 0.0;         // variation budget / bound on means / decay L
  long upsilon = 1;
  std::vector<double> gaps;  // per (batch, arm) or pseudo-gaps, zeros skipped
};

/// Direct evaluation of the named regret-bound formula. Throws
/// std::invalid_argument when a required parameter is missing.
double theoretical_bound(BoundKind kind, const BoundParams& params);

}  // namespace rotband
