#include <cmath>

#include "doctest.h"
#include "rotband/environments.hpp"
#include "rotband/evaluation.hpp"
#include "rotband/policies.hpp"
#include "rotband/rng.hpp"

using namespace rotband;

TEST_CASE("exhaustive oracle on the paired hard instances, T = 8") {
  auto [mu0, mu1] = make_prop1_pair(8);
  const OptimalResult opt0 = exhaustive_optimal(mu0, 8);
  CHECK(opt0.value == doctest::Approx(6.0));
  CHECK(greedy_oracle_value(mu0, 8) == doctest::Approx(4.0));
  CHECK(exhaustive_optimal(mu1, 8).value == doctest::Approx(8.0));
  CHECK(greedy_oracle_value(mu1, 8) == doctest::Approx(8.0));
}

TEST_CASE("greedy matches the exhaustive oracle on a pure rested problem") {
  const Environment env = make_rested_two_arm(1.0, 2, 6, 0.0);
  CHECK(greedy_oracle_value(env, 6) ==
        doctest::Approx(exhaustive_optimal(env, 6).value));
}

TEST_CASE("exhaustive oracle refuses oversized searches") {
  PiecewiseSpec spec;
  spec.levels = {{0.1, 0.2, 0.3, 0.4}};
  const Environment env = make_piecewise_env(spec, 100, 0.0);
  CHECK_THROWS_AS(exhaustive_optimal(env, 100), std::length_error);
}

TEST_CASE("regret trajectories") {
  const Environment env = make_rested_two_arm(1.0, 2, 6, 0.0);
  const Trace oracle = greedy_oracle_trace(env, 6);
  const RegretReport vs_self = regret_trajectory(oracle, env, OracleKind::Greedy);
  for (double r : vs_self.cumulative) CHECK(r == doctest::Approx(0.0));

  auto [mu0, mu1] = make_prop1_pair(8);
  const Trace greedy0 = greedy_oracle_trace(mu0, 8);
  const RegretReport vs_opt =
      regret_trajectory(greedy0, mu0, OracleKind::Exhaustive);
  CHECK(vs_opt.cumulative.back() == doctest::Approx(2.0));
  CHECK_THROWS_AS(regret_trajectory(greedy0, mu0, OracleKind::Greedy),
                  std::logic_error);
}

TEST_CASE("favorable event and chosen-arm quality, noiseless run") {
  const long T = 60;
  const Environment env = make_rested_two_arm(1.0, 10, T, 0.0);
  PolicyConfig cfg;
  cfg.sigma = 0.0;
  RawUcbPolicy policy(2, cfg);
  std::vector<long> pulls(2, 0);
  Trace trace;
  for (long t = 1; t <= T; ++t) {
    const ArmId arm = policy.choose(t);
    const double mean = env.surface.mean(arm, t, pulls[arm]);
    ++pulls[arm];
    policy.observe(arm, mean);
    trace.push_back({t, arm, mean, mean});
  }
  const EventReport rep = favorable_event_check(trace, env, 4.0, 0.0);
  CHECK(rep.event_rounds == T);
  CHECK(rep.lemma1_violations == 0);
}

TEST_CASE("bound formulas at frozen reference points") {
  BoundParams p;
  p.T = 10000;
  p.K = 2;
  p.sigma = 1.0;
  p.c_policy = policy_constant(PolicyKind::RawUcb, 4.0);
  p.V = 1.0;
  p.upsilon = 1;
  CHECK(theoretical_bound(BoundKind::PiecewiseMinimaxUpper, p) ==
        doctest::Approx(2474.2188634368645).epsilon(1e-14));

  BoundParams lower;
  lower.T = 10000;
  lower.K = 3;
  lower.sigma = 1.0;
  lower.upsilon = 4;
  CHECK(theoretical_bound(BoundKind::PiecewiseLower, lower) ==
        doctest::Approx(10.825317547305483).epsilon(1e-14));

  // log T = 0 at T = 1 collapses each upper bound to its additive term.
  BoundParams unit = p;
  unit.T = 1;
  CHECK(theoretical_bound(BoundKind::PiecewiseMinimaxUpper, unit) ==
        doctest::Approx(6.0 * unit.K * unit.V));
  CHECK(theoretical_bound(BoundKind::VariationMinimaxUpper, unit) ==
        doctest::Approx(0.0));

  BoundParams gapless = p;
  gapless.gaps = {};
  CHECK_THROWS_AS(theoretical_bound(BoundKind::PiecewiseGapUpper, gapless),
                  std::invalid_argument);
  BoundParams no_c;
  no_c.T = 10;
  no_c.K = 2;
  CHECK_THROWS_AS(theoretical_bound(BoundKind::RestedGapFreeUpper, no_c),
                  std::invalid_argument);
}

TEST_CASE("gap-dependent sums skip zero gaps") {
  BoundParams p;
  p.T = 100;
  p.K = 2;
  p.sigma = 1.0;
  p.c_policy = 2.0;
  p.upsilon = 1;
  p.gaps = {0.0, 0.5};
  const double logT = std::log(100.0);
  const double want = 4.0 * logT / 0.5 + 1.0 * 1.0 * 2.0 * std::sqrt(logT);
  CHECK(theoretical_bound(BoundKind::PiecewiseGapUpper, p) ==
        doctest::Approx(want));
}
