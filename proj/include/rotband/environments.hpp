#pragma once

#include <array>
#include <utility>
#include <vector>

#include "rotband/core.hpp"
#include "rotband/rng.hpp"

namespace rotband {

/// A bandit problem instance: mean surface, noise, and the declared
/// range [lo, hi] bounding every mean (used for Exp3.S rescaling and
/// Bernoulli shifting).
struct Environment {
  MeanSurface surface;
  NoiseModel noise;
  int K = 0;
  long T = 0;
  std::array<double, 2> declared_range{0.0, 0.0};
};

/// Piecewise-stationary restless specification: breakpoints are the
/// last rounds of each batch but the final one; levels[k][i] is arm
/// i's mean during batch k.
struct PiecewiseSpec {
  std::vector<long> breakpoints;
  std::vector<std::vector<double>> levels;
};

/// Restless environment from an explicit piecewise table.
Environment make_piecewise_env(const PiecewiseSpec& spec, long T, double sigma);

/// Draws one observation: the true mean at (t, prior pulls) plus noise,
/// and increments the arm's pull count. Throws std::out_of_range for
/// t > T.
Observation step(const Environment& env, ArmId arm, long t,
                 std::vector<long>& pulls, Rng& rng);

/// Noise draw for a given mean, shared by step() and the paired
/// per-(arm, pull) samplers in the harness.
double sample_noise(const Environment& env, double mean, Rng& rng);

/// Two-arm rested benchmark: arm 0 constant 0, arm 1 pays +L/2 for its
/// first break_pull pulls and -L/2 afterwards; Gaussian noise sigma.
Environment make_rested_two_arm(double L, long break_pull, long T, double sigma);

/// The paired noiseless instances showing greedy is linearly suboptimal
/// when rested and restless decays mix. First: arm 0 rested (1 for its
/// first floor(T/2) pulls, then 0), arm 1 restless (1/2 until round
/// floor(T/2), then 0). Second: arm 0 constant 1, arm 1 as before.
std::pair<Environment, Environment> make_prop1_pair(long T);

/// Piecewise lower-bound family: Upsilon batches with lengths
/// ceil(T/Ups) for the first T mod Ups batches and floor(T/Ups) after;
/// gap Delta = (1/4) sqrt(sigma^2 K Ups / (2T)). In batch k the
/// designated best arm pays -k Delta and the rest -(k+1) Delta;
/// i_star[k] == -1 makes all arms equal at -(k+1) Delta.
Environment make_piecewise_lb_instance(int K, int upsilon, long T, double sigma,
                                       const std::vector<int>& i_star);

/// The gap used by make_piecewise_lb_instance.
double lb_instance_gap(int K, int upsilon, long T, double sigma);

/// Total variation sum_{t<T} sup_i (mu_i(t) - mu_i(t+1)). Throws
/// std::logic_error on rested surfaces.
double variation_budget(const Environment& env, long T);

/// One cell of a dataset-driven environment table.
struct DatasetRow {
  long bucket;
  int arm;
  double mean;
  long traffic;
};

/// Restless environment from a (bucket, arm, mean, traffic) table:
/// bucket b spans ceil(traffic_b / samples_per_round) rounds, noise is
/// BernoulliBatch(samples_per_round). Means must lie in [0, 1]; every
/// arm must appear in every bucket (std::invalid_argument otherwise).
/// No monotonicity is enforced.
Environment dataset_env_from_table(const std::vector<DatasetRow>& table,
                                   int samples_per_round);

}  // namespace rotband
