#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rotband {

/// Arm index in [0, K).
using ArmId = int;

enum class SurfaceKind { Rested, Restless, General };

/// Per-arm reward-mean function mu_i(t, n): t is the 1-indexed round,
/// n the number of prior pulls of the arm. Rested surfaces ignore t,
/// restless surfaces ignore n. Means must be non-increasing in both
/// arguments (checked by validate_mean_surface, not enforced here).
struct MeanSurface {
  SurfaceKind kind = SurfaceKind::General;
  std::vector<std::function<double(long, long)>> arms;
  long horizon = 0;

  int num_arms() const { return static_cast<int>(arms.size()); }
  double mean(ArmId i, long t, long n) const { return arms[i](t, n); }
};

struct Observation {
  long round;
  ArmId arm;
  double value;
};

/// Noise attached to an environment. Gaussian(0) is noiseless.
/// BernoulliBatch delivers the mean of samples_per_round Bernoulli
/// draws as a single observation; means outside [0, 1] are shifted
/// into range by the sampler and shifted back.
struct NoiseModel {
  enum class Kind { Gaussian, BernoulliBatch };
  Kind kind = Kind::Gaussian;
  double sigma = 0.0;
  int samples_per_round = 1;

  static NoiseModel gaussian(double sigma) {
    return {Kind::Gaussian, sigma, 1};
  }
  static NoiseModel bernoulli_batch(int samples_per_round) {
    return {Kind::BernoulliBatch, 0.0, samples_per_round};
  }
};

/// One monotonicity defect found by validate_mean_surface.
struct SurfaceViolation {
  ArmId arm;
  long t;
  long n;
  double delta;  // positive amount by which the mean increased
};

/// Probes every (t, n) with t < T and n < grid_pulls and reports each
/// point where the surface increases in t or in n beyond 1e-12.
/// An empty result means the non-increasing assumption holds on the grid.
std::vector<SurfaceViolation> validate_mean_surface(const MeanSurface& surface,
                                                    long T, long grid_pulls);

}  // namespace rotband
