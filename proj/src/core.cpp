#include "rotband/core.hpp"

namespace rotband {

namespace {
constexpr double kTol = 1e-12;
}

std::vector<SurfaceViolation> validate_mean_surface(const MeanSurface& surface,
                                                    long T, long grid_pulls) {
  std::vector<SurfaceViolation> out;
  for (ArmId i = 0; i < surface.num_arms(); ++i) {
    for (long t = 1; t < T; ++t) {
      for (long n = 0; n < grid_pulls; ++n) {
        const double here = surface.mean(i, t, n);
        const double next_t = surface.mean(i, t + 1, n);
        if (next_t > here + kTol) out.push_back({i, t, n, next_t - here});
        const double next_n = surface.mean(i, t, n + 1);
        if (next_n > here + kTol) out.push_back({i, t, n, next_n - here});
      }
    }
  }
  return out;
}

}  // namespace rotband
