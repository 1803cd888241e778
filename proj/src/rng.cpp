#include "rotband/rng.hpp"

#include <cmath>

namespace rotband {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_gaussian(double sigma) {
  if (sigma == 0.0) return 0.0;
  if (has_spare_) {
    has_spare_ = false;
    return sigma * spare_;
  }
  // Box-Muller; u1 is bumped away from 0 so log() stays finite.
  double u1 = next_double();
  double u2 = next_double();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return sigma * r * std::cos(theta);
}

std::uint64_t substream_seed(std::uint64_t base, std::uint64_t id) {
  return base ^ mix64(id);
}

}  // namespace rotband
