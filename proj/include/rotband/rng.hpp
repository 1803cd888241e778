#pragma once

#include <cstdint>

namespace rotband {

/// Stateless 64-bit mixer (SplitMix64 finalizer, Steele et al. 2014).
/// Used both as the generator step and for deriving sub-stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic random stream.
///
/// The generator is SplitMix64: state advances by the golden-gamma
/// constant and each output is the mix64 finalizer of the new state.
/// Uniform doubles take the top 53 bits; Gaussians use Box-Muller on
/// two uniforms. No libm distribution objects are involved, so the
/// stream is bit-reproducible across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53 bits of precision.
  double next_double();

  /// N(0, sigma^2). sigma == 0 returns exactly 0.
  double next_gaussian(double sigma);

  /// Bernoulli(p).
  bool next_bernoulli(double p) { return next_double() < p; }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Sub-stream seed for replication/arm/pull ids: seed XOR mix64(id).
/// Chaining the call derives nested streams, e.g.
/// substream(substream(base, rep), arm).
std::uint64_t substream_seed(std::uint64_t base, std::uint64_t id);

}  // namespace rotband
