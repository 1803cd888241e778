#include <cmath>
#include <set>

#include "doctest.h"
#include "rotband/rng.hpp"

using namespace rotband;

TEST_CASE("identical seeds give identical streams") {
  Rng a(0), b(0);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds give different streams") {
  Rng a(0), b(1);
  bool differ = false;
  for (int i = 0; i < 10; ++i) differ = differ || a.next_u64() != b.next_u64();
  CHECK(differ);
}

TEST_CASE("uniform doubles live in [0, 1)") {
  Rng rng(42);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("substream seeds collide nowhere over 1e5 ids") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < 100000; ++r) {
    seen.insert(substream_seed(0xABCDEF, r));
  }
  CHECK(seen.size() == 100000);
}

TEST_CASE("gaussian moments are roughly right") {
  Rng rng(7);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.next_gaussian(1.0);
    sum += g;
    sq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("sigma zero gaussians are exactly zero") {
  Rng rng(9);
  for (int i = 0; i < 10; ++i) CHECK(rng.next_gaussian(0.0) == 0.0);
}

TEST_CASE("bernoulli frequency tracks p") {
  Rng rng(11);
  long hits = 0;
  for (int i = 0; i < 100000; ++i) hits += rng.next_bernoulli(0.3) ? 1 : 0;
  CHECK(std::abs(hits / 100000.0 - 0.3) < 0.01);
}
