#include <cmath>
#include <vector>

#include "doctest.h"
#include "rotband/rng.hpp"
#include "rotband/window_stats.hpp"

using namespace rotband;

TEST_CASE("trailing means over small streams") {
  ArmStats s;
  s.push(0.5);
  CHECK(s.window_mean(1) == doctest::Approx(0.5));
  ArmStats t;
  t.push(1.0);
  t.push(0.0);
  CHECK(t.window_mean(1) == doctest::Approx(0.0));
  CHECK(t.window_mean(2) == doctest::Approx(0.5));
  ArmStats u;
  u.push(2);
  u.push(4);
  CHECK(u.window_mean(2) == doctest::Approx(3.0));
  ArmStats v;
  v.push(1);
  v.push(2);
  v.push(3);
  CHECK(v.window_mean(2) == doctest::Approx(2.5));
}

TEST_CASE("constant stream stays exact over 1000 pushes") {
  ArmStats s;
  for (int i = 0; i < 1000; ++i) s.push(1.0);
  for (long h : {1L, 7L, 500L, 1000L}) {
    CHECK(s.window_mean(h) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("window_mean rejects out-of-range windows") {
  ArmStats s;
  s.push(1.0);
  CHECK_THROWS_AS(s.window_mean(0), std::out_of_range);
  CHECK_THROWS_AS(s.window_mean(2), std::out_of_range);
}

TEST_CASE("grid window sets") {
  CHECK(grid_windows(2.0, 8) == std::vector<long>{1, 2, 4, 8, 16});
  CHECK(grid_windows(1.5, 8) == std::vector<long>{1, 2, 3, 5, 8, 12});
  CHECK(grid_windows(1.0, 5, true) == std::vector<long>{1, 2, 3, 4, 5});
}

TEST_CASE("eff update traces by hand, m = 2") {
  EffArmStats e(2.0);
  e.push(1.0);
  e.push(0.0);
  CHECK(e.mu_eff(1) == doctest::Approx(0.0));
  CHECK(e.mu_eff(2) == doctest::Approx(0.5));
  CHECK_FALSE(e.mu_eff(4).has_value());
  const auto& tr = e.triplets();
  REQUIRE(tr.size() == 3);
  CHECK(tr[1].pending_sum == doctest::Approx(0.0));
  CHECK(tr[1].pending_count == 1);

  EffArmStats f(2.0);
  for (double v : {4.0, 3.0, 2.0, 1.0}) f.push(v);
  CHECK(f.mu_eff(1) == doctest::Approx(1.0));
  CHECK(f.mu_eff(2) == doctest::Approx(1.5));
  CHECK(f.mu_eff(4) == doctest::Approx(2.5));
}

TEST_CASE("window 2 refreshes every pull from pull 2 on") {
  EffArmStats e(2.0);
  ArmStats exact;
  Rng rng(123);
  for (int i = 0; i < 50; ++i) {
    const double v = rng.next_gaussian(1.0);
    e.push(v);
    exact.push(v);
    if (i >= 1) {
      CHECK(*e.mu_eff(2) == doctest::Approx(exact.window_mean(2)));
    }
  }
}

TEST_CASE("fresh and single-pull defined window sets") {
  EffArmStats e(2.0);
  CHECK(e.defined_windows().empty());
  e.push(0.7);
  const auto w = e.defined_windows();
  REQUIRE(w.size() == 1);
  CHECK(w[0].first == 1);
  CHECK(w[0].second == doctest::Approx(0.7));
}

TEST_CASE("constant stream defines every power-of-two window") {
  EffArmStats e(2.0);
  for (int i = 0; i < 16; ++i) e.push(3.0);
  for (long h : {1L, 2L, 4L, 8L, 16L}) {
    REQUIRE(e.mu_eff(h).has_value());
    CHECK(*e.mu_eff(h) == doctest::Approx(3.0));
  }
}

TEST_CASE("dense mode equals full-history statistics") {
  EffArmStats e = EffArmStats::dense();
  ArmStats exact;
  Rng rng(77);
  for (int i = 0; i < 100; ++i) {
    const double v = rng.next_gaussian(1.0);
    e.push(v);
    exact.push(v);
  }
  for (long h = 1; h <= 100; ++h) {
    CHECK(*e.mu_eff(h) == doctest::Approx(exact.window_mean(h)));
  }
}

TEST_CASE("triplet count stays within 2 + log2(N)") {
  EffArmStats e(2.0);
  for (int i = 0; i < 512; ++i) {
    e.push(1.0);
    const double limit = 2.0 + std::log2(static_cast<double>(e.count()));
    CHECK(static_cast<double>(e.triplets().size()) <= limit + 1e-9);
  }
}

TEST_CASE("grid ratio must exceed one") {
  CHECK_THROWS_AS(EffArmStats(1.0), std::invalid_argument);
}

// Prop. 4 property 1 by exhaustive block search: every defined
// statistic is the mean of h consecutive samples whose newest element
// is among the last h and oldest among the last 2h - 1.
TEST_CASE("defined statistics are recent contiguous block means") {
  Rng rng(2024);
  for (int stream = 0; stream < 50; ++stream) {
    const long len = 1 + static_cast<long>(rng.next_u64() % 256);
    EffArmStats e(2.0);
    std::vector<double> prefix{0.0};
    for (long i = 0; i < len; ++i) {
      const double v = rng.next_gaussian(1.0);
      e.push(v);
      prefix.push_back(prefix.back() + v);
    }
    const long n = len;
    for (const auto& [h, mu] : e.defined_windows()) {
      bool found = false;
      for (long end = std::max(h, n - h + 1); end <= n && !found; ++end) {
        const double block = (prefix[end] - prefix[end - h]) / h;
        if (std::abs(block - mu) < 1e-9) found = true;
      }
      CHECK(found);
    }
  }
}
