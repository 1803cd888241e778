#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "rotband/core.hpp"
#include "rotband/environments.hpp"
#include "rotband/rng.hpp"

using namespace rotband;

TEST_CASE("surface validation finds exactly the violations") {
  MeanSurface flat;
  flat.kind = SurfaceKind::Restless;
  flat.horizon = 10;
  flat.arms = {[](long, long) { return 0.0; }};
  CHECK(validate_mean_surface(flat, 10, 3).empty());

  MeanSurface rested;
  rested.kind = SurfaceKind::Rested;
  rested.horizon = 3;
  rested.arms = {[](long, long n) { return n < 2 ? 1.0 : 0.0; }};
  CHECK(validate_mean_surface(rested, 3, 3).empty());

  MeanSurface rising;
  rising.kind = SurfaceKind::Restless;
  rising.horizon = 2;
  rising.arms = {[](long t, long) { return t == 1 ? -0.1 : 0.0; }};
  const auto v = validate_mean_surface(rising, 2, 1);
  REQUIRE(v.size() == 1);
  CHECK(v[0].arm == 0);
  CHECK(v[0].t == 1);
}

TEST_CASE("paired hard instances have the stated shapes") {
  auto [mu0, mu1] = make_prop1_pair(8);
  CHECK(mu0.surface.kind == SurfaceKind::General);
  CHECK(mu0.surface.mean(0, 1, 0) == 1.0);
  CHECK(mu0.surface.mean(0, 1, 3) == 1.0);
  CHECK(mu0.surface.mean(0, 1, 4) == 0.0);
  CHECK(mu0.surface.mean(1, 4, 0) == 0.5);
  CHECK(mu0.surface.mean(1, 5, 0) == 0.0);
  CHECK(mu1.surface.mean(0, 7, 6) == 1.0);
  CHECK(mu1.surface.mean(1, 4, 0) == 0.5);
}

TEST_CASE("rested two-arm benchmark") {
  const Environment env = make_rested_two_arm(1.0, 3, 12, 1.0);
  CHECK(env.surface.mean(0, 5, 2) == 0.0);
  CHECK(env.surface.mean(1, 5, 2) == 0.5);
  CHECK(env.surface.mean(1, 5, 3) == -0.5);
  CHECK(env.declared_range[0] == -0.5);
  CHECK(env.declared_range[1] == 0.5);
}

TEST_CASE("lower-bound instance geometry") {
  CHECK(lb_instance_gap(2, 2, 100, 1.0) ==
        doctest::Approx(0.035355339059327376).epsilon(1e-15));
  const double gap = lb_instance_gap(3, 4, 10, 1.0);
  const Environment env =
      make_piecewise_lb_instance(3, 4, 10, 1.0, {0, 1, 2, 0});
  // Batch lengths 3, 3, 2, 2: batch k pays -k*gap on its best arm and
  // -(k+1)*gap elsewhere.
  CHECK(env.surface.mean(0, 1, 0) == doctest::Approx(0.0));
  CHECK(env.surface.mean(1, 1, 0) == doctest::Approx(-gap));
  CHECK(env.surface.mean(1, 4, 0) == doctest::Approx(-gap));
  CHECK(env.surface.mean(0, 4, 0) == doctest::Approx(-2 * gap));
  CHECK(env.surface.mean(2, 7, 0) == doctest::Approx(-2 * gap));
  CHECK(env.surface.mean(0, 9, 0) == doctest::Approx(-3 * gap));
  CHECK(validate_mean_surface(env.surface, 10, 1).empty());
  CHECK_THROWS_AS(make_piecewise_lb_instance(3, 4, 10, 1.0, {0}),
                  std::invalid_argument);
  // All-equal batches via the -1 sentinel.
  const Environment flat = make_piecewise_lb_instance(2, 2, 10, 1.0, {-1, -1});
  CHECK(flat.surface.mean(0, 1, 0) == flat.surface.mean(1, 1, 0));
}

TEST_CASE("variation budget") {
  PiecewiseSpec flat;
  flat.levels = {{0.3, 0.1}};
  CHECK(variation_budget(make_piecewise_env(flat, 5, 0.0), 5) ==
        doctest::Approx(0.0));

  PiecewiseSpec one_drop;
  one_drop.breakpoints = {3};
  one_drop.levels = {{0.5}, {-0.25}};
  CHECK(variation_budget(make_piecewise_env(one_drop, 6, 0.0), 6) ==
        doctest::Approx(0.75));

  // Arm A means (0, 0, -0.3); arm B means (-0.1, -0.2, -0.2):
  // sup-drops per step are 0.1 and 0.3.
  PiecewiseSpec two;
  two.breakpoints = {1, 2};
  two.levels = {{0.0, -0.1}, {0.0, -0.2}, {-0.3, -0.2}};
  CHECK(variation_budget(make_piecewise_env(two, 3, 0.0), 3) ==
        doctest::Approx(0.4));

  const Environment rested = make_rested_two_arm(1.0, 2, 5, 0.0);
  CHECK_THROWS_AS(variation_budget(rested, 5), std::logic_error);
}

TEST_CASE("dataset environments") {
  std::vector<DatasetRow> table = {{0, 2, 0.3, 30}, {0, 5, 0.6, 30}};
  const Environment env = dataset_env_from_table(table, 10);
  CHECK(env.T == 3);
  CHECK(env.K == 2);
  // Arm index is the rank of the arm id: id 2 -> 0, id 5 -> 1.
  CHECK(env.surface.mean(0, 2, 0) == doctest::Approx(0.3));
  CHECK(env.surface.mean(1, 2, 0) == doctest::Approx(0.6));
  CHECK(env.noise.kind == NoiseModel::Kind::BernoulliBatch);

  std::vector<DatasetRow> missing = {{0, 0, 0.3, 30}, {1, 1, 0.2, 30}};
  CHECK_THROWS_AS(dataset_env_from_table(missing, 10), std::invalid_argument);
  std::vector<DatasetRow> bad_mean = {{0, 0, 1.5, 30}};
  CHECK_THROWS_AS(dataset_env_from_table(bad_mean, 10), std::invalid_argument);
}

TEST_CASE("stepping draws noise and advances pull counts") {
  const Environment env = make_rested_two_arm(1.0, 2, 4, 0.0);
  std::vector<long> pulls(2, 0);
  Rng rng(5);
  const Observation o = step(env, 1, 1, pulls, rng);
  CHECK(o.value == doctest::Approx(0.5));
  CHECK(pulls[1] == 1);
  CHECK_THROWS_AS(step(env, 0, 5, pulls, rng), std::out_of_range);
}

TEST_CASE("bernoulli batch noise is the shifted batch mean") {
  PiecewiseSpec spec;
  spec.levels = {{1.0}};
  Environment env = make_piecewise_env(spec, 3, 0.0);
  env.noise = NoiseModel::bernoulli_batch(10);
  Rng rng(3);
  // p = 1 after shifting: every draw hits, so the noise term vanishes.
  CHECK(sample_noise(env, 1.0, rng) == doctest::Approx(0.0));
}
