#include "rotband/environments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>

namespace rotband {

Environment make_piecewise_env(const PiecewiseSpec& spec, long T, double sigma) {
  const int K = static_cast<int>(spec.levels.empty() ? 0 : spec.levels[0].size());
  auto breakpoints = std::make_shared<std::vector<long>>(spec.breakpoints);
  auto levels = std::make_shared<std::vector<std::vector<double>>>(spec.levels);

  MeanSurface surface;
  surface.kind = SurfaceKind::Restless;
  surface.horizon = T;
  for (int i = 0; i < K; ++i) {
    surface.arms.push_back([breakpoints, levels, i](long t, long) {
      const auto it = std::lower_bound(breakpoints->begin(), breakpoints->end(), t);
      const std::size_t k = static_cast<std::size_t>(it - breakpoints->begin());
      return (*levels)[k][i];
    });
  }
  double lo = 0.0, hi = 0.0;
  for (const auto& batch : spec.levels) {
    for (double v : batch) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return {std::move(surface), NoiseModel::gaussian(sigma), K, T, {lo, hi}};
}

double sample_noise(const Environment& env, double mean, Rng& rng) {
  switch (env.noise.kind) {
    case NoiseModel::Kind::Gaussian:
      return rng.next_gaussian(env.noise.sigma);
    case NoiseModel::Kind::BernoulliBatch: {
      const double shift = std::max(0.0, -env.declared_range[0]);
      const double p = mean + shift;
      if (p < -1e-12 || p > 1.0 + 1e-12) {
        throw std::domain_error("bernoulli mean outside [0, 1] after shift");
      }
      long hits = 0;
      for (int s = 0; s < env.noise.samples_per_round; ++s) {
        if (rng.next_bernoulli(p)) ++hits;
      }
      // Observation = batch mean shifted back: (hits/n) - shift; the
      // noise component is that minus the true mean, i.e. hits/n - p.
      return static_cast<double>(hits) / env.noise.samples_per_round - p;
    }
  }
  throw std::logic_error("unreachable");
}

Observation step(const Environment& env, ArmId arm, long t,
                 std::vector<long>& pulls, Rng& rng) {
  if (t > env.T) throw std::out_of_range("step: round beyond horizon");
  const double mean = env.surface.mean(arm, t, pulls[arm]);
  const double value = mean + sample_noise(env, mean, rng);
  ++pulls[arm];
  return {t, arm, value};
}

Environment make_rested_two_arm(double L, long break_pull, long T,
                                double sigma) {
  MeanSurface surface;
  surface.kind = SurfaceKind::Rested;
  surface.horizon = T;
  surface.arms.push_back([](long, long) { return 0.0; });
  surface.arms.push_back([L, break_pull](long, long n) {
    return n < break_pull ? L / 2.0 : -L / 2.0;
  });
  return {std::move(surface), NoiseModel::gaussian(sigma), 2, T,
          {-L / 2.0, L / 2.0}};
}

std::pair<Environment, Environment> make_prop1_pair(long T) {
  const long half = T / 2;
  auto rested = [half](long, long n) { return n < half ? 1.0 : 0.0; };
  auto restless = [half](long t, long) { return t <= half ? 0.5 : 0.0; };
  auto constant_one = [](long, long) { return 1.0; };

  MeanSurface mu0;
  mu0.kind = SurfaceKind::General;
  mu0.horizon = T;
  mu0.arms = {rested, restless};

  MeanSurface mu1;
  mu1.kind = SurfaceKind::Restless;  // arm 0 is constant, arm 1 time-only
  mu1.horizon = T;
  mu1.arms = {constant_one, restless};

  Environment e0{std::move(mu0), NoiseModel::gaussian(0.0), 2, T, {0.0, 1.0}};
  Environment e1{std::move(mu1), NoiseModel::gaussian(0.0), 2, T, {0.0, 1.0}};
  return {std::move(e0), std::move(e1)};
}

double lb_instance_gap(int K, int upsilon, long T, double sigma) {
  return 0.25 * std::sqrt(sigma * sigma * K * upsilon / (2.0 * T));
}

Environment make_piecewise_lb_instance(int K, int upsilon, long T, double sigma,
                                       const std::vector<int>& i_star) {
  if (static_cast<int>(i_star.size()) != upsilon) {
    throw std::invalid_argument("i_star must have one entry per batch");
  }
  const double gap = lb_instance_gap(K, upsilon, T, sigma);
  const long rem = T % upsilon;
  PiecewiseSpec spec;
  long t = 0;
  for (int k = 0; k < upsilon; ++k) {
    const long tau = (k < rem) ? (T + upsilon - 1) / upsilon : T / upsilon;
    t += tau;
    if (k < upsilon - 1) spec.breakpoints.push_back(t);
    std::vector<double> batch(K, -(k + 1) * gap);
    if (i_star[k] >= 0) batch[i_star[k]] = -static_cast<double>(k) * gap;
    spec.levels.push_back(std::move(batch));
  }
  Environment env = make_piecewise_env(spec, T, sigma);
  env.declared_range = {-(upsilon + 1) * gap, 0.0};
  return env;
}

double variation_budget(const Environment& env, long T) {
  if (env.surface.kind != SurfaceKind::Restless) {
    throw std::logic_error("variation budget is defined for restless surfaces");
  }
  double total = 0.0;
  for (long t = 1; t < T; ++t) {
    double drop = 0.0;
    for (ArmId i = 0; i < env.K; ++i) {
      drop = std::max(drop, env.surface.mean(i, t, 0) -
                                env.surface.mean(i, t + 1, 0));
    }
    total += drop;
  }
  return total;
}

Environment dataset_env_from_table(const std::vector<DatasetRow>& table,
                                   int samples_per_round) {
  std::set<long> buckets;
  std::set<int> arms;
  std::map<std::pair<long, int>, DatasetRow> cells;
  for (const DatasetRow& row : table) {
    if (row.mean < 0.0 || row.mean > 1.0) {
      throw std::invalid_argument("dataset mean outside [0, 1]");
    }
    buckets.insert(row.bucket);
    arms.insert(row.arm);
    cells[{row.bucket, row.arm}] = row;
  }
  const int K = static_cast<int>(arms.size());
  for (long b : buckets) {
    for (int a : arms) {
      if (!cells.count({b, a})) {
        throw std::invalid_argument("dataset table is missing a (bucket, arm) cell");
      }
    }
  }
  // Arm index = rank of the arm id; bucket order = ascending bucket key.
  std::vector<int> arm_ids(arms.begin(), arms.end());
  auto round_means = std::make_shared<std::vector<std::vector<double>>>();
  for (long b : buckets) {
    long traffic = 0;
    std::vector<double> means(K);
    for (int a = 0; a < K; ++a) {
      const DatasetRow& row = cells.at({b, arm_ids[a]});
      means[a] = row.mean;
      traffic = row.traffic;  // traffic is per bucket; all rows agree
    }
    const long rounds =
        (traffic + samples_per_round - 1) / samples_per_round;
    for (long r = 0; r < std::max(rounds, 1L); ++r) {
      round_means->push_back(means);
    }
  }
  const long T = static_cast<long>(round_means->size());

  MeanSurface surface;
  surface.kind = SurfaceKind::Restless;
  surface.horizon = T;
  for (int i = 0; i < K; ++i) {
    surface.arms.push_back([round_means, i](long t, long) {
      return (*round_means)[t - 1][i];
    });
  }
  return {std::move(surface), NoiseModel::bernoulli_batch(samples_per_round), K,
          T, {0.0, 1.0}};
}

}  // namespace rotband
