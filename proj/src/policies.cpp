#include "rotband/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rotband {

namespace {
constexpr double kE = 2.718281828459045;

void grow_inv_sqrt(std::vector<double>& table, long h) {
  while (static_cast<long>(table.size()) <= h) {
    table.push_back(table.size() == 0
                        ? 0.0
                        : 1.0 / std::sqrt(static_cast<double>(table.size())));
  }
}
}  // namespace

double delta_t(long t, double alpha) {
  return 2.0 * std::pow(static_cast<double>(t), -alpha);
}

double confidence_radius(long h, double delta, double sigma) {
  if (delta > 2.0) throw std::domain_error("confidence_radius: delta > 2");
  return std::sqrt(2.0 * sigma * sigma * std::log(2.0 / delta) /
                   static_cast<double>(h));
}

double policy_constant(PolicyKind kind, double alpha) {
  switch (kind) {
    case PolicyKind::RawUcb:
      return 2.0 * std::sqrt(2.0 * alpha);
    case PolicyKind::Fewa:
      return 4.0 * std::sqrt(2.0 * alpha);
    case PolicyKind::EffRawUcb:
      return 4.0 * std::sqrt(alpha) / (std::sqrt(2.0) - 1.0);
    case PolicyKind::EffFewa:
      return 8.0 * std::sqrt(alpha) / (std::sqrt(2.0) - 1.0);
  }
  throw std::invalid_argument("unknown policy kind");
}

Exp3sConfig exp3s_tuning_from_batches(long T, int K, long upsilon) {
  const double t = static_cast<double>(T);
  const double k = static_cast<double>(K);
  const double u = static_cast<double>(upsilon);
  double gamma = std::sqrt(k * (u * std::log(k * t) + kE) / ((kE - 1.0) * t));
  gamma = std::min(1.0, gamma);
  return {gamma, 1.0 / t};
}

Exp3sConfig exp3s_tuning_from_budget(long T, int K, double V, double sigma) {
  const double s2 = sigma > 0 ? sigma * sigma : 1.0;
  double u = std::floor(
      2.0 * std::cbrt(V * V * static_cast<double>(T) / (K * s2)));
  u = std::clamp(u, 1.0, static_cast<double>(T));
  return exp3s_tuning_from_batches(T, K, static_cast<long>(u));
}

IndexValue raw_ucb_index(const ArmStats& stats, long t,
                         const PolicyConfig& config) {
  const long n = stats.count();
  if (n < 1) throw std::logic_error("raw_ucb_index: arm has no samples");
  const double delta = delta_t(t, config.alpha);
  IndexValue best{std::numeric_limits<double>::infinity(), 0};
  for (long h = 1; h <= n; ++h) {
    const double v = stats.window_mean(h) + confidence_radius(h, delta, config.sigma);
    if (v <= best.value) best = {v, h};  // ties toward the larger window
  }
  return best;
}

// ---- RAW-UCB -------------------------------------------------------

RawUcbPolicy::RawUcbPolicy(int K, const PolicyConfig& config,
                           bool full_window_only)
    : config_(config), full_window_only_(full_window_only), stats_(K) {
  grow_inv_sqrt(inv_sqrt_, 1);
}

double RawUcbPolicy::arm_index(ArmId i, double base) const {
  const ArmStats& st = stats_[i];
  const long n = st.count();
  const double total = st.prefix_sum(n);
  if (full_window_only_) {
    return total / static_cast<double>(n) + base * inv_sqrt_[n];
  }
  double best = std::numeric_limits<double>::infinity();
  for (long h = 1; h <= n; ++h) {
    const double mean = (total - st.prefix_sum(n - h)) / static_cast<double>(h);
    const double v = mean + base * inv_sqrt_[h];
    if (v < best) best = v;
  }
  return best;
}

ArmId RawUcbPolicy::choose(long t) {
  const int K = static_cast<int>(stats_.size());
  if (t <= K) return static_cast<ArmId>(t - 1);
  const double base =
      config_.sigma * std::sqrt(2.0 * std::log(2.0 / delta_t(t, config_.alpha)));
  ArmId best_arm = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (ArmId i = 0; i < K; ++i) {
    const double idx = arm_index(i, base);
    if (idx > best) {
      best = idx;
      best_arm = i;
    }
  }
  return best_arm;
}

void RawUcbPolicy::observe(ArmId arm, double value) {
  stats_[arm].push(value);
  grow_inv_sqrt(inv_sqrt_, stats_[arm].count());
}

// ---- EFF-RAW-UCB ---------------------------------------------------

EffRawUcbPolicy::EffRawUcbPolicy(int K, const PolicyConfig& config)
    : config_(config) {
  stats_.reserve(K);
  for (int i = 0; i < K; ++i) {
    stats_.push_back(config.dense ? EffArmStats::dense()
                                  : EffArmStats(config.m));
  }
  grow_inv_sqrt(inv_sqrt_, 1);
}

ArmId EffRawUcbPolicy::choose(long t) {
  const int K = static_cast<int>(stats_.size());
  if (t <= K) return static_cast<ArmId>(t - 1);
  const double base =
      config_.sigma * std::sqrt(2.0 * std::log(2.0 / delta_t(t, config_.alpha)));
  ArmId best_arm = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (ArmId i = 0; i < K; ++i) {
    double idx = std::numeric_limits<double>::infinity();
    if (stats_[i].is_dense()) {
      const ArmStats& st = stats_[i].exact();
      const long n = st.count();
      const double total = st.prefix_sum(n);
      for (long h = 1; h <= n; ++h) {
        const double v =
            (total - st.prefix_sum(n - h)) / static_cast<double>(h) +
            base * inv_sqrt_[h];
        if (v < idx) idx = v;
      }
    } else {
      for (const EffTriplet& tr : stats_[i].triplets()) {
        if (!tr.mu_eff) continue;
        const double v = *tr.mu_eff + base * inv_sqrt_[tr.h];
        if (v < idx) idx = v;
      }
    }
    if (idx > best) {
      best = idx;
      best_arm = i;
    }
  }
  return best_arm;
}

void EffRawUcbPolicy::observe(ArmId arm, double value) {
  stats_[arm].push(value);
  long max_h = stats_[arm].count();
  if (!stats_[arm].is_dense()) max_h = stats_[arm].triplets().back().h;
  grow_inv_sqrt(inv_sqrt_, max_h);
}

// ---- FEWA ----------------------------------------------------------

FewaPolicy::FewaPolicy(int K, const PolicyConfig& config)
    : config_(config), stats_(K) {}

ArmId FewaPolicy::choose(long t) {
  const int K = static_cast<int>(stats_.size());
  if (t <= K) return static_cast<ArmId>(t - 1);
  const double delta = delta_t(t, config_.alpha);
  std::vector<ArmId> candidates(K);
  for (int i = 0; i < K; ++i) candidates[i] = i;
  for (long h = 1;; ++h) {
    for (ArmId i : candidates) {
      if (stats_[i].count() <= h) return i;  // smallest index: sorted order
    }
    const double width = 2.0 * confidence_radius(h, delta, config_.sigma);
    double top = -std::numeric_limits<double>::infinity();
    for (ArmId i : candidates) top = std::max(top, stats_[i].window_mean(h));
    std::erase_if(candidates, [&](ArmId i) {
      return stats_[i].window_mean(h) < top - width;
    });
  }
}

void FewaPolicy::observe(ArmId arm, double value) { stats_[arm].push(value); }

// ---- EFF-FEWA ------------------------------------------------------

EffFewaPolicy::EffFewaPolicy(int K, const PolicyConfig& config)
    : config_(config) {
  stats_.reserve(K);
  for (int i = 0; i < K; ++i) {
    stats_.push_back(config.dense ? EffArmStats::dense()
                                  : EffArmStats(config.m));
  }
}

ArmId EffFewaPolicy::choose(long t) {
  const int K = static_cast<int>(stats_.size());
  if (t <= K) return static_cast<ArmId>(t - 1);
  const double delta = delta_t(t, config_.alpha);
  std::vector<ArmId> candidates(K);
  for (int i = 0; i < K; ++i) candidates[i] = i;
  long next_grid = 1;
  for (long h = 1;; ++h) {
    for (ArmId i : candidates) {
      if (stats_[i].count() <= h) return i;
    }
    if (h == next_grid) {
      // Filter at grid windows only; arms whose statistic for this
      // window is not yet defined cannot be filtered and survive.
      const double width = 2.0 * confidence_radius(h, delta, config_.sigma);
      double top = -std::numeric_limits<double>::infinity();
      for (ArmId i : candidates) {
        if (auto mu = stats_[i].mu_eff(h)) top = std::max(top, *mu);
      }
      if (top > -std::numeric_limits<double>::infinity()) {
        std::erase_if(candidates, [&](ArmId i) {
          auto mu = stats_[i].mu_eff(h);
          return mu && *mu < top - width;
        });
      }
      next_grid = config_.dense ? h + 1 : ceil_ratio(config_.m, h);
    }
  }
}

void EffFewaPolicy::observe(ArmId arm, double value) {
  stats_[arm].push(value);
}

// ---- Exp3.S --------------------------------------------------------

Exp3sPolicy::Exp3sPolicy(int K, Exp3sConfig config,
                         std::array<double, 2> declared_range,
                         std::uint64_t seed)
    : K_(K),
      config_(config),
      range_(declared_range),
      rng_(seed),
      weights_(K, 1.0),
      pulls_(K, 0),
      last_probs_(K, 0.0) {}

std::vector<double> Exp3sPolicy::probabilities() const {
  double total = 0.0;
  for (double w : weights_) total += w;
  std::vector<double> p(K_);
  for (int i = 0; i < K_; ++i) {
    p[i] = (1.0 - config_.gamma) * weights_[i] / total + config_.gamma / K_;
  }
  return p;
}

ArmId Exp3sPolicy::choose(long) {
  last_probs_ = probabilities();
  double u = rng_.next_double();
  ArmId pick = K_ - 1;
  for (int i = 0; i < K_; ++i) {
    if (u < last_probs_[i]) {
      pick = i;
      break;
    }
    u -= last_probs_[i];
  }
  last_arm_ = pick;
  return pick;
}

void Exp3sPolicy::observe(ArmId arm, double value) {
  ++pulls_[arm];
  const double span = range_[1] - range_[0];
  const double x = span > 0 ? (value - range_[0]) / span : value;
  if (x < -1e-9 || x > 1.0 + 1e-9) {
    throw std::invalid_argument("exp3s: rescaled reward outside [0, 1]");
  }
  const double clamped = std::clamp(x, 0.0, 1.0);
  // Importance-weighted estimate for the chosen arm only.
  std::vector<double> updated(weights_);
  if (arm == last_arm_ && last_probs_[arm] > 0.0) {
    const double xhat = clamped / last_probs_[arm];
    updated[arm] *= std::exp(config_.gamma * xhat / K_);
  }
  double total = 0.0;
  for (double w : updated) total += w;
  for (int i = 0; i < K_; ++i) {
    weights_[i] = updated[i] + kE * config_.alpha_exp / K_ * total;
  }
  // Rescale so the weights never overflow; probabilities are invariant.
  double wmax = *std::max_element(weights_.begin(), weights_.end());
  if (wmax > 1e100) {
    for (double& w : weights_) w /= wmax;
  }
}

// ---- Oracles -------------------------------------------------------

ArmId greedy_oracle_choose(const MeanSurface& surface,
                           const std::vector<long>& pulls, long t) {
  ArmId best = 0;
  double best_mean = -std::numeric_limits<double>::infinity();
  for (ArmId i = 0; i < surface.num_arms(); ++i) {
    const double mu = surface.mean(i, t, pulls[i]);
    if (mu > best_mean) {
      best_mean = mu;
      best = i;
    }
  }
  return best;
}

GreedyOraclePolicy::GreedyOraclePolicy(const MeanSurface* surface)
    : surface_(surface), pulls_(surface->num_arms(), 0) {}

ArmId GreedyOraclePolicy::choose(long t) {
  return greedy_oracle_choose(*surface_, pulls_, t);
}

void GreedyOraclePolicy::observe(ArmId arm, double) { ++pulls_[arm]; }

// ---- Factory -------------------------------------------------------

std::unique_ptr<Policy> make_policy(const std::string& id, int K,
                                    const PolicyConfig& config,
                                    const MeanSurface* surface,
                                    std::array<double, 2> declared_range,
                                    std::uint64_t seed) {
  if (id == "raw_ucb") return std::make_unique<RawUcbPolicy>(K, config);
  if (id == "ucb1") return std::make_unique<RawUcbPolicy>(K, config, true);
  if (id == "eff_raw_ucb") return std::make_unique<EffRawUcbPolicy>(K, config);
  if (id == "fewa") return std::make_unique<FewaPolicy>(K, config);
  if (id == "eff_fewa") return std::make_unique<EffFewaPolicy>(K, config);
  if (id == "round_robin") return std::make_unique<RoundRobinPolicy>(K);
  if (id == "exp3s") {
    if (!config.exp3s) {
      throw std::invalid_argument("exp3s requires gamma/alpha_exp tuning");
    }
    return std::make_unique<Exp3sPolicy>(K, *config.exp3s, declared_range, seed);
  }
  if (id == "greedy_oracle") {
    if (surface == nullptr) {
      throw std::invalid_argument("greedy_oracle requires the mean surface");
    }
    return std::make_unique<GreedyOraclePolicy>(surface);
  }
  throw std::invalid_argument("unknown policy id: " + id);
}

}  // namespace rotband
