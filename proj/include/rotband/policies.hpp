#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rotband/core.hpp"
#include "rotband/rng.hpp"
#include "rotband/window_stats.hpp"

namespace rotband {

/// Confidence level at round t: delta_t = 2 t^{-alpha}.
double delta_t(long t, double alpha);

/// Confidence radius c(h, delta) = sqrt(2 sigma^2 ln(2/delta) / h).
/// Throws std::domain_error for delta > 2 (negative log argument).
double confidence_radius(long h, double delta, double sigma);

enum class PolicyKind { RawUcb, Fewa, EffRawUcb, EffFewa };

/// Regret-bound constant C_pi for the four adaptive-window policies.
double policy_constant(PolicyKind kind, double alpha);

struct Exp3sConfig {
  double gamma = 0.0;
  double alpha_exp = 0.0;
};

/// Theoretical Exp3.S tuning from the horizon and the number of
/// stationary batches: gamma = min(1, sqrt(K (Ups ln(KT) + e) / ((e-1) T))),
/// alpha_exp = 1/T (Auer et al. 2002, Corollary 8.3).
Exp3sConfig exp3s_tuning_from_batches(long T, int K, long upsilon);

/// Tuning from a variation budget: picks the batch count
/// Ups = clamp(floor(2 (V^2 T / (K sigma^2))^{1/3}), 1, T) and defers to
/// the batch-based tuning.
Exp3sConfig exp3s_tuning_from_budget(long T, int K, double V, double sigma);

struct PolicyConfig {
  double alpha = 4.0;
  double sigma = 1.0;
  double m = 2.0;      // grid ratio for efficient variants
  bool dense = false;  // dense-grid sentinel (m <= 1 + 1/T)
  std::optional<Exp3sConfig> exp3s;
};

/// Stateful decision policy: choose(t) then observe the sampled value.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual ArmId choose(long t) = 0;
  virtual void observe(ArmId arm, double value) = 0;
  virtual long pull_count(ArmId arm) const = 0;
  virtual std::string_view id() const = 0;
};

/// RAW-UCB index of one arm: the minimum over all trailing windows
/// h <= N of window_mean(h) + c(h, delta_t). Ties in h break toward
/// the larger window. Requires at least one sample.
struct IndexValue {
  double value;
  long window;
};
IndexValue raw_ucb_index(const ArmStats& stats, long t,
                         const PolicyConfig& config);

/// RAW-UCB (optionally restricted to h = N, which is plain UCB1).
class RawUcbPolicy : public Policy {
 public:
  RawUcbPolicy(int K, const PolicyConfig& config, bool full_window_only = false);
  ArmId choose(long t) override;
  void observe(ArmId arm, double value) override;
  long pull_count(ArmId arm) const override { return stats_[arm].count(); }
  std::string_view id() const override {
    return full_window_only_ ? "ucb1" : "raw_ucb";
  }
  const ArmStats& stats(ArmId arm) const { return stats_[arm]; }

 private:
  PolicyConfig config_;
  bool full_window_only_;
  std::vector<ArmStats> stats_;
  std::vector<double> inv_sqrt_;  // cached 1/sqrt(h)
  double arm_index(ArmId i, double base) const;
};

/// EFF-RAW-UCB: the index minimum ranges over defined grid windows only.
class EffRawUcbPolicy : public Policy {
 public:
  EffRawUcbPolicy(int K, const PolicyConfig& config);
  ArmId choose(long t) override;
  void observe(ArmId arm, double value) override;
  long pull_count(ArmId arm) const override { return stats_[arm].count(); }
  std::string_view id() const override { return "eff_raw_ucb"; }
  const EffArmStats& stats(ArmId arm) const { return stats_[arm]; }

 private:
  PolicyConfig config_;
  std::vector<EffArmStats> stats_;
  std::vector<double> inv_sqrt_;
};

/// FEWA: expanding-window filtering. Starting from h = 1 with every
/// arm a candidate, pull the smallest-index candidate with N_i <= h;
/// otherwise keep candidates within 2 c(h, delta_t) of the best
/// trailing-h mean and grow h.
class FewaPolicy : public Policy {
 public:
  FewaPolicy(int K, const PolicyConfig& config);
  ArmId choose(long t) override;
  void observe(ArmId arm, double value) override;
  long pull_count(ArmId arm) const override { return stats_[arm].count(); }
  std::string_view id() const override { return "fewa"; }

 private:
  PolicyConfig config_;
  std::vector<ArmStats> stats_;
};

/// EFF-FEWA: filters evaluated only at grid windows with defined
/// statistics; between grid windows the previous filter carries over.
class EffFewaPolicy : public Policy {
 public:
  EffFewaPolicy(int K, const PolicyConfig& config);
  ArmId choose(long t) override;
  void observe(ArmId arm, double value) override;
  long pull_count(ArmId arm) const override { return stats_[arm].count(); }
  std::string_view id() const override { return "eff_fewa"; }

 private:
  PolicyConfig config_;
  std::vector<EffArmStats> stats_;
};

/// Exp3.S with importance-weighted updates and uniform-mixing gamma.
/// Rewards are rescaled into [0, 1] with the environment's declared
/// range before the weight update.
class Exp3sPolicy : public Policy {
 public:
  Exp3sPolicy(int K, Exp3sConfig config, std::array<double, 2> declared_range,
              std::uint64_t seed);
  ArmId choose(long t) override;
  void observe(ArmId arm, double value) override;
  long pull_count(ArmId arm) const override { return pulls_[arm]; }
  std::string_view id() const override { return "exp3s"; }

  const std::vector<double>& weights() const { return weights_; }
  std::vector<double> probabilities() const;

 private:
  int K_;
  Exp3sConfig config_;
  std::array<double, 2> range_;
  Rng rng_;
  std::vector<double> weights_;
  std::vector<long> pulls_;
  std::vector<double> last_probs_;
  ArmId last_arm_ = -1;
};

/// Clairvoyant greedy oracle: argmax_i mu_i(t, N_i), smallest index on ties.
class GreedyOraclePolicy : public Policy {
 public:
  explicit GreedyOraclePolicy(const MeanSurface* surface);
  ArmId choose(long t) override;
  void observe(ArmId arm, double value) override;
  long pull_count(ArmId arm) const override { return pulls_[arm]; }
  std::string_view id() const override { return "greedy_oracle"; }

 private:
  const MeanSurface* surface_;
  std::vector<long> pulls_;
};

/// Free-function form of the oracle decision.
ArmId greedy_oracle_choose(const MeanSurface& surface,
                           const std::vector<long>& pulls, long t);

class RoundRobinPolicy : public Policy {
 public:
  explicit RoundRobinPolicy(int K) : pulls_(K, 0) {}
  ArmId choose(long t) override {
    return static_cast<ArmId>((t - 1) % pulls_.size());
  }
  void observe(ArmId arm, double) override { ++pulls_[arm]; }
  long pull_count(ArmId arm) const override { return pulls_[arm]; }
  std::string_view id() const override { return "round_robin"; }

 private:
  std::vector<long> pulls_;
};

/// Builds a policy from its config-file string id. The surface pointer
/// is only needed for greedy_oracle; the seed only for exp3s. Throws
/// std::invalid_argument on unknown ids.
std::unique_ptr<Policy> make_policy(const std::string& id, int K,
                                    const PolicyConfig& config,
                                    const MeanSurface* surface = nullptr,
                                    std::array<double, 2> declared_range = {0, 1},
                                    std::uint64_t seed = 0);

}  // namespace rotband
