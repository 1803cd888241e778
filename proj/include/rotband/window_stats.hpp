#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rotband {

/// Full-history per-arm observation buffer. Prefix sums (accumulated
/// with Neumaier compensation) give every trailing-window mean in O(1).
class ArmStats {
 public:
  void push(double value);

  /// Mean of the last h samples, 1 <= h <= count().
  double window_mean(long h) const;

  long count() const { return static_cast<long>(prefix_.size()) - 1; }

  /// prefix_sum(k) = sum of the first k samples.
  double prefix_sum(long k) const { return prefix_[k]; }

 private:
  std::vector<double> prefix_{0.0};  // prefix_[k] = sum of first k samples
  double sum_ = 0.0;                 // raw running sum
  double comp_ = 0.0;                // Neumaier compensation term
};

/// One window on the geometric grid: the current statistic mu_eff
/// (mean of exactly h consecutive samples, or unset before its first
/// promotion) plus the pending sum/count feeding the next promotion.
struct EffTriplet {
  long h;
  std::optional<double> mu_eff;
  double pending_sum;
  long pending_count;
};

/// Window set reachable after N pulls with grid ratio m: h_1 = 1,
/// h_{j+1} = ceil(m * h_j), including the pending window created at the
/// pull where N reached the previous largest. dense = true yields {1..N}.
std::vector<long> grid_windows(double m, long pulls, bool dense = false);

/// Geometric-grid trailing statistics for one arm. push() runs one
/// EFF_UPDATE step: create the next grid window when the pull count
/// reaches the current largest, fold the new value into every pending
/// sum, then sweep windows in descending order promoting any pending
/// block that reached its window size.
///
/// Dense mode (grid ratio at most 1 + 1/T) is implemented as an exact
/// full-history grid: every window 1..N is defined with zero delay.
class EffArmStats {
 public:
  explicit EffArmStats(double m);
  static EffArmStats dense();

  void push(double value);

  long count() const { return pulls_; }
  bool is_dense() const { return dense_; }
  double ratio() const { return m_; }

  /// Grid triplets ordered by window size (sparse mode only).
  const std::vector<EffTriplet>& triplets() const;

  /// (h, mu_eff) for every window whose statistic is defined.
  std::vector<std::pair<long, double>> defined_windows() const;

  /// Defined statistic for window h, if any.
  std::optional<double> mu_eff(long h) const;

  /// Full-history statistics backing dense mode.
  const ArmStats& exact() const;

 private:
  EffArmStats(double m, bool dense);

  double m_;
  bool dense_;
  long pulls_ = 0;
  std::vector<EffTriplet> triplets_;  // sparse mode
  ArmStats exact_;                    // dense mode
};

/// Smallest integer >= m * h, guarded against m * h landing a hair
/// above an exact integer in floating point.
long ceil_ratio(double m, long h);

}  // namespace rotband
