#include "rotband/window_stats.hpp"

#include <algorithm>
#include <cmath>

namespace rotband {

void ArmStats::push(double value) {
  // Neumaier-compensated running sum; each prefix entry stores the
  // compensated total so window means stay near exact over long runs.
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value)) {
    comp_ += (sum_ - t) + value;
  } else {
    comp_ += (value - t) + sum_;
  }
  sum_ = t;
  prefix_.push_back(sum_ + comp_);
}

double ArmStats::window_mean(long h) const {
  const long n = count();
  if (h < 1 || h > n) throw std::out_of_range("window_mean: h out of range");
  return (prefix_[n] - prefix_[n - h]) / static_cast<double>(h);
}

long ceil_ratio(double m, long h) {
  const double x = m * static_cast<double>(h);
  const double f = std::floor(x);
  if (x - f <= 1e-9) return static_cast<long>(f);
  return static_cast<long>(f) + 1;
}

std::vector<long> grid_windows(double m, long pulls, bool dense) {
  if (dense) {
    std::vector<long> out;
    out.reserve(pulls);
    for (long h = 1; h <= pulls; ++h) out.push_back(h);
    return out;
  }
  std::vector<long> out{1};
  for (long pull = 1; pull <= pulls; ++pull) {
    if (pull == out.back()) out.push_back(ceil_ratio(m, pull));
  }
  return out;
}

EffArmStats::EffArmStats(double m) : EffArmStats(m, false) {
  if (m <= 1.0) throw std::invalid_argument("grid ratio must exceed 1");
}

EffArmStats EffArmStats::dense() { return EffArmStats(1.0, true); }

EffArmStats::EffArmStats(double m, bool dense) : m_(m), dense_(dense) {
  if (!dense_) triplets_.push_back({1, std::nullopt, 0.0, 0});
}

void EffArmStats::push(double value) {
  ++pulls_;
  if (dense_) {
    exact_.push(value);
    return;
  }
  // Creation: the pull count reached the largest window, so open the
  // next grid window, inheriting the previous largest pending block
  // before the new value is folded in.
  if (pulls_ == triplets_.back().h) {
    const EffTriplet& prev = triplets_.back();
    triplets_.push_back(
        {ceil_ratio(m_, pulls_), std::nullopt, prev.pending_sum,
         prev.pending_count});
  }
  triplets_[0] = {1, value, value, 1};
  for (std::size_t j = 1; j < triplets_.size(); ++j) {
    triplets_[j].pending_sum += value;
    triplets_[j].pending_count += 1;
  }
  // Descending sweep: a full pending block promotes to the current
  // statistic and refreshes from the next-smaller triplet, possibly
  // cascading several windows within one call.
  for (std::size_t j = triplets_.size(); j-- > 1;) {
    EffTriplet& tr = triplets_[j];
    if (tr.pending_count == tr.h) {
      tr.mu_eff = tr.pending_sum / static_cast<double>(tr.h);
      tr.pending_sum = triplets_[j - 1].pending_sum;
      tr.pending_count = triplets_[j - 1].pending_count;
    }
  }
}

const ArmStats& EffArmStats::exact() const {
  if (!dense_) throw std::logic_error("exact stats only exist in dense mode");
  return exact_;
}

const std::vector<EffTriplet>& EffArmStats::triplets() const {
  if (dense_) throw std::logic_error("dense grid has no triplets");
  return triplets_;
}

std::vector<std::pair<long, double>> EffArmStats::defined_windows() const {
  std::vector<std::pair<long, double>> out;
  if (dense_) {
    out.reserve(pulls_);
    for (long h = 1; h <= pulls_; ++h) out.emplace_back(h, exact_.window_mean(h));
    return out;
  }
  for (const EffTriplet& tr : triplets_) {
    if (tr.mu_eff) out.emplace_back(tr.h, *tr.mu_eff);
  }
  return out;
}

std::optional<double> EffArmStats::mu_eff(long h) const {
  if (dense_) {
    if (h >= 1 && h <= pulls_) return exact_.window_mean(h);
    return std::nullopt;
  }
  for (const EffTriplet& tr : triplets_) {
    if (tr.h == h) return tr.mu_eff;
  }
  return std::nullopt;
}

}  // namespace rotband
