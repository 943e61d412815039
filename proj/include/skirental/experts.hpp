#pragma once

// Synthetic expert panels: unbiased buy-cost predictors with truncated
// normal noise and season-length predictors with Gaussian error.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "skirental/random_stream.hpp"
#include "skirental/ski_core.hpp"

namespace skirental {

/// Closed integer interval [lo, hi].
struct IntRange {
  std::int64_t lo;
  std::int64_t hi;

  bool contains(std::int64_t v) const noexcept { return lo <= v && v <= hi; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// count evenly spaced values from lo to hi inclusive; [lo] when count = 1.
std::vector<double> linspace_variances(double lo, double hi, std::size_t count);

inline constexpr int kTruncatedNormalRetryCap = 10000;

/// N(0, variance) conditioned on [-bound, bound], by rejection. Zero variance
/// or zero bound returns 0. Throws std::runtime_error after retry_cap misses.
double sample_truncated_normal(RandomStream& rng, double variance, double bound,
                               int retry_cap = kTruncatedNormalRetryCap);

/// Variance after truncating N(0, variance) to [-bound, bound] (closed form).
double truncated_normal_variance(double variance, double bound);

class BuyExpertPanel {
 public:
  /// variances are the pre-truncation gamma_i; noise is clipped by rejection
  /// to [-noise_bound, noise_bound].
  BuyExpertPanel(std::vector<double> variances, double noise_bound, IntRange ground_truth_range);

  std::size_t size() const noexcept { return variances_.size(); }
  const std::vector<double>& variances() const noexcept { return variances_; }
  double noise_bound() const noexcept { return noise_bound_; }
  IntRange ground_truth_range() const noexcept { return range_; }

  /// i* = argmin gamma_i (lowest index on ties).
  std::size_t best_expert() const noexcept { return best_; }
  double gamma_min() const noexcept { return variances_[best_]; }
  /// Delta_i = gamma_i - gamma_min.
  std::vector<double> gaps() const;
  /// Delta = min_{i != i*} Delta_i; 0 for a single expert or a tie.
  double min_gap() const noexcept;
  /// True when another expert shares gamma_min (Delta = 0).
  bool gap_tied() const noexcept;
  /// Post-truncation variances, the quantities the bounds should consume.
  std::vector<double> effective_variances() const;

  /// a_i = b_true + e_i with independent truncated-normal e_i.
  /// Throws std::invalid_argument when b_true is out of range.
  std::vector<double> predict(std::int64_t b_true, RandomStream& rng) const;

 private:
  std::vector<double> variances_;
  double noise_bound_;
  IntRange range_;
  std::size_t best_ = 0;
};

class SkiExpertPanel {
 public:
  explicit SkiExpertPanel(std::vector<double> variances);

  std::size_t size() const noexcept { return variances_.size(); }
  const std::vector<double>& variances() const noexcept { return variances_; }

  /// y_j = max(0, nint(x_true + e_j)), e_j ~ N(0, eta_j).
  std::vector<std::int64_t> predict(std::int64_t x_true, RandomStream& rng) const;

 private:
  std::vector<double> variances_;
};

/// Independent uniform draws of b and x.
SkiRentalInstance draw_instance(IntRange buy_costs, IntRange season_lengths, RandomStream& rng);

}  // namespace skirental
