#pragma once

// Exponential-weights forecaster over a finite panel of experts.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace skirental {

struct ConstantRate {
  double rate;
};

/// eta_t = scale / sqrt(max(t, 1)), t = number of completed updates.
struct DecreasingRate {
  double scale;
};

using RateSchedule = std::variant<ConstantRate, DecreasingRate>;

/// Cumulative losses plus a learning-rate schedule. The weight vector is a
/// pure function of the state, so updates only accumulate losses and two
/// updates with l1 and l2 leave the same state as one update with l1 + l2
/// (up to the round counter).
class HedgeState {
 public:
  HedgeState(std::size_t num_experts, RateSchedule schedule);

  /// Horizon-tuned rate sqrt(ln N / T) / L for losses in [0, L].
  static HedgeState constant_for_horizon(std::size_t num_experts, std::int64_t horizon,
                                         double loss_bound);
  /// Anytime rate sqrt(ln N / t) / L for losses in [0, L].
  static HedgeState decreasing(std::size_t num_experts, double loss_bound);

  std::size_t num_experts() const noexcept { return cumulative_.size(); }
  std::int64_t round() const noexcept { return round_; }
  const RateSchedule& schedule() const noexcept { return schedule_; }
  std::span<const double> cumulative_losses() const noexcept { return cumulative_; }

  /// Rate applied to the cumulative losses at the current round.
  double learning_rate() const noexcept;

  /// softmax(-eta * cumulative_losses), shifted by the minimum loss so the
  /// exponentials never underflow to an all-zero vector.
  std::vector<double> weights() const;

  /// Adds a loss vector; throws std::invalid_argument on a length mismatch
  /// or a negative / non-finite entry.
  void update(std::span<const double> losses);

  [[nodiscard]] HedgeState updated(std::span<const double> losses) const {
    HedgeState next = *this;
    next.update(losses);
    return next;
  }

  /// Index of the smallest cumulative loss (lowest index on ties).
  std::size_t best_expert() const noexcept;

 private:
  std::vector<double> cumulative_;
  RateSchedule schedule_;
  std::int64_t round_ = 0;
};

/// sum of realized mixture losses minus the best single expert's total.
/// Throws std::invalid_argument unless one mixture loss per completed round.
double regret_to_best(const HedgeState& state, std::span<const double> mixture_losses);

/// Inner product of a weight vector with a loss vector.
double mixture_loss(std::span<const double> weights, std::span<const double> losses);

}  // namespace skirental
