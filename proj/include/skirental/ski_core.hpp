#pragma once

// Single-instance ski rental: the cost-robust randomized buy-day rule,
// its robustness radius, the normalized expert loss and the competitive
// ratio bound.

#include <cstdint>
#include <span>
#include <vector>

#include "skirental/random_stream.hpp"

namespace skirental {

/// Nearest integer; exact half-integers go to the even neighbour.
/// Throws std::domain_error for NaN or infinity.
std::int64_t nint(double v);

/// One round's ground truth: buy cost b >= 2 and season length x >= 1 (days).
class SkiRentalInstance {
 public:
  /// Throws std::invalid_argument for b < 2 and DegenerateInstance for
  /// x = 0 (a zero optimum leaves the normalized loss undefined).
  SkiRentalInstance(std::int64_t buy_cost, std::int64_t season_length);

  std::int64_t buy_cost() const noexcept { return buy_cost_; }
  std::int64_t season_length() const noexcept { return season_length_; }

  friend bool operator==(const SkiRentalInstance&, const SkiRentalInstance&) = default;

 private:
  std::int64_t buy_cost_;
  std::int64_t season_length_;
};

enum class Branch {
  BuyLate,   // prediction y >= nint(b): support k = floor(lambda * b)
  BuyEarly,  // prediction y <  nint(b): support l = ceil(b / lambda)
};

const char* to_string(Branch branch) noexcept;

/// Probability vector over buy days 1..support_size.
///
/// Besides the probabilities it keeps compensated prefix sums of P(d <= i)
/// and E[d; d <= i] so sampling is a binary search and expected costs are
/// O(1) per instance.
class BuyDayDistribution {
 public:
  /// Takes raw (not yet normalized) weights; throws std::logic_error when
  /// their sum is off from 1 by more than 1e-9, then renormalizes.
  BuyDayDistribution(Branch branch, std::vector<double> probabilities);

  Branch branch() const noexcept { return branch_; }
  std::int64_t support_size() const noexcept { return static_cast<std::int64_t>(probs_.size()); }
  std::span<const double> probabilities() const noexcept { return probs_; }
  /// P(d = day), zero outside the support.
  double probability(std::int64_t day) const noexcept;

  /// P(d <= day).
  double cumulative(std::int64_t day) const noexcept;
  /// Inverse CDF: smallest day with P(d <= day) > u, for u in [0, 1).
  std::int64_t day_at(double u) const noexcept;

  /// E[ALG] for the instance, summed over the support.
  double expected_alg_cost(const SkiRentalInstance& inst) const noexcept;

  /// Equality of branch and probability vector (bitwise on the doubles).
  friend bool operator==(const BuyDayDistribution& a, const BuyDayDistribution& b) noexcept {
    return a.branch_ == b.branch_ && a.probs_ == b.probs_;
  }

 private:
  Branch branch_;
  std::vector<double> probs_;
  std::vector<double> cdf_;     // cdf_[i] = P(d <= i + 1); back() == 1 exactly
  std::vector<double> moment_;  // moment_[i] = sum_{j <= i + 1} j * P(d = j)
};

/// The closed-form geometric distribution for a given branch and support size.
/// Depends only on (branch, support_size, lambda).
BuyDayDistribution make_buy_day_distribution(Branch branch, std::int64_t support_size, double lambda);

/// Support size chosen for the (real) buy-cost input on the given branch.
std::int64_t support_size_for(Branch branch, double b_input, double lambda);

/// Branch selected by prediction y for a (real) buy-cost input.
Branch select_branch(double b_input, std::int64_t y);

/// The cost-robust randomized rule. k and l use the raw real b_input; only
/// the branch test rounds it. Throws InvalidHyperparameter unless
/// lambda in (0, 1] and lambda * b_input >= 1.
BuyDayDistribution buy_day_distribution(double b_input, std::int64_t y, double lambda);

/// One inverse-CDF draw (consumes exactly one uniform from the stream).
std::int64_t sample_buy_day(const BuyDayDistribution& dist, RandomStream& rng);

struct RobustnessRadius {
  double epsilon;  // in units of buy cost
};

/// Half-width of the buy-cost window in which the rule's output
/// distribution cannot change (both support sizes are frozen inside it).
RobustnessRadius robustness_radius(std::int64_t b, double lambda);

/// OPT = min(b, x).
std::int64_t opt_cost(const SkiRentalInstance& inst) noexcept;

/// Cost of buying at the start of day d: b + d - 1 if the season reaches d,
/// otherwise rent for the whole season. Throws std::invalid_argument for d < 1.
std::int64_t alg_cost(const SkiRentalInstance& inst, std::int64_t d);

/// (ALG - OPT) / OPT for a given buy day.
double loss_for_day(const SkiRentalInstance& inst, std::int64_t d);

/// Normalized loss of one ski expert: samples d from the rule fed with the
/// estimate b_s and its own prediction y.
double expert_loss(const SkiRentalInstance& inst, double b_s, std::int64_t y, double lambda,
                   RandomStream& rng);

/// (E[ALG] - OPT) / OPT under the distribution; deterministic.
double expected_loss(const SkiRentalInstance& inst, const BuyDayDistribution& dist) noexcept;

/// Expectation of expert_loss over the buy day.
double expected_expert_loss(const SkiRentalInstance& inst, double b_s, std::int64_t y,
                            double lambda);

struct CompetitiveRatioArms {
  double robust;      // (1 + 1/floor(lambda b)) / (1 - e^-lambda)
  double consistent;  // lambda / (1 - e^-lambda) * (1 + eta / OPT)
  double bound() const noexcept { return robust < consistent ? robust : consistent; }
};

/// Both arms of the competitive-ratio guarantee for true buy cost b,
/// prediction error eta = |y - x| (may be +inf) and optimum opt.
CompetitiveRatioArms competitive_ratio_arms(std::int64_t b, double lambda, double eta,
                                            std::int64_t opt);

/// min of the two arms.
double competitive_ratio_bound(std::int64_t b, double lambda, double eta, std::int64_t opt);

}  // namespace skirental
