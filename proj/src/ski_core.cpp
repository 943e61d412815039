#include "skirental/ski_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "skirental/errors.hpp"

namespace skirental {

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw InvalidHyperparameter("lambda must lie in (0, 1], got " + std::to_string(lambda));
  }
}

void check_cost_lambda(double b_input, double lambda) {
  check_lambda(lambda);
  if (!(b_input > 0.0) || !std::isfinite(b_input)) {
    throw InvalidHyperparameter("buy cost input must be positive and finite, got " +
                                std::to_string(b_input));
  }
  if (lambda * b_input < 1.0) {
    throw InvalidHyperparameter("lambda * b must be >= 1 (lambda=" + std::to_string(lambda) +
                                ", b=" + std::to_string(b_input) + ")");
  }
}

double fractional_part(double v) { return v - std::floor(v); }

}  // namespace

std::int64_t nint(double v) {
  if (!std::isfinite(v)) throw std::domain_error("nint: non-finite input");
  const double lo = std::floor(v);
  const double diff = v - lo;
  double r = lo;
  if (diff > 0.5) {
    r = lo + 1.0;
  } else if (diff == 0.5) {
    r = std::fmod(lo, 2.0) == 0.0 ? lo : lo + 1.0;
  }
  if (r >= 0x1.0p63 || r < -0x1.0p63) throw std::domain_error("nint: out of range");
  return static_cast<std::int64_t>(r);
}

SkiRentalInstance::SkiRentalInstance(std::int64_t buy_cost, std::int64_t season_length)
    : buy_cost_(buy_cost), season_length_(season_length) {
  if (buy_cost < 2) throw std::invalid_argument("buy cost must be >= 2");
  if (season_length < 0) throw std::invalid_argument("season length must be >= 0");
  if (season_length == 0) {
    throw DegenerateInstance("season length 0 gives OPT = 0; normalized loss undefined");
  }
}

const char* to_string(Branch branch) noexcept {
  return branch == Branch::BuyLate ? "buy_late" : "buy_early";
}

BuyDayDistribution::BuyDayDistribution(Branch branch, std::vector<double> probabilities)
    : branch_(branch), probs_(std::move(probabilities)) {
  if (probs_.empty()) throw std::invalid_argument("buy-day distribution needs a non-empty support");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::logic_error("buy-day distribution has a negative or non-finite weight");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::logic_error("buy-day weights sum to " + std::to_string(sum) + ", not 1");
  }
  for (double& p : probs_) p /= sum;

  cdf_.resize(probs_.size());
  moment_.resize(probs_.size());
  double mass = 0.0, mass_c = 0.0;
  double mom = 0.0, mom_c = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    // Kahan steps for both running sums.
    double y = probs_[i] - mass_c;
    double t = mass + y;
    mass_c = (t - mass) - y;
    mass = t;
    y = static_cast<double>(i + 1) * probs_[i] - mom_c;
    t = mom + y;
    mom_c = (t - mom) - y;
    mom = t;
    cdf_[i] = mass;
    moment_[i] = mom;
  }
  cdf_.back() = 1.0;
}

double BuyDayDistribution::probability(std::int64_t day) const noexcept {
  if (day < 1 || day > support_size()) return 0.0;
  return probs_[static_cast<std::size_t>(day - 1)];
}

double BuyDayDistribution::cumulative(std::int64_t day) const noexcept {
  if (day < 1) return 0.0;
  if (day >= support_size()) return 1.0;
  return cdf_[static_cast<std::size_t>(day - 1)];
}

std::int64_t BuyDayDistribution::day_at(double u) const noexcept {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return support_size();
  return static_cast<std::int64_t>(it - cdf_.begin()) + 1;
}

double BuyDayDistribution::expected_alg_cost(const SkiRentalInstance& inst) const noexcept {
  const std::int64_t b = inst.buy_cost();
  const std::int64_t x = inst.season_length();
  const std::int64_t reach = std::min(x, support_size());
  const auto idx = static_cast<std::size_t>(reach - 1);
  const double bought = cdf_[idx];
  // Buy on day d <= x costs b + d - 1; later buy days mean renting all x days.
  return static_cast<double>(b - 1) * bought + moment_[idx] +
         static_cast<double>(x) * (1.0 - bought);
}

std::int64_t support_size_for(Branch branch, double b_input, double lambda) {
  check_cost_lambda(b_input, lambda);
  if (branch == Branch::BuyLate) return static_cast<std::int64_t>(std::floor(lambda * b_input));
  return static_cast<std::int64_t>(std::ceil(b_input / lambda));
}

Branch select_branch(double b_input, std::int64_t y) {
  return y >= nint(b_input) ? Branch::BuyLate : Branch::BuyEarly;
}

BuyDayDistribution make_buy_day_distribution(Branch branch, std::int64_t support_size,
                                             double lambda) {
  check_lambda(lambda);
  if (support_size < 1) throw InvalidHyperparameter("support size must be >= 1");
  const auto n = static_cast<double>(support_size);
  std::vector<double> p(static_cast<std::size_t>(support_size));
  double base = 0.0, scale = 0.0;
  if (branch == Branch::BuyLate) {
    base = 1.0 - lambda / n;
    scale = lambda / (n * (1.0 - std::pow(base, n)));
  } else {
    base = 1.0 - 1.0 / (lambda * n);
    if (base < 0.0) throw InvalidHyperparameter("lambda * l must be >= 1 on the buy-early branch");
    scale = 1.0 / (n * lambda * (1.0 - std::pow(base, n)));
  }
  for (std::int64_t i = 1; i <= support_size; ++i) {
    p[static_cast<std::size_t>(i - 1)] = std::pow(base, static_cast<double>(support_size - i)) * scale;
  }
  return BuyDayDistribution(branch, std::move(p));
}

BuyDayDistribution buy_day_distribution(double b_input, std::int64_t y, double lambda) {
  check_cost_lambda(b_input, lambda);
  const Branch branch = select_branch(b_input, y);
  return make_buy_day_distribution(branch, support_size_for(branch, b_input, lambda), lambda);
}

std::int64_t sample_buy_day(const BuyDayDistribution& dist, RandomStream& rng) {
  return dist.day_at(rng.uniform());
}

RobustnessRadius robustness_radius(std::int64_t b, double lambda) {
  check_cost_lambda(static_cast<double>(b), lambda);
  const double bd = static_cast<double>(b);
  const double late = fractional_part(lambda * bd);
  const double early = fractional_part(bd / lambda);
  const double late_arm = std::min(late, 1.0 - late) / lambda;
  const double early_arm = lambda * std::min(early, 1.0 - early);
  return {std::min(late_arm, early_arm)};
}

std::int64_t opt_cost(const SkiRentalInstance& inst) noexcept {
  return std::min(inst.buy_cost(), inst.season_length());
}

std::int64_t alg_cost(const SkiRentalInstance& inst, std::int64_t d) {
  if (d < 1) throw std::invalid_argument("buy day must be >= 1");
  return inst.season_length() >= d ? inst.buy_cost() + d - 1 : inst.season_length();
}

double loss_for_day(const SkiRentalInstance& inst, std::int64_t d) {
  const auto opt = static_cast<double>(opt_cost(inst));
  return (static_cast<double>(alg_cost(inst, d)) - opt) / opt;
}

double expert_loss(const SkiRentalInstance& inst, double b_s, std::int64_t y, double lambda,
                   RandomStream& rng) {
  const BuyDayDistribution dist = buy_day_distribution(b_s, y, lambda);
  return loss_for_day(inst, sample_buy_day(dist, rng));
}

double expected_loss(const SkiRentalInstance& inst, const BuyDayDistribution& dist) noexcept {
  const auto opt = static_cast<double>(opt_cost(inst));
  // ALG >= OPT pointwise; clamp the last-ulp rounding of the prefix sums.
  return std::max(0.0, (dist.expected_alg_cost(inst) - opt) / opt);
}

double expected_expert_loss(const SkiRentalInstance& inst, double b_s, std::int64_t y,
                            double lambda) {
  return expected_loss(inst, buy_day_distribution(b_s, y, lambda));
}

CompetitiveRatioArms competitive_ratio_arms(std::int64_t b, double lambda, double eta,
                                            std::int64_t opt) {
  check_cost_lambda(static_cast<double>(b), lambda);
  if (opt < 1) throw std::invalid_argument("OPT must be >= 1");
  if (!(eta >= 0.0)) throw std::invalid_argument("prediction error must be >= 0");
  const double k = std::floor(lambda * static_cast<double>(b));
  const double denom = 1.0 - std::exp(-lambda);
  return {(1.0 + 1.0 / k) / denom, lambda / denom * (1.0 + eta / static_cast<double>(opt))};
}

double competitive_ratio_bound(std::int64_t b, double lambda, double eta, std::int64_t opt) {
  return competitive_ratio_arms(b, lambda, eta, opt).bound();
}

}  // namespace skirental
