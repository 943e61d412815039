#include "skirental/experts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace skirental {

std::vector<double> linspace_variances(double lo, double hi, std::size_t count) {
  if (lo > hi) throw std::invalid_argument("linspace: lo > hi");
  if (count == 0) throw std::invalid_argument("linspace: count must be >= 1");
  if (count == 1) return {lo};
  std::vector<double> v(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) v[i] = lo + static_cast<double>(i) * step;
  v.back() = hi;
  return v;
}

double sample_truncated_normal(RandomStream& rng, double variance, double bound, int retry_cap) {
  if (!(variance >= 0.0) || !(bound >= 0.0)) {
    throw std::invalid_argument("truncated normal: variance and bound must be >= 0");
  }
  if (variance == 0.0 || bound == 0.0) return 0.0;
  const double sigma = std::sqrt(variance);
  for (int attempt = 0; attempt < retry_cap; ++attempt) {
    const double e = sigma * rng.standard_normal();
    if (std::abs(e) <= bound) return e;
  }
  throw std::runtime_error("truncated normal: " + std::to_string(retry_cap) +
                           " rejections; variance " + std::to_string(variance) +
                           " is far too large for bound " + std::to_string(bound));
}

double truncated_normal_variance(double variance, double bound) {
  if (variance == 0.0 || bound == 0.0) return 0.0;
  const double sigma = std::sqrt(variance);
  const double beta = bound / sigma;
  const double pdf = std::exp(-0.5 * beta * beta) / std::sqrt(2.0 * std::numbers::pi);
  const double mass = std::erf(beta / std::numbers::sqrt2);  // P(|Z| <= beta)
  return variance * (1.0 - 2.0 * beta * pdf / mass);
}

BuyExpertPanel::BuyExpertPanel(std::vector<double> variances, double noise_bound,
                               IntRange ground_truth_range)
    : variances_(std::move(variances)), noise_bound_(noise_bound), range_(ground_truth_range) {
  if (variances_.empty()) throw std::invalid_argument("buy panel needs at least one expert");
  for (double g : variances_) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw std::invalid_argument("buy variances must be >= 0");
  }
  if (!(noise_bound >= 0.0) || !std::isfinite(noise_bound)) {
    throw std::invalid_argument("noise bound must be finite and >= 0");
  }
  if (range_.lo < 2 || range_.lo > range_.hi) {
    throw std::invalid_argument("buy-cost range must satisfy 2 <= lo <= hi");
  }
  best_ = static_cast<std::size_t>(std::min_element(variances_.begin(), variances_.end()) -
                                   variances_.begin());
}

std::vector<double> BuyExpertPanel::gaps() const {
  std::vector<double> g(variances_.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = variances_[i] - gamma_min();
  return g;
}

double BuyExpertPanel::min_gap() const noexcept {
  double best = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < variances_.size(); ++i) {
    if (i == best_) continue;
    const double d = variances_[i] - gamma_min();
    if (!any || d < best) best = d;
    any = true;
  }
  return best;
}

bool BuyExpertPanel::gap_tied() const noexcept { return size() > 1 && min_gap() == 0.0; }

std::vector<double> BuyExpertPanel::effective_variances() const {
  std::vector<double> v(variances_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = truncated_normal_variance(variances_[i], noise_bound_);
  return v;
}

std::vector<double> BuyExpertPanel::predict(std::int64_t b_true, RandomStream& rng) const {
  if (!range_.contains(b_true)) {
    throw std::invalid_argument("true buy cost " + std::to_string(b_true) + " outside panel range");
  }
  std::vector<double> a(variances_.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<double>(b_true) + sample_truncated_normal(rng, variances_[i], noise_bound_);
  }
  return a;
}

SkiExpertPanel::SkiExpertPanel(std::vector<double> variances) : variances_(std::move(variances)) {
  if (variances_.empty()) throw std::invalid_argument("ski panel needs at least one expert");
  for (double v : variances_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("ski variances must be >= 0");
  }
}

std::vector<std::int64_t> SkiExpertPanel::predict(std::int64_t x_true, RandomStream& rng) const {
  if (x_true < 1) throw std::invalid_argument("true season length must be >= 1");
  std::vector<std::int64_t> y(variances_.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double e = variances_[j] == 0.0 ? 0.0 : std::sqrt(variances_[j]) * rng.standard_normal();
    y[j] = std::max<std::int64_t>(0, nint(static_cast<double>(x_true) + e));
  }
  return y;
}

SkiRentalInstance draw_instance(IntRange buy_costs, IntRange season_lengths, RandomStream& rng) {
  if (buy_costs.lo > buy_costs.hi || season_lengths.lo > season_lengths.hi) {
    throw std::invalid_argument("draw_instance: empty interval");
  }
  if (buy_costs.lo < 2 || season_lengths.lo < 1) {
    throw std::invalid_argument("draw_instance: need buy costs >= 2 and season lengths >= 1");
  }
  const std::int64_t b = rng.uniform_int(buy_costs.lo, buy_costs.hi);
  const std::int64_t x = rng.uniform_int(season_lengths.lo, season_lengths.hi);
  return {b, x};
}

}  // namespace skirental
