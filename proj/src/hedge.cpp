#include "skirental/hedge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace skirental {

namespace {

double log_panel(std::size_t n) { return std::log(static_cast<double>(n)); }

}  // namespace

HedgeState::HedgeState(std::size_t num_experts, RateSchedule schedule)
    : cumulative_(num_experts, 0.0), schedule_(schedule) {
  if (num_experts == 0) throw std::invalid_argument("hedge needs at least one expert");
  const double r = std::visit(
      [](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ConstantRate>) return s.rate;
        else return s.scale;
      },
      schedule_);
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("learning rate must be finite and >= 0");
}

HedgeState HedgeState::constant_for_horizon(std::size_t num_experts, std::int64_t horizon,
                                            double loss_bound) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!(loss_bound > 0.0)) throw std::invalid_argument("loss bound must be positive");
  return {num_experts,
          ConstantRate{std::sqrt(log_panel(num_experts) / static_cast<double>(horizon)) / loss_bound}};
}

HedgeState HedgeState::decreasing(std::size_t num_experts, double loss_bound) {
  if (!(loss_bound > 0.0)) throw std::invalid_argument("loss bound must be positive");
  return {num_experts, DecreasingRate{std::sqrt(log_panel(num_experts)) / loss_bound}};
}

double HedgeState::learning_rate() const noexcept {
  if (const auto* c = std::get_if<ConstantRate>(&schedule_)) return c->rate;
  const double t = static_cast<double>(std::max<std::int64_t>(round_, 1));
  return std::get<DecreasingRate>(schedule_).scale / std::sqrt(t);
}

std::vector<double> HedgeState::weights() const {
  const double eta = learning_rate();
  const double floor = *std::min_element(cumulative_.begin(), cumulative_.end());
  std::vector<double> w(cumulative_.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(-eta * (cumulative_[i] - floor));
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

void HedgeState::update(std::span<const double> losses) {
  if (losses.size() != cumulative_.size()) {
    throw std::invalid_argument("loss vector has " + std::to_string(losses.size()) +
                                " entries, panel has " + std::to_string(cumulative_.size()));
  }
  for (double l : losses) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw std::invalid_argument("losses must be finite and >= 0");
  }
  for (std::size_t i = 0; i < losses.size(); ++i) cumulative_[i] += losses[i];
  ++round_;
}

std::size_t HedgeState::best_expert() const noexcept {
  return static_cast<std::size_t>(std::min_element(cumulative_.begin(), cumulative_.end()) -
                                  cumulative_.begin());
}

double regret_to_best(const HedgeState& state, std::span<const double> mixture_losses) {
  if (static_cast<std::int64_t>(mixture_losses.size()) != state.round()) {
    throw std::invalid_argument("need one mixture loss per completed round");
  }
  double total = 0.0;
  for (double l : mixture_losses) total += l;
  return total - state.cumulative_losses()[state.best_expert()];
}

double mixture_loss(std::span<const double> weights, std::span<const double> losses) {
  if (weights.size() != losses.size()) throw std::invalid_argument("weight/loss length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * losses[i];
  return s;
}

}  // namespace skirental
