#include "skirental/learner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "skirental/errors.hpp"

namespace skirental {

const char* to_string(LossMode mode) noexcept {
  return mode == LossMode::Expected ? "expected" : "sampled";
}

LossMode parse_loss_mode(const std::string& text) {
  if (text == "expected") return LossMode::Expected;
  if (text == "sampled") return LossMode::Sampled;
  throw std::invalid_argument("loss mode must be 'expected' or 'sampled', got '" + text + "'");
}

namespace {

HedgeState make_ski_state(std::size_t n, const LearnerParams& p) {
  if (p.ski_rate) return {n, ConstantRate{*p.ski_rate}};
  return HedgeState::constant_for_horizon(n, std::max<std::int64_t>(p.horizon, 1), p.ski_loss_scale);
}

HedgeState make_buy_state(std::size_t m, const LearnerParams& p) {
  if (p.buy_rate_scale) return {m, DecreasingRate{*p.buy_rate_scale}};
  return HedgeState::decreasing(m, 1.0);
}

}  // namespace

SequentialSkiRental::SequentialSkiRental(BuyExpertPanel buy_panel, SkiExpertPanel ski_panel,
                                         LearnerParams params)
    : buy_panel_(std::move(buy_panel)),
      ski_panel_(std::move(ski_panel)),
      params_(params),
      buy_(make_buy_state(buy_panel_.size(), params_)),
      ski_(make_ski_state(ski_panel_.size(), params_)) {
  if (!(params_.lambda > 0.0 && params_.lambda <= 1.0)) {
    throw InvalidHyperparameter("lambda must lie in (0, 1]");
  }
  if (!(params_.buy_loss_scale > 0.0)) throw std::invalid_argument("buy loss scale must be positive");
}

const BuyDayDistribution& SequentialSkiRental::distribution(double b_input, std::int64_t y) {
  const Branch branch = select_branch(b_input, y);
  const std::int64_t size = support_size_for(branch, b_input, params_.lambda);
  const auto key = std::make_pair(branch, size);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    it = cache_.emplace(key, make_buy_day_distribution(branch, size, params_.lambda)).first;
  }
  return it->second;
}

RoundRecord SequentialSkiRental::run_round(const SkiRentalInstance& instance, RandomStream& rng) {
  RoundRecord rec;
  rec.t = ++t_;
  rec.instance = instance;
  const std::int64_t b = instance.buy_cost();

  rec.buy_predictions = buy_panel_.predict(b, rng);
  rec.alpha = buy_.weights();
  rec.b_s = mixture_loss(rec.alpha, rec.buy_predictions);
  if (!(params_.lambda * rec.b_s >= 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "round " << rec.t << ": lambda * b_s < 1 for b_s = " << rec.b_s
        << " (lambda = " << params_.lambda << ")";
    throw InvalidHyperparameter(msg.str());
  }

  rec.ski_predictions = ski_panel_.predict(instance.season_length(), rng);
  rec.beta = ski_.weights();

  const std::size_t n = ski_panel_.size();
  rec.losses.resize(n);
  rec.hindsight_losses.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t y = rec.ski_predictions[j];
    const BuyDayDistribution& realized = distribution(rec.b_s, y);
    const BuyDayDistribution& hindsight = distribution(static_cast<double>(b), y);
    if (params_.loss_mode == LossMode::Expected) {
      rec.losses[j] = expected_loss(instance, realized);
      rec.hindsight_losses[j] = expected_loss(instance, hindsight);
    } else {
      const double u = rng.uniform();
      rec.losses[j] = loss_for_day(instance, realized.day_at(u));
      rec.hindsight_losses[j] = loss_for_day(instance, hindsight.day_at(u));
    }
  }
  rec.mixture_loss = mixture_loss(rec.beta, rec.losses);

  rec.buy_squared_errors.resize(buy_panel_.size());
  std::vector<double> buy_losses(buy_panel_.size());
  for (std::size_t i = 0; i < buy_losses.size(); ++i) {
    const double e = rec.buy_predictions[i] - static_cast<double>(b);
    rec.buy_squared_errors[i] = e * e;
    buy_losses[i] = e * e / params_.buy_loss_scale;
  }
  ski_.update(rec.losses);
  buy_.update(buy_losses);
  return rec;
}

LearnerParams LearnerConfig::params() const {
  LearnerParams p;
  p.lambda = lambda;
  p.horizon = horizon;
  p.loss_mode = loss_mode;
  p.ski_loss_scale = ski_loss_scale;
  p.buy_loss_scale = buy_loss_scale;
  p.ski_rate = ski_rate;
  p.buy_rate_scale = buy_rate_scale;
  return p;
}

BuyExpertPanel LearnerConfig::make_buy_panel() const {
  return {linspace_variances(gamma_min, gamma_max, buy_experts), noise_bound, buy_cost_range};
}

SkiExpertPanel LearnerConfig::make_ski_panel() const {
  return SkiExpertPanel(linspace_variances(eta_min, eta_max, ski_experts));
}

std::string fingerprint(const LearnerConfig& c) {
  std::ostringstream s;
  s.precision(17);
  s << c.horizon << '|' << c.buy_experts << '|' << c.ski_experts << '|' << c.buy_cost_range.lo
    << ',' << c.buy_cost_range.hi << '|' << c.season_range.lo << ',' << c.season_range.hi << '|'
    << c.gamma_min << ',' << c.gamma_max << '|' << c.eta_min << ',' << c.eta_max << '|'
    << c.noise_bound << '|' << c.lambda << '|' << to_string(c.loss_mode) << '|'
    << c.ski_loss_scale << '|' << c.buy_loss_scale << '|'
    << (c.ski_rate ? *c.ski_rate : -1.0) << '|' << (c.buy_rate_scale ? *c.buy_rate_scale : -1.0);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s.str()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RegretComponents regret_components(const std::vector<RoundRecord>& records) {
  RegretComponents out{0, {}, {}};
  if (records.empty()) return out;
  const std::size_t n = records.front().hindsight_losses.size();
  std::vector<double> hindsight_total(n, 0.0);
  for (const auto& r : records) {
    for (std::size_t j = 0; j < n; ++j) hindsight_total[j] += r.hindsight_losses[j];
  }
  const std::size_t js = static_cast<std::size_t>(
      std::min_element(hindsight_total.begin(), hindsight_total.end()) - hindsight_total.begin());
  out.best_expert = js;
  out.regret_x.reserve(records.size());
  out.regret_b.reserve(records.size());
  double rx = 0.0, rb = 0.0;
  for (const auto& r : records) {
    rx += r.mixture_loss - r.losses[js];
    rb += r.losses[js] - r.hindsight_losses[js];
    out.regret_x.push_back(rx);
    out.regret_b.push_back(rb);
  }
  return out;
}

RunTrace run(const LearnerConfig& config, std::uint64_t seed) {
  if (config.horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  RunTrace trace;
  trace.seed = seed;
  trace.config_fingerprint = fingerprint(config);

  SequentialSkiRental learner(config.make_buy_panel(), config.make_ski_panel(), config.params());
  RandomStream rng(seed);
  trace.records.reserve(static_cast<std::size_t>(config.horizon));
  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    const SkiRentalInstance inst = draw_instance(config.buy_cost_range, config.season_range, rng);
    try {
      trace.records.push_back(learner.run_round(inst, rng));
    } catch (const InvalidHyperparameter& e) {
      throw InvalidHyperparameter(std::string("run (seed ") + std::to_string(seed) + "): " + e.what());
    }
  }
  RegretComponents parts = regret_components(trace.records);
  trace.best_ski_expert = parts.best_expert;
  trace.regret_x = std::move(parts.regret_x);
  trace.regret_b = std::move(parts.regret_b);
  trace.cumulative_regret.resize(trace.regret_x.size());
  for (std::size_t t = 0; t < trace.regret_x.size(); ++t) {
    trace.cumulative_regret[t] = trace.regret_x[t] + trace.regret_b[t];
  }
  trace.final_alpha = learner.buy_state().weights();
  trace.final_beta = learner.ski_state().weights();
  return trace;
}

LossBound loss_bound_B(IntRange buy_costs) {
  if (buy_costs.lo < 2 || buy_costs.lo > buy_costs.hi) {
    throw std::invalid_argument("buy-cost range must satisfy 2 <= lo <= hi");
  }
  const double b_min = static_cast<double>(buy_costs.lo);
  const double b_max = static_cast<double>(buy_costs.hi);
  LossBound lb{};
  // (b_min - 1)(1 + 1/b) is largest at the smallest b.
  lb.buy_by_day_in_season = (b_min - 1.0) * (1.0 + 1.0 / b_min);
  lb.season_ends_before_buy = b_min;
  lb.rent_throughout = 0.0;
  lb.buy_in_short_season = b_max;
  lb.value = std::max({lb.buy_by_day_in_season, lb.season_ends_before_buy, lb.rent_throughout,
                       lb.buy_in_short_season});
  return lb;
}

std::int64_t t_star(double delta, double epsilon, double gap, std::int64_t m, double c,
                    std::int64_t horizon) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("robustness radius must be positive");
  if (!(gap > 0.0)) throw std::invalid_argument("sub-optimality gap must be positive");
  if (m < 2) throw std::invalid_argument("need m >= 2 buy experts");
  if (!(c > 1.0)) throw std::invalid_argument("c must be > 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const double md = static_cast<double>(m);
  const double log_arg = std::log(2.0 * md / (c - 1.0) *
                                  (1.0 + static_cast<double>(horizon) * c * gap / (delta * epsilon * epsilon)));
  const double g2 = gap * gap;
  const double hoeffding = 1.0 + 8.0 / g2 * log_arg;
  const double weight_decay = 1.0 + log_arg * log_arg / (2.0 * g2 * std::log(md));
  const double warmup = 1.0 + std::ceil(4.0 / g2);
  return static_cast<std::int64_t>(std::ceil(std::max({hoeffding, weight_decay, warmup})));
}

double regret_x_bound(double loss_bound, std::int64_t horizon, std::size_t n) {
  if (!(loss_bound >= 0.0) || horizon < 1 || n < 1) {
    throw std::invalid_argument("regret bound needs B >= 0, T >= 1, n >= 1");
  }
  return (1.0 + loss_bound * loss_bound) *
         std::sqrt(static_cast<double>(horizon) * std::log(static_cast<double>(n)));
}

double regret_bound(double loss_bound, std::int64_t horizon, std::size_t n, std::int64_t t_star_value) {
  if (t_star_value < 1) throw std::invalid_argument("t* must be >= 1");
  return regret_x_bound(loss_bound, horizon, n) + loss_bound * static_cast<double>(t_star_value);
}

RegimeReport high_probability_regime(const LearnerConfig& config, double epsilon_min, double delta) {
  RegimeReport rep;
  rep.epsilon_min = epsilon_min;
  const BuyExpertPanel panel = config.make_buy_panel();
  if (config.noise_bound > 1.0) {
    rep.reason = "buy noise bound " + std::to_string(config.noise_bound) + " exceeds 1";
    return rep;
  }
  if (panel.size() < 2) {
    rep.reason = "fewer than two buy experts";
    return rep;
  }
  if (!(panel.min_gap() > 0.0)) {
    rep.reason = "no strict variance gap between the best buy expert and the rest";
    return rep;
  }
  if (!(epsilon_min > 0.0)) {
    rep.reason = "some round has robustness radius 0";
    return rep;
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    rep.reason = "delta must lie in (0, 1)";
    return rep;
  }
  if (!(panel.gamma_min() > 0.0)) {
    rep.reason = "best buy expert has zero variance";
    return rep;
  }
  rep.implied_c = delta * epsilon_min * epsilon_min /
                  (static_cast<double>(config.horizon) * panel.gamma_min());
  if (!(rep.implied_c > 1.0)) {
    rep.reason = "gamma_min too large: implied c = " + std::to_string(rep.implied_c) + " <= 1";
    return rep;
  }
  rep.t_star = t_star(delta, epsilon_min, panel.min_gap(), static_cast<std::int64_t>(panel.size()),
                      rep.implied_c, config.horizon);
  if (config.horizon <= rep.t_star) {
    rep.reason = "horizon does not exceed t* = " + std::to_string(rep.t_star);
    return rep;
  }
  rep.satisfied = true;
  return rep;
}

}  // namespace skirental
