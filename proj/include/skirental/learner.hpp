#pragma once

// Sequential ski rental: a buy-cost panel (decreasing-rate Hedge on squared
// errors) feeds a weighted estimate b_s to a panel of ski experts, each of
// which runs the cost-robust rule; the ski panel is a constant-rate Hedge.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skirental/experts.hpp"
#include "skirental/hedge.hpp"
#include "skirental/random_stream.hpp"
#include "skirental/ski_core.hpp"

namespace skirental {

enum class LossMode {
  Expected,  // closed-form expectation over the buy day
  Sampled,   // one buy day per expert; realized and hindsight share the uniform
};

const char* to_string(LossMode mode) noexcept;
LossMode parse_loss_mode(const std::string& text);

struct LearnerParams {
  double lambda = 0.4054651081081644;  // ln 1.5
  std::int64_t horizon = 5000;         // T, tunes the constant ski rate
  LossMode loss_mode = LossMode::Expected;
  /// Ski losses are divided by this inside the default rate sqrt(ln n / T) / L.
  double ski_loss_scale = 1.0;
  /// Squared buy errors are divided by this before the buy-panel update.
  double buy_loss_scale = 1.0;
  /// Explicit constant ski rate; replaces the default when set.
  std::optional<double> ski_rate;
  /// Explicit decreasing-rate scale for the buy panel; replaces sqrt(ln m).
  std::optional<double> buy_rate_scale;
};

struct RoundRecord {
  std::int64_t t = 0;  // 1-based
  SkiRentalInstance instance{2, 1};
  std::vector<double> buy_predictions;      // a^t
  std::vector<double> alpha;                // buy weights used this round
  double b_s = 0.0;                         // a^t . alpha^t
  std::vector<std::int64_t> ski_predictions;  // y^t
  std::vector<double> beta;                 // ski weights used this round
  std::vector<double> losses;               // l^t with b_s
  std::vector<double> hindsight_losses;     // l^t with the true b^t
  std::vector<double> buy_squared_errors;   // raw (a_i - b)^2
  double mixture_loss = 0.0;                // beta . losses
};

/// One pass of the two-panel learner. Owns both Hedge states.
class SequentialSkiRental {
 public:
  SequentialSkiRental(BuyExpertPanel buy_panel, SkiExpertPanel ski_panel, LearnerParams params);

  /// One loop body: buy predictions, alpha, b_s, ski predictions, beta,
  /// realized and hindsight losses, then both weight updates. Throws
  /// InvalidHyperparameter when lambda * b_s < 1.
  RoundRecord run_round(const SkiRentalInstance& instance, RandomStream& rng);

  const HedgeState& buy_state() const noexcept { return buy_; }
  const HedgeState& ski_state() const noexcept { return ski_; }
  const LearnerParams& params() const noexcept { return params_; }
  const BuyExpertPanel& buy_panel() const noexcept { return buy_panel_; }
  const SkiExpertPanel& ski_panel() const noexcept { return ski_panel_; }

 private:
  const BuyDayDistribution& distribution(double b_input, std::int64_t y);

  BuyExpertPanel buy_panel_;
  SkiExpertPanel ski_panel_;
  LearnerParams params_;
  HedgeState buy_;
  HedgeState ski_;
  std::int64_t t_ = 0;
  // The rule's output depends only on (branch, support size) once lambda is fixed.
  std::map<std::pair<Branch, std::int64_t>, BuyDayDistribution> cache_;
};

/// Synthetic experiment protocol for one learner run.
struct LearnerConfig {
  std::int64_t horizon = 5000;
  std::size_t buy_experts = 5;
  std::size_t ski_experts = 5;
  IntRange buy_cost_range{200, 700};
  IntRange season_range{200, 700};
  double gamma_min = 1.0;
  double gamma_max = 20.0;
  double eta_min = 1.0;
  double eta_max = 100.0;
  double noise_bound = 50.0;
  double lambda = 0.4054651081081644;  // ln 1.5
  LossMode loss_mode = LossMode::Expected;
  double ski_loss_scale = 1.0;
  double buy_loss_scale = 1.0;
  std::optional<double> ski_rate;
  std::optional<double> buy_rate_scale;

  LearnerParams params() const;
  BuyExpertPanel make_buy_panel() const;
  SkiExpertPanel make_ski_panel() const;

  friend bool operator==(const LearnerConfig&, const LearnerConfig&) = default;
};

/// Stable text hash (FNV-1a, hex) of every field that affects a run.
std::string fingerprint(const LearnerConfig& config);

struct RunTrace {
  std::vector<RoundRecord> records;
  std::vector<double> cumulative_regret;  // regret_x[t] + regret_b[t]
  std::vector<double> regret_x;
  std::vector<double> regret_b;
  std::size_t best_ski_expert = 0;  // j*, fixed at the horizon
  std::vector<double> final_alpha;  // buy weights after the last update
  std::vector<double> final_beta;
  std::string config_fingerprint;
  std::uint64_t seed = 0;
};

/// T rounds with instances and predictions drawn from one stream seeded by
/// `seed`. j* minimizes cumulative hindsight loss at the horizon.
RunTrace run(const LearnerConfig& config, std::uint64_t seed);

struct RegretComponents {
  std::size_t best_expert;    // j*
  std::vector<double> regret_x;
  std::vector<double> regret_b;
};

/// Split of the regret against j*: regret_x compares the mixture with j*'s
/// realized losses, regret_b compares j*'s realized and hindsight losses.
RegretComponents regret_components(const std::vector<RoundRecord>& records);

/// The four per-round loss bounds for a buy-cost range and their maximum B.
struct LossBound {
  double buy_by_day_in_season;    // b <= x, x >= d: (b_min - 1)(1 + 1/b)
  double season_ends_before_buy;  // b <= x, x < d: b_min
  double rent_throughout;         // b > x, x < d: 0
  double buy_in_short_season;     // b > x, x >= d: b
  double value;                   // max over the cases
};

LossBound loss_bound_B(IntRange buy_costs);

/// Number of rounds after which b_s stays within the robustness radius with
/// probability 1 - delta, under gamma_min = delta eps^2 / (T c).
std::int64_t t_star(double delta, double epsilon, double gap, std::int64_t m, double c,
                    std::int64_t horizon);

/// (1 + B^2) sqrt(T ln n): the bound on the ski-panel part of the regret.
double regret_x_bound(double loss_bound, std::int64_t horizon, std::size_t n);

/// (1 + B^2) sqrt(T ln n) + B t*.
double regret_bound(double loss_bound, std::int64_t horizon, std::size_t n, std::int64_t t_star_value);

/// Whether a run lies in the regime of the high-probability regret bound:
/// noise in [-1, 1], m >= 2, a strict variance gap, and c > 1 where c is
/// implied by gamma_min = delta eps^2 / (T c) with eps the smallest
/// robustness radius met in the run.
struct RegimeReport {
  bool satisfied = false;
  std::string reason;
  double implied_c = 0.0;
  double epsilon_min = 0.0;
  std::int64_t t_star = 0;
};

RegimeReport high_probability_regime(const LearnerConfig& config, double epsilon_min, double delta);

}  // namespace skirental
