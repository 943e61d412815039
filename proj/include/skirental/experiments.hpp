#pragma once

// Scenario drivers: the competitive-ratio comparison against prediction
// noise and the regret sweeps over lambda, n and m.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "skirental/learner.hpp"
#include "skirental/ski_core.hpp"

namespace skirental {

enum class Algorithm {
  CostRobust,        // the cost-robust randomized rule
  PriorRandomized,   // Purohit-Svitkina-Kumar randomized rule, base (1 - 1/b)
  BreakEven,         // buy on day b
};

const char* to_string(Algorithm a) noexcept;

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::CostRobust, Algorithm::PriorRandomized,
                                               Algorithm::BreakEven};

/// Buy-day distribution of the prior-work randomized rule for an integer
/// buy cost: y >= b picks k = floor(lambda b), otherwise l = ceil(b / lambda),
/// with weights proportional to (1 - 1/b)^(size - i).
BuyDayDistribution prior_randomized_distribution(std::int64_t b, std::int64_t y, double lambda);

/// Buy-day distribution used by `algorithm` with the true cost b.
BuyDayDistribution algorithm_distribution(Algorithm algorithm, std::int64_t b, std::int64_t y,
                                          double lambda);

/// sigma grid lo, lo + step, ..., up to hi (inclusive within 1e-9).
std::vector<double> sigma_grid(double lo, double hi, double step);

struct CompareScenario {
  std::int64_t b = 100;
  std::vector<double> sigmas = sigma_grid(0.0, 50.0, 2.5);
  std::vector<double> lambdas = {1.0, 0.4054651081081644};
  std::int64_t trials = 10000;
  std::uint64_t scenario_id = 0;

  friend bool operator==(const CompareScenario&, const CompareScenario&) = default;
};

struct CompareRow {
  double sigma;
  Algorithm algorithm;
  double lambda;
  double mean_cr;
  double stderr_cr;
  std::int64_t trials;
};

/// Per trial: x ~ U{1..4b}, z ~ N(0, 1), u ~ U[0, 1), y = max(0, nint(x + sigma z)),
/// buy day d = inverse-CDF(u). (x, z, u) is shared by every sigma, lambda and
/// algorithm of the trial. Rows are ordered sigma-major, then algorithm, then lambda.
std::vector<CompareRow> run_compare(const CompareScenario& scenario, std::uint64_t master_seed,
                                    unsigned threads = 1);

struct RegretScenario {
  LearnerConfig learner;
  std::int64_t seeds = 100;
};

/// Seed-averaged regret curves of one scenario.
struct RegretCurve {
  std::size_t config_id = 0;
  std::vector<double> regret;    // regret_x + regret_b, per round
  std::vector<double> regret_x;
  std::vector<double> regret_b;
  double final_regret_stderr = 0.0;  // across seeds, at the horizon
  double max_round_loss = 0.0;       // largest realized ski-expert loss seen
  double min_robustness_radius = 0.0;  // smallest radius over the drawn buy costs
  std::vector<double> mean_final_alpha;
  std::int64_t seeds = 0;
};

/// Runs every scenario for its seeds; seed s of scenario c uses the stream
/// derive_stream_seed(master_seed, c + 1, s).
std::vector<RegretCurve> run_regret_sweep(std::span<const RegretScenario> scenarios,
                                          std::uint64_t master_seed, unsigned threads = 1);

/// Seed used for run `seed_index` of scenario `config_id` in a sweep.
std::uint64_t sweep_run_seed(std::uint64_t master_seed, std::size_t config_id,
                             std::int64_t seed_index) noexcept;

}  // namespace skirental
