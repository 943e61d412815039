#pragma once

// Run configuration: a JSON document with a fixed schema. Unknown keys are
// rejected; every field has a default, so "{}" is a valid configuration.
//
//   {
//     "kind": "compare" | "regret" | "bounds",
//     "seed": 1, "output_dir": "out", "loss_mode": "expected" | "sampled",
//     "threads": 1, "chart": false,
//     "compare": {"b": 100, "sigmas": [0, 2.5, ...], "lambdas": [1, 0.405...],
//                 "trials": 10000},
//     "regret": {"horizon": 5000, "buy_experts": 5, "ski_experts": 5,
//                "buy_cost_range": [200, 700], "season_range": [200, 700],
//                "gamma_range": [1, 20], "eta_range": [1, 100],
//                "noise_bound": 50, "lambda": 0.405..., "seeds": 100,
//                "ski_loss_scale": 1, "buy_loss_scale": 1,
//                "ski_rate": null, "buy_rate_scale": null, "delta": 0.1,
//                "sweep": {"lambda": [], "ski_experts": [], "buy_experts": []}},
//     "bounds": {"b": 100, "lambda": 0.405..., "eta": 0, "opt": null,
//                "delta": 0.1, "epsilon": null, "Delta": 1, "m": 5, "c": 2,
//                "T": 10000, "n": 5, "B": null}
//   }
//
// Empty sweep lists mean "use the base value"; non-empty lists are crossed
// (lambda-major, then ski_experts, then buy_experts) to form config ids.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skirental/experiments.hpp"
#include "skirental/learner.hpp"
#include "json.hpp"

namespace skirental {

enum class ExperimentKind { Compare, Regret, Bounds };

const char* to_string(ExperimentKind kind) noexcept;

struct BoundsArgs {
  std::int64_t b = 100;
  double lambda = 0.4054651081081644;
  double eta = 0.0;
  std::optional<std::int64_t> opt;      // defaults to b
  double delta = 0.1;
  std::optional<double> epsilon;        // defaults to the robustness radius of (b, lambda)
  double gap = 1.0;                     // Delta
  std::int64_t m = 5;
  double c = 2.0;
  std::int64_t horizon = 10000;         // T
  std::size_t n = 5;
  std::optional<double> loss_bound;     // B; defaults to the bound for the range [b, b]

  friend bool operator==(const BoundsArgs&, const BoundsArgs&) = default;
};

struct RegretSweep {
  std::vector<double> lambdas;
  std::vector<std::size_t> ski_experts;
  std::vector<std::size_t> buy_experts;

  friend bool operator==(const RegretSweep&, const RegretSweep&) = default;
};

struct Config {
  ExperimentKind kind = ExperimentKind::Compare;
  std::uint64_t master_seed = 1;
  std::string output_dir = "out";
  LossMode loss_mode = LossMode::Expected;
  unsigned threads = 1;
  bool chart = false;

  CompareScenario compare;

  LearnerConfig regret;
  std::int64_t regret_seeds = 100;
  double regret_delta = 0.1;  // confidence level for the regime check
  RegretSweep sweep;

  BoundsArgs bounds;

  /// The crossed sweep, with loss_mode applied to each learner.
  std::vector<RegretScenario> regret_scenarios() const;

  friend bool operator==(const Config&, const Config&) = default;
};

/// Throws ConfigError naming the offending key.
Config config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const Config& config);

Config load_config(const std::string& path);
Config parse_config(const std::string& text);

}  // namespace skirental
