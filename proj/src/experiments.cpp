#include "skirental/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "skirental/errors.hpp"
#include "skirental/experts.hpp"
#include "skirental/parallel.hpp"
#include "skirental/random_stream.hpp"

namespace skirental {

const char* to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::CostRobust: return "cost_robust";
    case Algorithm::PriorRandomized: return "prior_randomized";
    case Algorithm::BreakEven: return "break_even";
  }
  return "unknown";
}

BuyDayDistribution prior_randomized_distribution(std::int64_t b, std::int64_t y, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw InvalidHyperparameter("lambda must lie in (0, 1]");
  const double bd = static_cast<double>(b);
  if (lambda * bd < 1.0) throw InvalidHyperparameter("lambda * b must be >= 1");
  const bool late = y >= b;
  const auto size = static_cast<std::int64_t>(late ? std::floor(lambda * bd) : std::ceil(bd / lambda));
  const double base = 1.0 - 1.0 / bd;
  const double scale = 1.0 / (bd * (1.0 - std::pow(base, static_cast<double>(size))));
  std::vector<double> p(static_cast<std::size_t>(size));
  for (std::int64_t i = 1; i <= size; ++i) {
    p[static_cast<std::size_t>(i - 1)] = std::pow(base, static_cast<double>(size - i)) * scale;
  }
  return BuyDayDistribution(late ? Branch::BuyLate : Branch::BuyEarly, std::move(p));
}

BuyDayDistribution algorithm_distribution(Algorithm algorithm, std::int64_t b, std::int64_t y,
                                          double lambda) {
  switch (algorithm) {
    case Algorithm::CostRobust:
      return buy_day_distribution(static_cast<double>(b), y, lambda);
    case Algorithm::PriorRandomized:
      return prior_randomized_distribution(b, y, lambda);
    case Algorithm::BreakEven: {
      std::vector<double> p(static_cast<std::size_t>(b), 0.0);
      p.back() = 1.0;
      return BuyDayDistribution(Branch::BuyLate, std::move(p));
    }
  }
  throw std::logic_error("unknown algorithm");
}

std::vector<double> sigma_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || lo > hi) throw std::invalid_argument("sigma grid needs step > 0 and lo <= hi");
  std::vector<double> g;
  for (std::int64_t i = 0;; ++i) {
    const double v = lo + static_cast<double>(i) * step;
    if (v > hi + 1e-9) break;
    g.push_back(v);
  }
  return g;
}

namespace {

// Both branches of one algorithm at one lambda, built once per run.
struct BranchPair {
  BuyDayDistribution late;
  BuyDayDistribution early;
};

}  // namespace

std::vector<CompareRow> run_compare(const CompareScenario& s, std::uint64_t master_seed,
                                    unsigned threads) {
  if (s.trials < 1) throw std::invalid_argument("compare: trials must be >= 1");
  if (s.sigmas.empty()) throw std::invalid_argument("compare: sigma grid must be non-empty");
  if (s.lambdas.empty()) throw std::invalid_argument("compare: need at least one lambda");
  for (double sg : s.sigmas) {
    if (!(sg >= 0.0)) throw std::invalid_argument("compare: sigma must be >= 0");
  }
  const SkiRentalInstance probe(s.b, 1);  // validates b

  const std::size_t n_alg = std::size(kAllAlgorithms);
  const std::size_t n_lam = s.lambdas.size();
  std::vector<BranchPair> dists;  // [alg * n_lam + lam]
  dists.reserve(n_alg * n_lam);
  for (Algorithm a : kAllAlgorithms) {
    for (double lam : s.lambdas) {
      dists.push_back({algorithm_distribution(a, s.b, s.b, lam), algorithm_distribution(a, s.b, s.b - 1, lam)});
    }
  }

  const std::size_t cells = s.sigmas.size() * n_alg * n_lam;
  const auto trials = static_cast<std::size_t>(s.trials);
  std::vector<double> ratios(trials * cells);
  parallel_for(trials, threads, [&](std::size_t trial) {
    RandomStream rng(derive_stream_seed(master_seed, s.scenario_id, trial));
    const std::int64_t x = rng.uniform_int(1, 4 * s.b);
    const double z = rng.standard_normal();
    const double u = rng.uniform();
    const SkiRentalInstance inst(s.b, x);
    const double opt = static_cast<double>(opt_cost(inst));
    double* out = &ratios[trial * cells];
    for (std::size_t si = 0; si < s.sigmas.size(); ++si) {
      const std::int64_t y = std::max<std::int64_t>(0, nint(static_cast<double>(x) + s.sigmas[si] * z));
      for (std::size_t k = 0; k < n_alg * n_lam; ++k) {
        const BuyDayDistribution& d = y >= s.b ? dists[k].late : dists[k].early;
        *out++ = static_cast<double>(alg_cost(inst, d.day_at(u))) / opt;
      }
    }
  });

  std::vector<CompareRow> rows;
  rows.reserve(cells);
  const double n = static_cast<double>(trials);
  for (std::size_t si = 0; si < s.sigmas.size(); ++si) {
    for (std::size_t ai = 0; ai < n_alg; ++ai) {
      for (std::size_t li = 0; li < n_lam; ++li) {
        const std::size_t cell = (si * n_alg + ai) * n_lam + li;
        KahanSum sum;
        for (std::size_t t = 0; t < trials; ++t) sum.add(ratios[t * cells + cell]);
        const double mean = sum.value() / n;
        KahanSum sq;
        for (std::size_t t = 0; t < trials; ++t) {
          const double d = ratios[t * cells + cell] - mean;
          sq.add(d * d);
        }
        const double se = trials > 1 ? std::sqrt(sq.value() / (n - 1.0) / n) : 0.0;
        rows.push_back({s.sigmas[si], kAllAlgorithms[ai], s.lambdas[li], mean, se, s.trials});
      }
    }
  }
  return rows;
}

std::uint64_t sweep_run_seed(std::uint64_t master_seed, std::size_t config_id,
                             std::int64_t seed_index) noexcept {
  return derive_stream_seed(master_seed, static_cast<std::uint64_t>(config_id) + 1,
                            static_cast<std::uint64_t>(seed_index));
}

namespace {

struct RunSummary {
  std::vector<double> regret_x;
  std::vector<double> regret_b;
  double max_loss = 0.0;
  double min_radius = std::numeric_limits<double>::infinity();
  std::vector<double> final_alpha;
};

RunSummary summarize(const RunTrace& trace, double lambda) {
  RunSummary s;
  s.regret_x = trace.regret_x;
  s.regret_b = trace.regret_b;
  s.final_alpha = trace.final_alpha;
  std::int64_t last_b = -1;
  for (const auto& r : trace.records) {
    for (double l : r.losses) s.max_loss = std::max(s.max_loss, l);
    if (r.instance.buy_cost() != last_b) {
      last_b = r.instance.buy_cost();
      s.min_radius = std::min(s.min_radius, robustness_radius(last_b, lambda).epsilon);
    }
  }
  return s;
}

}  // namespace

std::vector<RegretCurve> run_regret_sweep(std::span<const RegretScenario> scenarios,
                                          std::uint64_t master_seed, unsigned threads) {
  struct Job {
    std::size_t config;
    std::int64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < scenarios.size(); ++c) {
    if (scenarios[c].seeds < 1) throw std::invalid_argument("regret sweep: seeds must be >= 1");
    for (std::int64_t s = 0; s < scenarios[c].seeds; ++s) jobs.push_back({c, s});
  }
  std::vector<RunSummary> results(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const auto& cfg = scenarios[jobs[i].config].learner;
    results[i] = summarize(run(cfg, sweep_run_seed(master_seed, jobs[i].config, jobs[i].seed)), cfg.lambda);
  });

  std::vector<RegretCurve> curves;
  std::size_t first = 0;
  for (std::size_t c = 0; c < scenarios.size(); ++c) {
    const auto seeds = static_cast<std::size_t>(scenarios[c].seeds);
    const auto horizon = static_cast<std::size_t>(scenarios[c].learner.horizon);
    RegretCurve curve;
    curve.config_id = c;
    curve.seeds = scenarios[c].seeds;
    curve.regret.resize(horizon);
    curve.regret_x.resize(horizon);
    curve.regret_b.resize(horizon);
    const double n = static_cast<double>(seeds);
    for (std::size_t t = 0; t < horizon; ++t) {
      KahanSum rx, rb;
      for (std::size_t s = 0; s < seeds; ++s) {
        rx.add(results[first + s].regret_x[t]);
        rb.add(results[first + s].regret_b[t]);
      }
      curve.regret_x[t] = rx.value() / n;
      curve.regret_b[t] = rb.value() / n;
      curve.regret[t] = curve.regret_x[t] + curve.regret_b[t];
    }
    curve.min_robustness_radius = std::numeric_limits<double>::infinity();
    curve.mean_final_alpha.assign(scenarios[c].learner.buy_experts, 0.0);
    for (std::size_t s = 0; s < seeds; ++s) {
      const RunSummary& r = results[first + s];
      curve.max_round_loss = std::max(curve.max_round_loss, r.max_loss);
      curve.min_robustness_radius = std::min(curve.min_robustness_radius, r.min_radius);
      for (std::size_t i = 0; i < r.final_alpha.size(); ++i) curve.mean_final_alpha[i] += r.final_alpha[i] / n;
    }
    if (horizon > 0 && seeds > 1) {
      KahanSum sq;
      const double mean = curve.regret.back();
      for (std::size_t s = 0; s < seeds; ++s) {
        const double v = results[first + s].regret_x.back() + results[first + s].regret_b.back();
        sq.add((v - mean) * (v - mean));
      }
      curve.final_regret_stderr = std::sqrt(sq.value() / (n - 1.0) / n);
    }
    if (horizon == 0) curve.min_robustness_radius = 0.0;
    curves.push_back(std::move(curve));
    first += seeds;
  }
  return curves;
}

}  // namespace skirental
