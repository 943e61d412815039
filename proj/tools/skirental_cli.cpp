// skirental: compare | regret | bounds. See README.md for the config schema.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "skirental/commands.hpp"
#include "skirental/config.hpp"
#include "skirental/errors.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::int64_t> trials;
  std::optional<unsigned> threads;
  std::optional<std::string> loss_mode;
  bool chart = false;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
  app->add_option("--seed", f.seed, "master seed (64-bit unsigned)");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--trials", f.trials, "trials per sigma (compare) or seeds per config (regret)");
  app->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--loss-mode", f.loss_mode, "expected or sampled")
      ->check(CLI::IsMember({"expected", "sampled"}));
  app->add_flag("--chart", f.chart, "also write an SVG chart");
}

// File values first, then flags on top.
skirental::Config resolve(const CommonFlags& f, skirental::ExperimentKind kind) {
  skirental::Config cfg = f.config_path.empty() ? skirental::Config{} : skirental::load_config(f.config_path);
  cfg.kind = kind;
  if (f.seed) cfg.master_seed = *f.seed;
  if (f.out) cfg.output_dir = *f.out;
  if (f.trials) {
    if (*f.trials < 1) throw skirental::ConfigError("--trials: must be >= 1");
    cfg.compare.trials = *f.trials;
    cfg.regret_seeds = *f.trials;
  }
  if (f.threads) cfg.threads = *f.threads;
  if (f.loss_mode) {
    cfg.loss_mode = skirental::parse_loss_mode(*f.loss_mode);
    cfg.regret.loss_mode = cfg.loss_mode;
  }
  if (f.chart) cfg.chart = true;
  return cfg;
}

template <class T>
void override_if(const std::optional<T>& flag, T& field) {
  if (flag) field = *flag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost-robust ski rental simulator"};
  app.require_subcommand(1);

  CommonFlags compare_flags, regret_flags, bounds_flags;
  CLI::App* compare = app.add_subcommand("compare", "competitive ratio against prediction noise");
  add_common(compare, compare_flags);
  CLI::App* regret = app.add_subcommand("regret", "regret curves of the two-panel learner");
  add_common(regret, regret_flags);
  CLI::App* bounds = app.add_subcommand("bounds", "evaluate the closed-form guarantees");
  add_common(bounds, bounds_flags);

  std::optional<std::int64_t> b, opt, m, horizon;
  std::optional<double> lambda, eta, delta, epsilon, gap, c, loss_bound;
  std::optional<std::size_t> n;
  bounds->add_option("--b", b, "true buy cost");
  bounds->add_option("--lambda", lambda, "trust parameter in (0, 1]");
  bounds->add_option("--eta", eta, "prediction error |y - x|");
  bounds->add_option("--opt", opt, "optimal cost (default b)");
  bounds->add_option("--delta", delta, "confidence level");
  bounds->add_option("--epsilon", epsilon, "robustness radius used for t* (default: computed from b, lambda)");
  bounds->add_option("--Delta", gap, "sub-optimality gap of the buy panel");
  bounds->add_option("--m", m, "number of buy experts");
  bounds->add_option("--c", c, "constant c > 1");
  bounds->add_option("--T", horizon, "horizon");
  bounds->add_option("--n", n, "number of ski experts");
  bounds->add_option("--B", loss_bound, "per-round loss bound (default: bound for costs [b, b])");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compare->parsed()) {
      return skirental::cmd_compare(resolve(compare_flags, skirental::ExperimentKind::Compare), std::cout,
                                    std::cerr);
    }
    if (regret->parsed()) {
      return skirental::cmd_regret(resolve(regret_flags, skirental::ExperimentKind::Regret), std::cout,
                                   std::cerr);
    }
    skirental::Config cfg = resolve(bounds_flags, skirental::ExperimentKind::Bounds);
    skirental::BoundsArgs& a = cfg.bounds;
    override_if(b, a.b);
    override_if(lambda, a.lambda);
    override_if(eta, a.eta);
    if (opt) a.opt = opt;
    override_if(delta, a.delta);
    if (epsilon) a.epsilon = epsilon;
    override_if(gap, a.gap);
    override_if(m, a.m);
    override_if(c, a.c);
    override_if(horizon, a.horizon);
    override_if(n, a.n);
    if (loss_bound) a.loss_bound = loss_bound;
    return skirental::cmd_bounds(a, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
