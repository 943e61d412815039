#include "skirental/commands.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>

#include "skirental/errors.hpp"
#include "skirental/output.hpp"

namespace skirental {

namespace fs = std::filesystem;

namespace {

// Thrown for output-directory and file problems; mapped to exit status 1.
struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path prepare_output_dir(const std::string& dir) {
  std::error_code ec;
  const fs::path p(dir);
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) {
    throw OutputError("cannot create output directory '" + dir + "'" + (ec ? ": " + ec.message() : ""));
  }
  return p;
}

void emit(const fs::path& path, const std::string& contents) {
  try {
    write_file(path.string(), contents);
  } catch (const std::runtime_error& e) {
    throw OutputError(e.what());
  }
}

std::ostringstream classic_stream() {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  return ss;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    fn();
    return 0;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int cmd_compare(const Config& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const fs::path dir = prepare_output_dir(config.output_dir);
    const auto rows = run_compare(config.compare, config.master_seed, config.threads);

    auto csv = classic_stream();
    write_compare_csv(csv, rows);
    emit(dir / "compare.csv", csv.str());
    if (config.chart) {
      auto svg = classic_stream();
      const auto series = compare_chart_series(rows);
      write_line_chart_svg(svg, "mean competitive ratio, b = " + std::to_string(config.compare.b), "sigma",
                           "ALG / OPT", series);
      emit(dir / "compare.svg", svg.str());
    }

    out << "wrote " << (dir / "compare.csv").string() << " (" << rows.size() << " rows)\n";
    const std::int64_t b = config.compare.b;
    for (double lam : config.compare.lambdas) {
      const auto arms = competitive_ratio_arms(b, lam, 0.0, b);
      double worst = 0.0;
      for (const auto& r : rows) {
        if (r.algorithm == Algorithm::CostRobust && r.lambda == lam) worst = std::max(worst, r.mean_cr);
      }
      out << "lambda=" << format_double(lam) << ": robustness bound = " << format_double(arms.robust)
          << ", consistency bound (eta=0) = " << format_double(lam / (1.0 - std::exp(-lam)))
          << ", max cost_robust mean_cr = " << format_double(worst) << '\n';
    }
  });
}

int cmd_regret(const Config& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const fs::path dir = prepare_output_dir(config.output_dir);
    const auto scenarios = config.regret_scenarios();
    const auto curves = run_regret_sweep(scenarios, config.master_seed, config.threads);

    auto csv = classic_stream();
    write_regret_csv(csv, curves);
    emit(dir / "regret.csv", csv.str());
    auto meta = classic_stream();
    write_regret_configs_csv(meta, scenarios, curves);
    emit(dir / "regret_configs.csv", meta.str());
    if (config.chart) {
      auto svg = classic_stream();
      const auto series = regret_chart_series(curves);
      write_line_chart_svg(svg, "mean cumulative regret", "round t", "regret", series);
      emit(dir / "regret.svg", svg.str());
    }

    out << "wrote " << (dir / "regret.csv").string() << " and " << (dir / "regret_configs.csv").string()
        << '\n';
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const auto& c = curves[i];
      const auto& l = scenarios[i].learner;
      const auto lb = loss_bound_B(l.buy_cost_range);
      out << "config " << c.config_id << " (lambda=" << format_double(l.lambda) << ", n=" << l.ski_experts
          << ", m=" << l.buy_experts << "): final regret = " << format_double(c.regret.back()) << " +- "
          << format_double(c.final_regret_stderr) << ", regret_x = " << format_double(c.regret_x.back())
          << ", regret_b = " << format_double(c.regret_b.back()) << '\n';
      out << "  observed B = " << format_double(c.max_round_loss) << ", regret_x bound (1+B^2)sqrt(T ln n) = "
          << format_double(regret_x_bound(c.max_round_loss, l.horizon, l.ski_experts)) << '\n';
      out << "  loss bound B over buy costs [" << l.buy_cost_range.lo << ", " << l.buy_cost_range.hi
          << "] = " << format_double(lb.value) << '\n';
      const auto regime = high_probability_regime(l, c.min_robustness_radius, config.regret_delta);
      if (regime.satisfied) {
        out << "  t* = " << regime.t_star << " (c = " << format_double(regime.implied_c)
            << "), regret bound with probability 1-delta = "
            << format_double(regret_bound(lb.value, l.horizon, l.ski_experts, regime.t_star)) << '\n';
      } else {
        out << "  warning: high-probability regret bound not shown, config is outside its regime ("
            << regime.reason << ")\n";
      }
    }
  });
}

int cmd_bounds(const BoundsArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(a.gap > 0.0)) throw std::invalid_argument("sub-optimality gap must be positive");
    const std::int64_t opt = a.opt.value_or(a.b);
    const double eps = a.epsilon.value_or(robustness_radius(a.b, a.lambda).epsilon);
    const double B = a.loss_bound.value_or(loss_bound_B({a.b, a.b}).value);
    const auto arms = competitive_ratio_arms(a.b, a.lambda, a.eta, opt);
    const double radius = robustness_radius(a.b, a.lambda).epsilon;

    out << "epsilon = " << format_double(radius) << '\n';
    out << "robustness_arm = " << format_double(arms.robust) << '\n';
    out << "consistency_arm = " << format_double(arms.consistent) << '\n';
    out << "competitive_ratio_bound = " << format_double(arms.bound()) << '\n';
    out << "loss_bound_B = " << format_double(B) << '\n';
    out << "regret_x_bound = " << format_double(regret_x_bound(B, a.horizon, a.n)) << '\n';
    if (!a.epsilon && !(eps > 0.0)) {
      // A zero radius is a property of (b, lambda), not a bad argument: t* has no finite value.
      out << "t_star = undefined (robustness radius is 0; pass --epsilon)\n";
      out << "regret_bound = undefined\n";
      return;
    }
    const std::int64_t ts = t_star(a.delta, eps, a.gap, a.m, a.c, a.horizon);
    if (a.epsilon) out << "t_star_epsilon = " << format_double(eps) << '\n';
    out << "t_star = " << ts << '\n';
    out << "regret_bound = " << format_double(regret_bound(B, a.horizon, a.n, ts)) << '\n';
  });
}

int run_command(const Config& config, std::ostream& out, std::ostream& err) {
  switch (config.kind) {
    case ExperimentKind::Compare: return cmd_compare(config, out, err);
    case ExperimentKind::Regret: return cmd_regret(config, out, err);
    case ExperimentKind::Bounds: return cmd_bounds(config.bounds, out, err);
  }
  return 2;
}

}  // namespace skirental
