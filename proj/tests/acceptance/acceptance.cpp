// Acceptance criteria AC1-AC7. Prints one PASS/FAIL line per criterion with
// the measured quantities; exit status is nonzero if any selected criterion
// fails. `acceptance --criterion AC3` runs a single one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "skirental/commands.hpp"
#include "skirental/experiments.hpp"
#include "skirental/hedge.hpp"
#include "skirental/learner.hpp"
#include "skirental/ski_core.hpp"

using namespace skirental;
namespace fs = std::filesystem;

namespace {

// Tolerances and thresholds.
constexpr double kSigmaBand = 3.0;             // standard errors allowed above a bound
constexpr double kFlatTotalVariation = 0.05;   // AC1, lambda = 1 curve
constexpr double kInequalityTol = 1e-9;        // AC2
constexpr double kInsideRadiusMargin = 1e-9;   // AC3
constexpr double kOutsideRadiusStep = 1e-3;    // AC3
constexpr double kHedgeTol = 1e-12;            // AC4
constexpr double kAlphaTarget = 0.9;           // AC5
constexpr double kFlattenRatio = 0.1;          // AC5
constexpr std::int64_t kShapeWindow = 500;     // AC6
constexpr double kCompareBudgetSeconds = 120;  // AC1, single-threaded
constexpr double kRegretBudgetSeconds = 300;   // AC6
constexpr std::uint64_t kSeed = 20240917;

const double kLn15 = std::log(1.5);

struct Result {
  bool pass;
  std::string detail;
};

std::string num(double v, int prec = 6) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Result ac1() {
  CompareScenario s;  // b = 100, x ~ U{1..400}, sigma 0..50 step 2.5, 10000 trials
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = run_compare(s, kSeed, 1);
  const double elapsed = seconds_since(t0);

  const double robust1 = competitive_ratio_arms(s.b, 1.0, 0.0, s.b).robust;
  const double consistent = kLn15 / (1.0 - std::exp(-kLn15));
  const double robust_ln = competitive_ratio_arms(s.b, kLn15, 0.0, s.b).robust;

  bool ok = true;
  double worst1 = 0.0, tv = 0.0, prev = -1.0, at0 = 0.0, at0_se = 0.0, worst_ln = 0.0;
  for (const auto& r : rows) {
    if (r.algorithm != Algorithm::CostRobust) continue;
    if (r.lambda == 1.0) {
      ok = ok && r.mean_cr <= robust1 + kSigmaBand * r.stderr_cr;
      worst1 = std::max(worst1, r.mean_cr - kSigmaBand * r.stderr_cr);
      if (prev >= 0.0) tv += std::abs(r.mean_cr - prev);
      prev = r.mean_cr;
    } else if (r.lambda == s.lambdas[1]) {
      if (r.sigma == 0.0) {
        at0 = r.mean_cr;
        at0_se = r.stderr_cr;
      }
      worst_ln = std::max(worst_ln, r.mean_cr);
    }
  }
  ok = ok && tv <= kFlatTotalVariation;
  ok = ok && at0 <= consistent + kSigmaBand * at0_se;
  ok = ok && worst_ln <= robust_ln;
  ok = ok && elapsed < kCompareBudgetSeconds;
  return {ok, "lambda=1: max(mean-3se)=" + num(worst1) + " vs " + num(robust1) + ", total variation=" +
                  num(tv) + "; lambda=ln1.5: sigma0 mean=" + num(at0) + " (se " + num(at0_se, 3) + ") vs " +
                  num(consistent) + ", max mean=" + num(worst_ln) + " vs " + num(robust_ln) +
                  "; runtime " + num(elapsed, 3) + "s"};
}

Result ac2() {
  std::int64_t cases = 0, violations = 0;
  double min_slack = 1e300;
  for (double lam : {0.2, 0.5, kLn15, 1.0}) {
    const double em = std::exp(-lam);
    const double C = lam / (1.0 - em);
    for (std::int64_t b = 2; b <= 30; ++b) {
      if (lam * static_cast<double>(b) < 1.0) continue;
      const double bd = static_cast<double>(b);
      const double k = std::floor(lam * bd);
      const double robust = (1.0 + 1.0 / k) / (1.0 - em);
      std::vector<std::int64_t> ys;
      for (int j = 0; j <= 8; ++j) ys.push_back(nint(j * bd / 2.0));
      ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
      for (std::int64_t y : ys) {
        const auto dist = buy_day_distribution(bd, y, lam);
        const auto S = dist.support_size();
        for (std::int64_t x = 1; x <= 4 * b; ++x) {
          const SkiRentalInstance inst(b, x);
          const double e = dist.expected_alg_cost(inst);
          const double opt = static_cast<double>(opt_cost(inst));
          const double eta = std::abs(static_cast<double>(y - x));
          const double xd = static_cast<double>(x);
          double case_bound;
          if (dist.branch() == Branch::BuyLate) {
            case_bound = x >= S ? C * (opt + eta) : lam * bd / (k * (1.0 - em)) * opt;
          } else {
            case_bound = x >= S ? (1.0 + lam * em / bd) / (1.0 - em) * opt : xd / (1.0 - std::exp(-1.0 / lam));
          }
          const double combined = std::min(robust * opt, C * (opt + eta));
          const double slack = std::min(case_bound, combined) - e;
          min_slack = std::min(min_slack, slack);
          if (e > case_bound + kInequalityTol || e > combined + kInequalityTol) ++violations;
          ++cases;
        }
      }
    }
  }
  return {violations == 0, std::to_string(cases) + " cases, " + std::to_string(violations) +
                               " violations, min slack " + num(min_slack)};
}

Result ac3() {
  RandomStream rng(kSeed + 3);
  int tested = 0, mismatches = 0, moved = 0, eligible = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t b = rng.uniform_int(2, 300);
    const double lo = 1.0 / static_cast<double>(b);
    const double lam = lo + (1.0 - lo) * (1.0 - rng.uniform());  // (1/b, 1]
    const double eps = robustness_radius(b, lam).epsilon;
    const double inside = std::min(eps, 0.5) - kInsideRadiusMargin;
    const double bd = static_cast<double>(b);
    for (std::int64_t y : {std::int64_t{0}, b, 4 * b}) {
      const auto base = buy_day_distribution(bd, y, lam);
      if (inside > 0.0) {
        ++tested;
        if (!(buy_day_distribution(bd + inside, y, lam) == base)) ++mismatches;
        if (!(buy_day_distribution(bd - inside, y, lam) == base)) ++mismatches;
      }
      const double outside = bd + std::min(eps, 0.49) + kOutsideRadiusStep;
      if (lam * outside >= 1.0) {
        ++eligible;
        const auto d = buy_day_distribution(outside, y, lam);
        if (d.branch() != base.branch() || d.support_size() != base.support_size()) ++moved;
      }
    }
  }
  return {mismatches == 0 && moved >= 1,
          std::to_string(tested) + " perturbed pairs inside the radius, " + std::to_string(mismatches) +
              " mismatches; " + std::to_string(moved) + "/" + std::to_string(eligible) +
              " cases change just outside it"};
}

Result ac4() {
  RandomStream rng(kSeed + 4);
  double worst = 0.0;
  int runs = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 4));
    const auto rounds = rng.uniform_int(1, 20);
    const bool decreasing = trial % 2 == 1;
    const double scale = 0.05 + 2.0 * rng.uniform();
    HedgeState h(n, decreasing ? RateSchedule{DecreasingRate{scale}} : RateSchedule{ConstantRate{scale}});
    std::vector<double> g(n, 0.0);
    for (std::int64_t t = 1; t <= rounds; ++t) {
      std::vector<double> l(n);
      for (auto& v : l) v = 10.0 * rng.uniform();
      h.update(l);
      for (std::size_t i = 0; i < n; ++i) g[i] += l[i];
      const double eta = decreasing ? scale / std::sqrt(static_cast<double>(t)) : scale;
      const auto want = oracle::softmax_direct(g, eta);
      const auto got = h.weights();
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
    }
    ++runs;
  }
  int shift_fail = 0, mono_fail = 0;
  for (int s = 0; s < 10000; ++s) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 8));
    std::vector<double> l(n);
    for (auto& v : l) v = 20.0 * rng.uniform();
    const double rate = 0.01 + rng.uniform();
    HedgeState h(n, ConstantRate{rate});
    h.update(l);
    std::vector<double> shifted(l);
    const double c = 100.0 * rng.uniform();
    for (auto& v : shifted) v += c;
    HedgeState hs(n, ConstantRate{rate});
    hs.update(shifted);
    const auto w = h.weights(), ws = hs.weights();
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(w[i] - ws[i]) > kHedgeTol) {
        ++shift_fail;
        break;
      }
    }
    const auto best = static_cast<std::size_t>(std::min_element(l.begin(), l.end()) - l.begin());
    for (std::size_t i = 0; i < n; ++i) {
      if (i != best && l[i] > l[best] && !(w[best] > w[i])) {
        ++mono_fail;
        break;
      }
    }
  }
  return {worst <= kHedgeTol && shift_fail == 0 && mono_fail == 0,
          std::to_string(runs) + " runs, max |w - direct| = " + num(worst, 3) + "; 10000 states, " +
              std::to_string(shift_fail) + " shift failures, " + std::to_string(mono_fail) +
              " monotonicity failures"};
}

Result ac5() {
  RegretScenario sc;
  sc.learner.horizon = 2000;
  sc.learner.gamma_min = 1.0;
  sc.learner.gamma_max = 20.0;
  sc.learner.buy_experts = 5;
  sc.learner.noise_bound = 50.0;
  sc.seeds = 100;
  const std::vector<RegretScenario> v{sc};
  const auto curve = run_regret_sweep(v, kSeed, 1).front();
  const std::size_t best = sc.learner.make_buy_panel().best_expert();
  const double alpha = curve.mean_final_alpha[best];
  const double rb_t = curve.regret_b.back();
  const double rb_half = curve.regret_b[static_cast<std::size_t>(sc.learner.horizon / 2 - 1)];
  const bool converged = alpha > kAlphaTarget;
  const bool flattened = rb_t - rb_half < kFlattenRatio * rb_half;
  return {converged && flattened, "mean alpha_i* = " + num(alpha) + " (> " + num(kAlphaTarget) +
                                      "), R^b(T/2) = " + num(rb_half) + ", R^b(T) = " + num(rb_t) +
                                      ", growth ratio " + num((rb_t - rb_half) / rb_half) + " (< " +
                                      num(kFlattenRatio) + " required)"};
}

Result ac6() {
  RegretScenario sc;  // defaults: T = 5000, m = n = 5, [200, 700], gamma [1, 20], eta [1, 100]
  sc.seeds = 100;
  const std::vector<RegretScenario> v{sc};
  const auto t0 = std::chrono::steady_clock::now();
  const auto curve = run_regret_sweep(v, kSeed, 8).front();
  const double elapsed = seconds_since(t0);

  const auto& R = curve.regret;
  const auto T = static_cast<std::int64_t>(R.size());
  std::vector<double> points{0.0};  // R(0) = 0, then R at each window end
  for (std::int64_t t = kShapeWindow; t <= T; t += kShapeWindow) points.push_back(R[static_cast<std::size_t>(t - 1)]);
  bool nondecreasing = true;
  for (std::size_t k = 1; k < points.size(); ++k) nondecreasing = nondecreasing && points[k] >= points[k - 1];
  int per_round_drops = 0;
  for (std::size_t t = 1; t < R.size(); ++t) per_round_drops += R[t] < R[t - 1];
  // Mean second difference per window = change of the window-mean slope.
  double worst_second = -1e300;
  int positive_windows = 0;
  for (std::size_t k = 2; k < points.size(); ++k) {
    const double d2 = ((points[k] - points[k - 1]) - (points[k - 1] - points[k - 2])) /
                      static_cast<double>(kShapeWindow * kShapeWindow);
    worst_second = std::max(worst_second, d2);
    positive_windows += d2 > 0.0;
  }
  const bool concave = positive_windows == 0;
  const double rx_bound = regret_x_bound(curve.max_round_loss, sc.learner.horizon, sc.learner.ski_experts);
  const bool rx_ok = curve.regret_x.back() <= rx_bound;
  const bool fast = elapsed < kRegretBudgetSeconds;

  std::string windows;
  for (std::size_t k = 1; k < points.size(); ++k) windows += (k > 1 ? "," : "") + num(points[k], 4);
  return {nondecreasing && concave && rx_ok && fast,
          std::string("non-decreasing at window ends: ") + (nondecreasing ? "yes" : "no") + " [" + windows +
              "] (" + std::to_string(per_round_drops) + " single-round drops); windows with positive mean " +
              "second difference: " + std::to_string(positive_windows) + "/" +
              std::to_string(points.size() > 2 ? points.size() - 2 : 0) + " (max " + num(worst_second, 3) +
              "); R^x(T) = " + num(curve.regret_x.back()) + " <= " + num(rx_bound) + " with B = " +
              num(curve.max_round_loss) + ": " + (rx_ok ? "yes" : "no") + "; runtime " + num(elapsed, 3) + "s"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result ac7() {
  const fs::path root = fs::temp_directory_path() / "skirental_acceptance_ac7";
  fs::remove_all(root);
  Config base;
  base.master_seed = kSeed;
  base.compare.trials = 2000;
  base.regret.horizon = 400;
  base.regret_seeds = 6;
  base.sweep.lambdas = {0.3, 1.0};

  int identical = 0, compared = 0;
  std::ostringstream sink;
  auto twice = [&](const std::string& name, const std::function<int(const Config&, std::ostream&)>& cmd,
                   Config cfg, const std::vector<std::string>& files, unsigned threads_second) {
    cfg.output_dir = (root / (name + "_a")).string();
    std::ostringstream out_a;
    const int ra = cmd(cfg, out_a);
    cfg.output_dir = (root / (name + "_b")).string();
    cfg.threads = threads_second;
    std::ostringstream out_b;
    const int rb = cmd(cfg, out_b);
    for (const auto& f : files) {
      ++compared;
      const std::string a = slurp(root / (name + "_a") / f), b = slurp(root / (name + "_b") / f);
      identical += ra == 0 && rb == 0 && !a.empty() && a == b;
    }
    if (files.empty()) {
      ++compared;
      identical += ra == 0 && rb == 0 && out_a.str() == out_b.str();
    }
  };
  twice("compare", [&](const Config& c, std::ostream& o) { return cmd_compare(c, o, sink); }, base,
        {"compare.csv"}, 1);
  twice("compare_threads", [&](const Config& c, std::ostream& o) { return cmd_compare(c, o, sink); }, base,
        {"compare.csv"}, 3);
  twice("regret", [&](const Config& c, std::ostream& o) { return cmd_regret(c, o, sink); }, base,
        {"regret.csv", "regret_configs.csv"}, 1);
  twice("regret_threads", [&](const Config& c, std::ostream& o) { return cmd_regret(c, o, sink); }, base,
        {"regret.csv", "regret_configs.csv"}, 3);
  Config sampled = base;
  sampled.loss_mode = LossMode::Sampled;
  twice("regret_sampled", [&](const Config& c, std::ostream& o) { return cmd_regret(c, o, sink); }, sampled,
        {"regret.csv"}, 1);
  twice("bounds", [&](const Config& c, std::ostream& o) { return cmd_bounds(c.bounds, o, sink); }, base, {}, 1);
  fs::remove_all(root);
  return {identical == compared && compared > 0,
          std::to_string(identical) + "/" + std::to_string(compared) +
              " outputs byte-identical across repeated runs (including different thread counts)"};
}

struct Criterion {
  const char* id;
  const char* name;
  Result (*fn)();
};

constexpr Criterion kCriteria[] = {
    {"AC1", "competitive ratio against prediction noise", ac1},
    {"AC2", "closed-form expected cost meets the case inequalities", ac2},
    {"AC3", "buy-day distribution frozen inside the robustness radius", ac3},
    {"AC4", "Hedge weights match direct evaluation", ac4},
    {"AC5", "buy panel concentrates and its regret share flattens", ac5},
    {"AC6", "regret curve shape and ski-panel bound", ac6},
    {"AC7", "repeated runs give byte-identical outputs", ac7},
};

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--criterion ACn]\n";
      return 2;
    }
  }
  int failures = 0, ran = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && only != c.id) continue;
    ++ran;
    Result r{false, ""};
    try {
      r = c.fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failures += !r.pass;
    std::cout << c.id << ' ' << (r.pass ? "PASS" : "FAIL") << "  " << c.name << " | " << r.detail << std::endl;
  }
  if (ran == 0) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
