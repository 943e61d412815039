#include <cmath>
#include <vector>

#include "doctest.h"
#include "skirental/experiments.hpp"

using namespace skirental;

namespace {

const double kLn15 = std::log(1.5);

CompareScenario small_compare(std::int64_t trials) {
  CompareScenario s;
  s.sigmas = {0.0, 5.0, 20.0};
  s.trials = trials;
  return s;
}

}  // namespace

TEST_CASE("sigma grid") {
  const auto g = sigma_grid(0, 50, 2.5);
  REQUIRE(g.size() == 21);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(50.0));
  CHECK(sigma_grid(1, 1, 0.5) == std::vector<double>{1});
  CHECK_THROWS_AS(sigma_grid(0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(sigma_grid(2, 1, 0.5), std::invalid_argument);
}

TEST_CASE("prior randomized rule follows its published form") {
  for (std::int64_t b : {2, 10, 100, 257}) {
    for (double lam : {0.3, kLn15, 1.0}) {
      if (lam * b < 1) continue;
      for (std::int64_t y : {std::int64_t{0}, b - 1, b, 3 * b}) {
        const auto d = prior_randomized_distribution(b, y, lam);
        const bool late = y >= b;
        const long double bb = b;
        const auto size = static_cast<std::int64_t>(late ? std::floor(lam * b) : std::ceil(b / lam));
        REQUIRE(d.support_size() == size);
        REQUIRE(d.branch() == (late ? Branch::BuyLate : Branch::BuyEarly));
        long double pow_k = 1.0L;
        for (std::int64_t i = 0; i < size; ++i) pow_k *= (bb - 1) / bb;
        for (std::int64_t i = 1; i <= size; ++i) {
          long double w = 1.0L / (bb * (1.0L - pow_k));
          for (std::int64_t j = 0; j < size - i; ++j) w *= (bb - 1) / bb;
          REQUIRE(std::abs(d.probability(i) - static_cast<double>(w)) < 1e-12);
        }
      }
    }
  }
  CHECK_THROWS(prior_randomized_distribution(100, 5, 0.001));
}

TEST_CASE("break-even baseline buys on day b") {
  const auto d = algorithm_distribution(Algorithm::BreakEven, 40, 7, 0.5);
  CHECK(d.support_size() == 40);
  CHECK(d.probability(40) == 1.0);
  for (std::int64_t x = 1; x <= 200; ++x) {
    const SkiRentalInstance inst(40, x);
    CHECK(static_cast<double>(alg_cost(inst, 40)) / static_cast<double>(opt_cost(inst)) <= 2.0);
  }
}

TEST_CASE("compare table shape, bounds and ordering") {
  const auto s = small_compare(500);
  const auto rows = run_compare(s, 3);
  REQUIRE(rows.size() == s.sigmas.size() * std::size(kAllAlgorithms) * s.lambdas.size());
  std::size_t i = 0;
  for (double sg : s.sigmas) {
    for (Algorithm a : kAllAlgorithms) {
      for (double lam : s.lambdas) {
        const auto& r = rows[i++];
        CHECK(r.sigma == sg);
        CHECK(r.algorithm == a);
        CHECK(r.lambda == lam);
        CHECK(r.trials == 500);
        CHECK(r.mean_cr >= 1.0);
        CHECK(r.stderr_cr >= 0.0);
        if (a == Algorithm::BreakEven) CHECK(r.mean_cr <= 2.0);
      }
    }
  }
}

TEST_CASE("compare is deterministic and independent of thread count") {
  const auto s = small_compare(300);
  const auto a = run_compare(s, 9, 1);
  const auto b = run_compare(s, 9, 1);
  const auto c = run_compare(s, 9, 4);
  REQUIRE(a.size() == c.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].mean_cr == b[i].mean_cr);
    CHECK(a[i].mean_cr == c[i].mean_cr);
    CHECK(a[i].stderr_cr == c[i].stderr_cr);
  }
  CHECK(run_compare(s, 10)[0].mean_cr != a[0].mean_cr);
}

TEST_CASE("lambda = 1 cost-robust curve ignores the prediction") {
  // At lambda = 1 both branches share the same support and base, so with common
  // random numbers every sigma sees the same buy days.
  const auto rows = run_compare(small_compare(400), 21);
  double first = -1.0;
  for (const auto& r : rows) {
    if (r.algorithm != Algorithm::CostRobust || r.lambda != 1.0) continue;
    if (first < 0) first = r.mean_cr;
    CHECK(r.mean_cr == first);
  }
}

TEST_CASE("standard errors shrink like one over root trials") {
  CompareScenario s = small_compare(2000);
  s.sigmas = {10.0};
  const auto a = run_compare(s, 5);
  s.trials = 8000;
  const auto b = run_compare(s, 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].stderr_cr == 0.0) continue;
    CHECK(b[i].stderr_cr / a[i].stderr_cr == doctest::Approx(0.5).epsilon(0.2));
  }
}

TEST_CASE("compare validation") {
  CompareScenario s = small_compare(0);
  CHECK_THROWS_AS(run_compare(s, 1), std::invalid_argument);
  s = small_compare(10);
  s.sigmas.clear();
  CHECK_THROWS_AS(run_compare(s, 1), std::invalid_argument);
  s = small_compare(10);
  s.sigmas = {-1.0};
  CHECK_THROWS_AS(run_compare(s, 1), std::invalid_argument);
}

TEST_CASE("regret sweep: additivity, shapes, determinism") {
  RegretScenario sc;
  sc.learner.horizon = 200;
  sc.seeds = 3;
  RegretScenario sc2 = sc;
  sc2.learner.ski_experts = 3;
  const std::vector<RegretScenario> scenarios{sc, sc2};
  const auto curves = run_regret_sweep(scenarios, 4);
  REQUIRE(curves.size() == 2);
  for (std::size_t c = 0; c < 2; ++c) {
    CHECK(curves[c].config_id == c);
    REQUIRE(curves[c].regret.size() == 200);
    for (std::size_t t = 0; t < 200; ++t) {
      REQUIRE(curves[c].regret[t] == curves[c].regret_x[t] + curves[c].regret_b[t]);
    }
    CHECK(curves[c].max_round_loss > 0.0);
    CHECK(curves[c].min_robustness_radius >= 0.0);
  }
  const auto again = run_regret_sweep(scenarios, 4, 3);
  CHECK(again[0].regret == curves[0].regret);
  CHECK(again[1].regret_b == curves[1].regret_b);

  // Mean over seeds equals the average of the individual runs.
  double sum = 0.0;
  for (std::int64_t s = 0; s < sc.seeds; ++s) sum += run(sc.learner, sweep_run_seed(4, 0, s)).cumulative_regret.back();
  CHECK(curves[0].regret.back() == doctest::Approx(sum / 3).epsilon(1e-12));
}

TEST_CASE("single seed sweep is reproducible bit for bit") {
  RegretScenario sc;
  sc.learner.horizon = 100;
  sc.seeds = 1;
  const std::vector<RegretScenario> v{sc};
  CHECK(run_regret_sweep(v, 12)[0].regret == run_regret_sweep(v, 12)[0].regret);
  CHECK(run_regret_sweep(v, 12)[0].final_regret_stderr == 0.0);
}

TEST_CASE("number of buy experts does not move the final regret") {
  std::vector<RegretScenario> v;
  for (std::size_t m : {2, 5, 10}) {
    RegretScenario sc;
    sc.learner.horizon = 1000;
    sc.learner.buy_experts = m;
    sc.seeds = 30;
    v.push_back(sc);
  }
  const auto curves = run_regret_sweep(v, 33);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      const double gap = std::abs(curves[i].regret.back() - curves[j].regret.back());
      const double band = 3 * std::hypot(curves[i].final_regret_stderr, curves[j].final_regret_stderr);
      CHECK(gap <= band);
    }
  }
}

TEST_CASE("smaller lambda pays less with an accurate ski expert present") {
  // Compared on the learner's cumulative mixture loss. Final regret is not
  // comparable across lambda here: at lambda = 1 the noisy estimate beats the
  // true cost on average and the regret goes negative.
  auto total_cost = [](double lambda) {
    LearnerConfig c;
    c.horizon = 1000;
    c.eta_min = 1.0;
    c.lambda = lambda;
    double s = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      for (const auto& r : run(c, seed).records) s += r.mixture_loss;
    }
    return s / 10;
  };
  const double small = total_cost(0.2), mid = total_cost(kLn15), one = total_cost(1.0);
  CHECK(small < mid);
  CHECK(mid < one);
}
