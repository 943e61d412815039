#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "skirental/random_stream.hpp"

using skirental::RandomStream;

TEST_CASE("same seed gives the same sequence") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("mt19937_64 reference output") {
  // The 10000th output for the default seed is fixed by the C++ standard.
  RandomStream r(5489);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = r.next_u64();
  CHECK(v == 9981545732273789042ULL);
}

TEST_CASE("uniform stays in [0, 1)") {
  RandomStream r(7);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 0.005);
}

TEST_CASE("uniform_int covers the interval and rejects empty ones") {
  RandomStream r(3);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = r.uniform_int(-3, 3);
    REQUIRE(v >= -3);
    REQUIRE(v <= 3);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  CHECK(r.uniform_int(5, 5) == 5);
  CHECK_THROWS_AS(r.uniform_int(2, 1), std::invalid_argument);
}

TEST_CASE("standard normal moments") {
  RandomStream r(11);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.standard_normal();
    REQUIRE(std::isfinite(z));
    s += z;
    s2 += z * z;
  }
  CHECK(std::abs(s / n) < 4.0 / std::sqrt(n));
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("derived stream seeds are distinct") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t sc = 0; sc < 20; ++sc) {
    for (std::uint64_t t = 0; t < 500; ++t) seeds.insert(skirental::derive_stream_seed(1, sc, t));
  }
  CHECK(seeds.size() == 20 * 500);
  CHECK(skirental::derive_stream_seed(1, 0, 0) != skirental::derive_stream_seed(2, 0, 0));
}
