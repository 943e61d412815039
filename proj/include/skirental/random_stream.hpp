#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace skirental {

// SplitMix64 finalizer; used to decorrelate derived stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for the stream of trial `trial` in scenario `scenario`. Distinct
// (scenario, trial) pairs give unrelated streams for a fixed master seed.
constexpr std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t scenario,
                                           std::uint64_t trial) noexcept {
  return splitmix64(splitmix64(splitmix64(master) ^ scenario) ^ (trial * 0xd1b54a32d192ed03ULL));
}

/// Caller-owned source of randomness.
///
/// Every variate is derived from the raw 64-bit output of mt19937_64 with
/// fixed arithmetic, so sequences are identical across standard libraries
/// (the std:: distribution adaptors are implementation-defined). Not safe
/// for concurrent use; give each thread its own stream.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution; one engine draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [lo, hi]; unbiased (rejection on the top residue).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty interval");
    const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1U;
    if (span == 0) return static_cast<std::int64_t>(engine_());  // full 64-bit range
    const std::uint64_t limit = (std::numeric_limits<std::uint64_t>::max() / span) * span;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + v % span);
  }

  /// Standard normal via Box-Muller (two uniform draws, no cached spare).
  double standard_normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * standard_normal(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace skirental
