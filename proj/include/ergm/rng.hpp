#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ergm {

/// One SplitMix64 output step (Steele, Lea and Flood).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed splitting rule: s <- splitmix64(s ^ splitmix64(key)) for each key in
/// order, starting from the master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t s = master;
  for (auto k : keys) s = splitmix64(s ^ splitmix64(k));
  return s;
}

/// mt19937_64 (bit-exact by the standard) with a portable double conversion:
/// uniform() is the top 53 bits scaled by 2^-53, so the stream of doubles is
/// identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound) by multiply-shift on 53 uniform bits.
  std::uint64_t below(std::uint64_t bound) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ergm
