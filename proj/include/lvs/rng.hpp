#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace lvs {

/// Seedable, splittable random stream.
///
/// Every randomized routine takes an `Rng&` explicitly; there is no global
/// generator. Independent trials obtain their own stream through
/// `Rng::stream(seed, trial)`, which hashes the pair so that streams for
/// neighbouring trial indices are decorrelated.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Stream for trial `index` of an experiment seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  /// Child stream; does not advance this generator.
  Rng split(std::uint64_t index) const { return stream(seed_, index); }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) built from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() { return normal_(engine_); }

  /// Uniform integer in [0, n).
  std::size_t index_below(std::size_t n);

  /// +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace lvs
