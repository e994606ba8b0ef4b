#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace hpra {

/// Seeded generator used for every random decision in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Uniform reals are built from the top 53 bits of one engine
/// output, so a categorical draw consumes exactly one engine output and
/// seeded runs are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for (seed, name, index) via splitmix64 mixing.
  static Rng derive(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound). bound must be > 0.
  std::size_t below(std::size_t bound);

  /// Inverse-CDF draw over nonnegative weights: the first index whose
  /// running sum exceeds uniform() * total. Returns weights.size() when the
  /// total is zero (no variate consumed).
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace hpra
