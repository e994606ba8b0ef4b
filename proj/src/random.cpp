#include "hpra/random.hpp"

#include <algorithm>

namespace hpra {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::derive(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  std::uint64_t name_hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    name_hash ^= c;
    name_hash *= 0x100000001b3ULL;
  }
  return Rng(splitmix64(splitmix64(splitmix64(seed) ^ name_hash) ^ index));
}

std::size_t Rng::below(std::size_t bound) {
  auto k = static_cast<std::size_t>(uniform() * static_cast<double>(bound));
  return std::min(k, bound - 1);
}

std::size_t Rng::categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    total += w;
  }
  if (!(total > 0.0)) {
    return weights.size();
  }
  const double target = uniform() * total;
  double running = 0.0;
  std::size_t last_positive = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) {
      continue;
    }
    running += weights[i];
    last_positive = i;
    if (target < running) {
      return i;
    }
  }
  // Rounding can leave target == running at the end.
  return last_positive;
}

}  // namespace hpra
