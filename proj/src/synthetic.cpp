#include "hpra/synthetic.hpp"

#include <stdexcept>
#include <string>

#include "hpra/predictor.hpp"
#include "hpra/random.hpp"

namespace hpra {
namespace {

std::size_t block_begin(const SyntheticSpec& spec, std::size_t c) {
  return spec.num_nodes * c / spec.num_communities;
}

void validate(const SyntheticSpec& spec) {
  if (spec.num_nodes == 0 || spec.num_communities == 0 || spec.num_edges == 0) {
    throw std::invalid_argument("synthetic: counts must be positive");
  }
  if (spec.num_communities > spec.num_nodes) {
    throw std::invalid_argument("synthetic: more communities than nodes");
  }
  if (spec.min_cardinality < 2 || spec.min_cardinality > spec.max_cardinality) {
    throw std::invalid_argument("synthetic: cardinality range must satisfy 2 <= min <= max");
  }
  if (!(spec.noise >= 0.0 && spec.noise <= 1.0)) {
    throw std::invalid_argument("synthetic: noise must lie in [0, 1]");
  }
  for (std::size_t c = 0; c < spec.num_communities; ++c) {
    if (block_begin(spec, c + 1) - block_begin(spec, c) < spec.max_cardinality) {
      throw std::invalid_argument("synthetic: cardinality exceeds community size");
    }
  }
}

}  // namespace

std::size_t community_of(const SyntheticSpec& spec, std::size_t v) {
  // Largest c with block_begin(c) <= v.
  std::size_t c = v * spec.num_communities / spec.num_nodes;
  while (c + 1 < spec.num_communities && block_begin(spec, c + 1) <= v) {
    ++c;
  }
  while (c > 0 && block_begin(spec, c) > v) {
    --c;
  }
  return c;
}

std::vector<EdgeRecord> generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  validate(spec);
  Rng rng = Rng::derive(seed, "synthetic");
  const std::size_t width = spec.max_cardinality - spec.min_cardinality + 1;
  std::vector<EdgeRecord> records;
  records.reserve(spec.num_edges);
  for (std::size_t i = 0; i < spec.num_edges; ++i) {
    const std::size_t community = rng.below(spec.num_communities);
    const std::size_t d = spec.min_cardinality + rng.below(width);
    const bool noisy = rng.uniform() < spec.noise;
    std::size_t offset = 0;
    std::size_t pool = spec.num_nodes;
    if (!noisy) {
      offset = block_begin(spec, community);
      pool = block_begin(spec, community + 1) - offset;
    }
    const Hyperedge local = sample_uniform_hyperedge(pool, d, rng);
    EdgeRecord rec;
    for (NodeId v : local.nodes) {
      rec.labels.push_back("v" + std::to_string(offset + v));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace hpra
