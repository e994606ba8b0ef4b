#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hpra/hypergraph.hpp"

namespace hpra {

/// Planted-community hypergraph parameters.
struct SyntheticSpec {
  std::size_t num_nodes = 200;
  std::size_t num_communities = 4;
  std::size_t num_edges = 300;
  std::size_t min_cardinality = 3;
  std::size_t max_cardinality = 6;
  /// Probability that a hyperedge draws its nodes from the whole node set.
  double noise = 0.05;
};

/// Community of node v: nodes are split into contiguous near-equal blocks.
std::size_t community_of(const SyntheticSpec& spec, std::size_t v);

/// Each hyperedge picks a community uniformly, a cardinality uniformly from
/// the range, and distinct nodes from that community (or, with probability
/// `noise`, from all nodes). Labels are "v<index>". Throws
/// std::invalid_argument on an invalid spec.
std::vector<EdgeRecord> generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace hpra
