#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hpra {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// A set of nodes with a positive weight. Identity is the node set only.
struct Hyperedge {
  std::vector<NodeId> nodes;  // sorted, distinct
  double weight = 1.0;

  Hyperedge() = default;
  /// Sorts and deduplicates `members`.
  explicit Hyperedge(std::vector<NodeId> members, double w = 1.0);

  std::size_t cardinality() const { return nodes.size(); }
  bool contains(NodeId v) const;

  friend bool operator==(const Hyperedge& a, const Hyperedge& b) {
    return a.nodes == b.nodes;
  }
};

struct HyperedgeHash {
  std::size_t operator()(const Hyperedge& e) const noexcept;
};

using HyperedgeSet = std::vector<Hyperedge>;

/// One parsed line of the hyperedge-list format, before re-indexing.
struct EdgeRecord {
  std::vector<std::string> labels;
  std::optional<double> weight;
  std::optional<std::int64_t> timestamp;
};

/// Symmetric sparse matrix over node pairs with an implicit zero diagonal.
/// Both (x,y) and (y,x) are stored; every row is sorted by column.
class SymmetricSparse {
 public:
  using Entry = std::pair<NodeId, double>;

  SymmetricSparse() = default;
  explicit SymmetricSparse(std::size_t n) : rows_(n) {}
  explicit SymmetricSparse(std::vector<std::vector<Entry>> rows)
      : rows_(std::move(rows)) {}

  std::size_t size() const { return rows_.size(); }
  std::span<const Entry> row(NodeId x) const { return rows_[x]; }
  /// Zero when the pair is not stored or out of range.
  double get(NodeId x, NodeId y) const;
  /// Number of stored unordered pairs.
  std::size_t num_pairs() const;
  double row_sum(NodeId x) const;

  std::vector<std::vector<Entry>>& mutable_rows() { return rows_; }

 private:
  std::vector<std::vector<Entry>> rows_;
};

/// Immutable weighted hypergraph with incidence stored in both directions.
class Hypergraph {
 public:
  /// Re-indexes labels densely in first-seen order. Duplicate labels inside
  /// a record collapse; records left with a single node are dropped and
  /// counted in dropped_singletons(). Throws std::invalid_argument on an
  /// empty list, a record with no labels, or a non-positive weight.
  static Hypergraph build(const std::vector<EdgeRecord>& records);

  /// Builds over an existing node space. Node ids must be < labels.size().
  static Hypergraph from_edges(std::vector<std::string> labels,
                               std::vector<Hyperedge> edges,
                               std::vector<std::optional<std::int64_t>> timestamps = {});

  /// Hypergraph over the same node space restricted to the given edges.
  Hypergraph subgraph(std::span<const EdgeId> edge_ids) const;

  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const Hyperedge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Hyperedge>& edges() const { return edges_; }
  std::optional<std::int64_t> timestamp(EdgeId e) const { return timestamps_[e]; }
  bool has_timestamps() const;

  /// Edges incident to v, in increasing edge id.
  std::span<const EdgeId> incident_edges(NodeId v) const;
  /// d(v): sum of weights of incident edges.
  double node_degree(NodeId v) const { return node_degree_[v]; }
  /// delta(e) = |e|.
  std::size_t edge_degree(EdgeId e) const { return edges_[e].nodes.size(); }

  /// One-hop neighbors of v (sorted, v excluded). Throws std::out_of_range.
  std::vector<NodeId> neighbors(NodeId v) const;

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<NodeId> find(const std::string& label) const;

  std::size_t dropped_singletons() const { return dropped_singletons_; }

 private:
  void index();

  std::vector<std::string> labels_;
  std::vector<Hyperedge> edges_;
  std::vector<std::optional<std::int64_t>> timestamps_;
  std::vector<std::size_t> incidence_offsets_;
  std::vector<EdgeId> incidence_;
  std::vector<double> node_degree_;
  std::vector<std::pair<std::string, NodeId>> label_index_;  // sorted by label
  std::size_t dropped_singletons_ = 0;
};

/// Clique expansion A = H W H^T - D_v: A(x,y) = sum of w(e) over edges
/// containing both.
SymmetricSparse adjacency_clique(const Hypergraph& g);

/// Node-degree-preserving reduction: each edge contributes w(e)/(delta(e)-1)
/// to every pair it contains. Accumulated in edge id order.
SymmetricSparse adjacency_ndp(const Hypergraph& g);

}  // namespace hpra
