#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "hpra/hypergraph.hpp"

namespace hpra {

enum class ScoreKind { kHra, kCn, kKatz };

std::string to_string(ScoreKind kind);
/// Accepts "hra", "cn", "katz" (case-insensitive).
ScoreKind parse_score_kind(const std::string& name);

struct ScoreParams {
  /// HRA weighting: nullopt is the plain sum direct + indirect; a value in
  /// [0,1] gives alpha * direct + (1 - alpha) * indirect.
  std::optional<double> alpha;
  /// Katz damping factor, > 0.
  double beta = 0.01;
  /// Longest walk counted by the truncated Katz series, >= 2.
  int max_len = 5;
};

/// Symmetric sparse node-pair scores. Only nonzero pairs are stored and the
/// diagonal is never stored.
class ScoreMatrix {
 public:
  ScoreMatrix(ScoreKind kind, ScoreParams params, SymmetricSparse entries)
      : kind_(kind), params_(params), entries_(std::move(entries)) {}

  ScoreKind kind() const { return kind_; }
  const ScoreParams& params() const { return params_; }
  std::size_t num_nodes() const { return entries_.size(); }
  std::size_t num_pairs() const { return entries_.num_pairs(); }

  /// 0 for unstored pairs, the diagonal, and ids outside the node range.
  double get(NodeId x, NodeId y) const { return x == y ? 0.0 : entries_.get(x, y); }
  std::span<const SymmetricSparse::Entry> row(NodeId x) const { return entries_.row(x); }

  /// Multiplies every entry by factor (> 0).
  ScoreMatrix scaled(double factor) const;

 private:
  ScoreKind kind_;
  ScoreParams params_;
  SymmetricSparse entries_;
};

/// Resource received by y directly from x: sum over shared edges of
/// w(e) / (delta(e) - 1). Equal to adjacency_ndp(g)(x, y).
double hra_direct(const Hypergraph& g, NodeId x, NodeId y);

/// Resource routed through common neighbors z (z != x, y):
/// sum of direct(x,z) * direct(z,y) / d(z), z ascending.
double hra_indirect(const Hypergraph& g, NodeId x, NodeId y);

double hra(const Hypergraph& g, NodeId x, NodeId y, std::optional<double> alpha = std::nullopt);

/// |N(x) intersect N(y)|.
std::size_t cn(const Hypergraph& g, NodeId x, NodeId y);

/// Truncated Katz series sum_{l=1..max_len} beta^l (A^l)(x,y) over the
/// clique expansion A.
ScoreMatrix katz(const Hypergraph& g, double beta, int max_len, unsigned threads = 1);

/// Materializes every nonzero pair of the chosen index. Rows are computed
/// independently across `threads` workers; the result does not depend on the
/// thread count.
ScoreMatrix score_matrix(const Hypergraph& g, ScoreKind kind, const ScoreParams& params,
                         unsigned threads = 1);

/// CSV rows "label_x,label_y,score" for each stored pair with
/// label_x < label_y, sorted by (label_x, label_y).
void write_score_csv(std::ostream& out, const Hypergraph& g, const ScoreMatrix& scores);

}  // namespace hpra
