#include "hpra/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "hpra/hyperedge_io.hpp"
#include "hpra/parallel.hpp"

namespace hpra {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) {
    return requested;
  }
  if (const char* env = std::getenv("HPRA_THREADS")) {
    const long value = std::strtol(env, nullptr, 10);
    if (value > 0) {
      return static_cast<unsigned>(value);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void check_pair(const Hypergraph& g, NodeId x, NodeId y) {
  if (x >= g.num_nodes() || y >= g.num_nodes()) {
    throw std::out_of_range("similarity: node id out of range");
  }
  if (x == y) {
    throw std::invalid_argument("similarity: pair must have distinct nodes");
  }
}

void check_alpha(std::optional<double> alpha) {
  if (alpha && !(*alpha >= 0.0 && *alpha <= 1.0)) {
    throw std::invalid_argument("similarity: alpha must lie in [0, 1]");
  }
}

// Shared by the element and batch paths so both round identically.
inline double indirect_term(double direct_xz, double degree_z, double direct_zy) {
  return direct_xz * direct_zy / degree_z;
}

inline double combine(double direct, double indirect, std::optional<double> alpha) {
  if (!alpha) {
    return direct + indirect;
  }
  return *alpha * direct + (1.0 - *alpha) * indirect;
}

// Dense per-worker accumulator with a touched list, reset in O(touched).
class RowAccumulator {
 public:
  explicit RowAccumulator(std::size_t n) : values_(n, 0.0), seen_(n, 0) {}

  double& at(NodeId y) {
    if (!seen_[y]) {
      seen_[y] = 1;
      touched_.push_back(y);
    }
    return values_[y];
  }
  double value(NodeId y) const { return values_[y]; }
  std::vector<NodeId>& touched() { return touched_; }

  void clear() {
    for (NodeId y : touched_) {
      values_[y] = 0.0;
      seen_[y] = 0;
    }
    touched_.clear();
  }

 private:
  std::vector<double> values_;
  std::vector<char> seen_;
  std::vector<NodeId> touched_;
};

// Keeps the y > x half of each row and mirrors it, so the stored matrix is
// exactly symmetric whatever the per-row arithmetic.
template <typename RowFn>
SymmetricSparse materialize(std::size_t n, unsigned threads, RowFn compute_row) {
  std::vector<std::vector<SymmetricSparse::Entry>> upper(n);
  parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
    RowAccumulator acc(n);
    for (std::size_t x = begin; x < end; ++x) {
      compute_row(static_cast<NodeId>(x), acc);
      auto& row = upper[x];
      for (NodeId y : acc.touched()) {
        const double v = acc.value(y);
        if (y > x && v > 0.0) {
          row.emplace_back(y, v);
        }
      }
      std::sort(row.begin(), row.end());
      acc.clear();
    }
  });
  std::vector<std::size_t> lower_count(n, 0);
  for (const auto& row : upper) {
    for (const auto& [y, v] : row) {
      ++lower_count[y];
    }
  }
  std::vector<std::vector<SymmetricSparse::Entry>> rows(n);
  for (std::size_t x = 0; x < n; ++x) {
    rows[x].reserve(lower_count[x] + upper[x].size());
  }
  // x ascending, so mirrored entries land sorted ahead of the upper half.
  for (std::size_t x = 0; x < n; ++x) {
    for (const auto& [y, v] : upper[x]) {
      rows[y].emplace_back(static_cast<NodeId>(x), v);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    rows[x].insert(rows[x].end(), upper[x].begin(), upper[x].end());
    std::vector<SymmetricSparse::Entry>().swap(upper[x]);
  }
  return SymmetricSparse(std::move(rows));
}

}  // namespace

std::string to_string(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::kHra:
      return "hra";
    case ScoreKind::kCn:
      return "cn";
    case ScoreKind::kKatz:
      return "katz";
  }
  return "unknown";
}

ScoreKind parse_score_kind(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "hra" || lower == "hpra") {
    return ScoreKind::kHra;
  }
  if (lower == "cn") {
    return ScoreKind::kCn;
  }
  if (lower == "katz") {
    return ScoreKind::kKatz;
  }
  throw std::invalid_argument("unknown score kind '" + name + "'");
}

ScoreMatrix ScoreMatrix::scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw std::invalid_argument("score matrix: scale factor must be positive");
  }
  SymmetricSparse copy = entries_;
  for (auto& row : copy.mutable_rows()) {
    for (auto& entry : row) {
      entry.second *= factor;
    }
  }
  return ScoreMatrix(kind_, params_, std::move(copy));
}

double hra_direct(const Hypergraph& g, NodeId x, NodeId y) {
  check_pair(g, x, y);
  double acc = 0.0;
  for (EdgeId e : g.incident_edges(x)) {
    const auto& edge = g.edge(e);
    if (edge.contains(y)) {
      acc += edge.weight / static_cast<double>(edge.nodes.size() - 1);
    }
  }
  return acc;
}

double hra_indirect(const Hypergraph& g, NodeId x, NodeId y) {
  check_pair(g, x, y);
  const auto nx = g.neighbors(x);
  const auto ny = g.neighbors(y);
  std::vector<NodeId> common;
  std::set_intersection(nx.begin(), nx.end(), ny.begin(), ny.end(),
                        std::back_inserter(common));
  double acc = 0.0;
  for (NodeId z : common) {
    if (z == x || z == y) {
      continue;
    }
    acc += indirect_term(hra_direct(g, x, z), g.node_degree(z), hra_direct(g, z, y));
  }
  return acc;
}

double hra(const Hypergraph& g, NodeId x, NodeId y, std::optional<double> alpha) {
  check_alpha(alpha);
  return combine(hra_direct(g, x, y), hra_indirect(g, x, y), alpha);
}

std::size_t cn(const Hypergraph& g, NodeId x, NodeId y) {
  check_pair(g, x, y);
  const auto nx = g.neighbors(x);
  const auto ny = g.neighbors(y);
  std::vector<NodeId> common;
  std::set_intersection(nx.begin(), nx.end(), ny.begin(), ny.end(),
                        std::back_inserter(common));
  return common.size();
}

ScoreMatrix katz(const Hypergraph& g, double beta, int max_len, unsigned threads) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("katz: beta must be positive");
  }
  if (max_len < 2) {
    throw std::invalid_argument("katz: max_len must be at least 2");
  }
  const SymmetricSparse adj = adjacency_clique(g);
  const std::size_t n = g.num_nodes();
  auto entries = materialize(n, threads, [&](NodeId x, RowAccumulator& acc) {
    // Walk-count frontier: current[v] = weighted number of length-l walks x->v.
    std::vector<std::pair<NodeId, double>> current{{x, 1.0}};
    thread_local std::vector<double> next_value;
    thread_local std::vector<NodeId> next_nodes;
    next_value.resize(n, 0.0);
    double power = 1.0;
    for (int len = 1; len <= max_len; ++len) {
      power *= beta;
      for (const auto& [u, walks] : current) {
        for (const auto& [v, a] : adj.row(u)) {
          if (next_value[v] == 0.0) {
            next_nodes.push_back(v);
          }
          next_value[v] += walks * a;
        }
      }
      std::sort(next_nodes.begin(), next_nodes.end());
      current.clear();
      for (NodeId v : next_nodes) {
        current.emplace_back(v, next_value[v]);
        acc.at(v) += power * next_value[v];
        next_value[v] = 0.0;
      }
      next_nodes.clear();
    }
  });
  ScoreParams params;
  params.beta = beta;
  params.max_len = max_len;
  return ScoreMatrix(ScoreKind::kKatz, params, std::move(entries));
}

ScoreMatrix score_matrix(const Hypergraph& g, ScoreKind kind, const ScoreParams& params,
                         unsigned threads) {
  const std::size_t n = g.num_nodes();
  switch (kind) {
    case ScoreKind::kHra: {
      check_alpha(params.alpha);
      const SymmetricSparse ndp = adjacency_ndp(g);
      auto entries = materialize(n, threads, [&](NodeId x, RowAccumulator& indirect) {
        for (const auto& [z, direct_xz] : ndp.row(x)) {
          const double degree_z = g.node_degree(z);
          for (const auto& [y, direct_zy] : ndp.row(z)) {
            if (y != x) {
              indirect.at(y) += indirect_term(direct_xz, degree_z, direct_zy);
            }
          }
        }
        for (const auto& [y, direct_xy] : ndp.row(x)) {
          indirect.at(y);
        }
        for (NodeId y : indirect.touched()) {
          double& slot = indirect.at(y);
          slot = combine(ndp.get(x, y), slot, params.alpha);
        }
      });
      return ScoreMatrix(kind, params, std::move(entries));
    }
    case ScoreKind::kCn: {
      const SymmetricSparse adj = adjacency_clique(g);
      auto entries = materialize(n, threads, [&](NodeId x, RowAccumulator& acc) {
        for (const auto& [z, unused_xz] : adj.row(x)) {
          for (const auto& [y, unused_zy] : adj.row(z)) {
            if (y != x) {
              acc.at(y) += 1.0;
            }
          }
        }
      });
      return ScoreMatrix(kind, params, std::move(entries));
    }
    case ScoreKind::kKatz:
      return katz(g, params.beta, params.max_len, threads);
  }
  throw std::invalid_argument("score_matrix: unknown kind");
}

void write_score_csv(std::ostream& out, const Hypergraph& g, const ScoreMatrix& scores) {
  std::vector<std::tuple<const std::string*, const std::string*, double>> rows;
  for (NodeId x = 0; x < scores.num_nodes(); ++x) {
    for (const auto& [y, v] : scores.row(x)) {
      if (g.label(x) < g.label(y)) {
        rows.emplace_back(&g.label(x), &g.label(y), v);
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (*std::get<0>(a) != *std::get<0>(b)) {
      return *std::get<0>(a) < *std::get<0>(b);
    }
    return *std::get<1>(a) < *std::get<1>(b);
  });
  out << "node_x,node_y,score\n";
  for (const auto& [x, y, v] : rows) {
    out << *x << ',' << *y << ',' << format_double(v) << '\n';
  }
}

}  // namespace hpra
