#include "hpra/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace hpra {
namespace {

// Rows are built by appending contributions in edge id order; a stable sort
// by column keeps that order inside each run of equal columns.
void merge_rows(std::vector<std::vector<SymmetricSparse::Entry>>& rows) {
  for (auto& row : rows) {
    std::stable_sort(row.begin(), row.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < row.size();) {
      const NodeId col = row[i].first;
      double acc = 0.0;
      for (; i < row.size() && row[i].first == col; ++i) {
        acc += row[i].second;
      }
      row[out++] = {col, acc};
    }
    row.resize(out);
  }
}

template <typename Contribution>
SymmetricSparse expand(const Hypergraph& g, Contribution contribution) {
  std::vector<std::vector<SymmetricSparse::Entry>> rows(g.num_nodes());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& nodes = g.edge(e).nodes;
    if (nodes.size() < 2) {
      continue;
    }
    const double value = contribution(g.edge(e));
    for (NodeId x : nodes) {
      for (NodeId y : nodes) {
        if (x != y) {
          rows[x].emplace_back(y, value);
        }
      }
    }
  }
  merge_rows(rows);
  return SymmetricSparse(std::move(rows));
}

}  // namespace

Hyperedge::Hyperedge(std::vector<NodeId> members, double w)
    : nodes(std::move(members)), weight(w) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
}

bool Hyperedge::contains(NodeId v) const {
  return std::binary_search(nodes.begin(), nodes.end(), v);
}

std::size_t HyperedgeHash::operator()(const Hyperedge& e) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (NodeId v : e.nodes) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double SymmetricSparse::get(NodeId x, NodeId y) const {
  if (x >= rows_.size()) {
    return 0.0;
  }
  const auto& row = rows_[x];
  auto it = std::lower_bound(row.begin(), row.end(), y,
                             [](const Entry& a, NodeId col) { return a.first < col; });
  return (it != row.end() && it->first == y) ? it->second : 0.0;
}

std::size_t SymmetricSparse::num_pairs() const {
  std::size_t total = 0;
  for (const auto& row : rows_) {
    total += row.size();
  }
  return total / 2;
}

double SymmetricSparse::row_sum(NodeId x) const {
  double acc = 0.0;
  for (const auto& [col, value] : rows_[x]) {
    acc += value;
  }
  return acc;
}

Hypergraph Hypergraph::build(const std::vector<EdgeRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("hypergraph: empty edge list");
  }
  Hypergraph g;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::pair<std::vector<std::string>, std::size_t>> kept;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (rec.labels.empty()) {
      throw std::invalid_argument("hypergraph: hyperedge " + std::to_string(i) +
                                  " has no nodes");
    }
    if (rec.weight && !(*rec.weight > 0.0)) {
      throw std::invalid_argument("hypergraph: hyperedge " + std::to_string(i) +
                                  " has non-positive weight");
    }
    std::vector<std::string> distinct;
    for (const auto& label : rec.labels) {
      if (std::find(distinct.begin(), distinct.end(), label) == distinct.end()) {
        distinct.push_back(label);
      }
    }
    if (distinct.size() < 2) {
      ++g.dropped_singletons_;
      continue;
    }
    kept.emplace_back(std::move(distinct), i);
  }
  if (kept.empty()) {
    throw std::invalid_argument("hypergraph: no hyperedge with two or more nodes");
  }
  for (auto& [labels, source] : kept) {
    std::vector<NodeId> members;
    members.reserve(labels.size());
    for (auto& label : labels) {
      auto [it, inserted] = ids.try_emplace(label, static_cast<NodeId>(g.labels_.size()));
      if (inserted) {
        g.labels_.push_back(label);
      }
      members.push_back(it->second);
    }
    g.edges_.emplace_back(std::move(members), records[source].weight.value_or(1.0));
    g.timestamps_.push_back(records[source].timestamp);
  }
  g.index();
  return g;
}

Hypergraph Hypergraph::from_edges(std::vector<std::string> labels,
                                  std::vector<Hyperedge> edges,
                                  std::vector<std::optional<std::int64_t>> timestamps) {
  if (!timestamps.empty() && timestamps.size() != edges.size()) {
    throw std::invalid_argument("hypergraph: timestamp count does not match edges");
  }
  timestamps.resize(edges.size());
  Hypergraph g;
  g.labels_ = std::move(labels);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto& e = edges[i];
    if (!(e.weight > 0.0)) {
      throw std::invalid_argument("hypergraph: non-positive weight");
    }
    for (NodeId v : e.nodes) {
      if (v >= g.labels_.size()) {
        throw std::out_of_range("hypergraph: node id out of range");
      }
    }
    if (e.nodes.size() < 2) {
      ++g.dropped_singletons_;
      continue;
    }
    g.edges_.push_back(std::move(e));
    g.timestamps_.push_back(timestamps[i]);
  }
  g.index();
  return g;
}

Hypergraph Hypergraph::subgraph(std::span<const EdgeId> edge_ids) const {
  std::vector<Hyperedge> edges;
  std::vector<std::optional<std::int64_t>> stamps;
  edges.reserve(edge_ids.size());
  stamps.reserve(edge_ids.size());
  for (EdgeId e : edge_ids) {
    edges.push_back(edges_.at(e));
    stamps.push_back(timestamps_[e]);
  }
  Hypergraph g = from_edges(labels_, std::move(edges), std::move(stamps));
  g.label_index_ = label_index_;
  return g;
}

void Hypergraph::index() {
  const std::size_t n = labels_.size();
  incidence_offsets_.assign(n + 1, 0);
  node_degree_.assign(n, 0.0);
  for (const auto& e : edges_) {
    for (NodeId v : e.nodes) {
      ++incidence_offsets_[v + 1];
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    incidence_offsets_[v + 1] += incidence_offsets_[v];
  }
  incidence_.resize(incidence_offsets_[n]);
  std::vector<std::size_t> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    for (NodeId v : edges_[e].nodes) {
      incidence_[cursor[v]++] = e;
      node_degree_[v] += edges_[e].weight;
    }
  }
  if (label_index_.size() != n) {
    label_index_.clear();
    label_index_.reserve(n);
    for (NodeId v = 0; v < n; ++v) {
      label_index_.emplace_back(labels_[v], v);
    }
    std::sort(label_index_.begin(), label_index_.end());
  }
}

bool Hypergraph::has_timestamps() const {
  return !timestamps_.empty() &&
         std::all_of(timestamps_.begin(), timestamps_.end(),
                     [](const auto& t) { return t.has_value(); });
}

std::span<const EdgeId> Hypergraph::incident_edges(NodeId v) const {
  return {incidence_.data() + incidence_offsets_[v],
          incidence_offsets_[v + 1] - incidence_offsets_[v]};
}

std::vector<NodeId> Hypergraph::neighbors(NodeId v) const {
  if (v >= num_nodes()) {
    throw std::out_of_range("hypergraph: invalid node id " + std::to_string(v));
  }
  std::vector<NodeId> out;
  for (EdgeId e : incident_edges(v)) {
    for (NodeId u : edges_[e].nodes) {
      if (u != v) {
        out.push_back(u);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<NodeId> Hypergraph::find(const std::string& label) const {
  auto it = std::lower_bound(
      label_index_.begin(), label_index_.end(), label,
      [](const auto& entry, const std::string& key) { return entry.first < key; });
  if (it != label_index_.end() && it->first == label) {
    return it->second;
  }
  return std::nullopt;
}

SymmetricSparse adjacency_clique(const Hypergraph& g) {
  return expand(g, [](const Hyperedge& e) { return e.weight; });
}

SymmetricSparse adjacency_ndp(const Hypergraph& g) {
  return expand(g, [](const Hyperedge& e) {
    return e.weight / static_cast<double>(e.nodes.size() - 1);
  });
}

}  // namespace hpra
