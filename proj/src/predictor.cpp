#include "hpra/predictor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "hpra/parallel.hpp"

namespace hpra {
namespace {

constexpr int kCardinalityRetries = 100;

std::size_t draw_cardinality(const DegreeDistribution& hdd, std::size_t limit, Rng& rng) {
  for (int attempt = 0; attempt < kCardinalityRetries; ++attempt) {
    const std::size_t d = hdd.sample(rng);
    if (d <= limit) {
      return d;
    }
  }
  throw std::runtime_error("predictor: sampled cardinality exceeds the " +
                           std::to_string(limit) + " available nodes");
}

// Running per-candidate sums of score(x, y) over y already in the hyperedge,
// sorted by node id.
using Affinity = std::vector<std::pair<NodeId, double>>;

void absorb_row(Affinity& affinity, std::span<const SymmetricSparse::Entry> row,
                Affinity& scratch) {
  scratch.clear();
  scratch.reserve(affinity.size() + row.size());
  auto a = affinity.begin();
  auto b = row.begin();
  while (a != affinity.end() || b != row.end()) {
    if (b == row.end() || (a != affinity.end() && a->first < b->first)) {
      scratch.push_back(*a++);
    } else if (a == affinity.end() || b->first < a->first) {
      scratch.emplace_back(b->first, b->second);
      ++b;
    } else {
      scratch.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  affinity.swap(scratch);
}

// k-th node of [0, n) not in `members` (sorted).
NodeId nth_outside(std::span<const NodeId> members, std::size_t k) {
  NodeId candidate = static_cast<NodeId>(k);
  for (NodeId m : members) {
    if (m <= candidate) {
      ++candidate;
    } else {
      break;
    }
  }
  return candidate;
}

void insert_sorted(std::vector<NodeId>& members, NodeId v) {
  members.insert(std::lower_bound(members.begin(), members.end(), v), v);
}

}  // namespace

DegreeDistribution::DegreeDistribution(std::size_t min_card, std::vector<double> probs,
                                       double smoothing)
    : min_card_(min_card), probs_(std::move(probs)), smoothing_(smoothing) {
  if (probs_.empty()) {
    throw std::invalid_argument("degree distribution: empty support");
  }
}

double DegreeDistribution::prob(std::size_t cardinality) const {
  if (cardinality < min_card_ || cardinality > max_cardinality()) {
    return 0.0;
  }
  return probs_[cardinality - min_card_];
}

std::size_t DegreeDistribution::sample(Rng& rng) const {
  return min_card_ + rng.categorical(probs_);
}

DegreeDistribution fit_degree_distribution(const Hypergraph& g, double smoothing,
                                           std::optional<CardinalitySupport> support) {
  if (g.num_edges() == 0) {
    throw std::invalid_argument("degree distribution: hypergraph has no hyperedges");
  }
  if (!(smoothing >= 0.0)) {
    throw std::invalid_argument("degree distribution: smoothing must be nonnegative");
  }
  std::size_t lo = g.edge_degree(0);
  std::size_t hi = lo;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    lo = std::min(lo, g.edge_degree(e));
    hi = std::max(hi, g.edge_degree(e));
  }
  CardinalitySupport range = support.value_or(CardinalitySupport{2, hi + 1});
  if (range.min_card < 2 || range.min_card > range.max_card) {
    throw std::invalid_argument("degree distribution: support must satisfy 2 <= min <= max");
  }
  if (lo < range.min_card || hi > range.max_card) {
    throw std::invalid_argument("degree distribution: support does not cover observed cardinalities");
  }
  const std::size_t width = range.max_card - range.min_card + 1;
  std::vector<double> counts(width, 0.0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    counts[g.edge_degree(e) - range.min_card] += 1.0;
  }
  const double denom = static_cast<double>(g.num_edges()) + smoothing * static_cast<double>(width);
  for (auto& c : counts) {
    c = (c + smoothing) / denom;
  }
  return DegreeDistribution(range.min_card, std::move(counts), smoothing);
}

std::unordered_map<NodeId, double> nhas(const ScoreMatrix& score, std::span<const NodeId> e,
                                        std::span<const NodeId> candidates) {
  if (e.empty()) {
    throw std::invalid_argument("nhas: hyperedge must be nonempty");
  }
  std::unordered_map<NodeId, double> out;
  out.reserve(candidates.size());
  for (NodeId x : candidates) {
    if (std::find(e.begin(), e.end(), x) != e.end()) {
      throw std::invalid_argument("nhas: candidate belongs to the hyperedge");
    }
    double acc = 0.0;
    for (NodeId y : e) {
      acc += score.get(x, y);
    }
    out[x] = acc / static_cast<double>(e.size());
  }
  return out;
}

Hyperedge predict_one(const Hypergraph& g, const ScoreMatrix& score,
                      const DegreeDistribution& hdd, Rng& rng) {
  const std::size_t n = g.num_nodes();
  const std::size_t d = draw_cardinality(hdd, n, rng);

  std::vector<double> degrees(n);
  for (NodeId v = 0; v < n; ++v) {
    degrees[v] = g.node_degree(v);
  }
  const std::size_t first = rng.categorical(degrees);
  if (first == n) {
    throw std::runtime_error("predictor: every node has zero degree");
  }

  std::vector<NodeId> members{static_cast<NodeId>(first)};
  Affinity affinity;
  Affinity scratch;
  absorb_row(affinity, score.row(members.front()), scratch);

  std::vector<NodeId> candidates;
  std::vector<double> weights;
  while (members.size() < d) {
    candidates.clear();
    weights.clear();
    const double size = static_cast<double>(members.size());
    for (const auto& [x, total] : affinity) {
      if (total > 0.0 && !std::binary_search(members.begin(), members.end(), x)) {
        candidates.push_back(x);
        weights.push_back(total / size);
      }
    }
    NodeId next;
    const std::size_t pick = rng.categorical(weights);
    if (pick < candidates.size()) {
      next = candidates[pick];
    } else {
      next = nth_outside(members, rng.below(n - members.size()));
    }
    insert_sorted(members, next);
    absorb_row(affinity, score.row(next), scratch);
  }
  return Hyperedge(std::move(members));
}

HyperedgeSet predict_set(const Hypergraph& g, const ScoreMatrix& score,
                         const DegreeDistribution& hdd, const PredictionConfig& config,
                         unsigned threads) {
  if (config.num_predictions == 0) {
    throw std::invalid_argument("predict_set: num_predictions must be at least 1");
  }
  HyperedgeSet out(config.num_predictions);
  parallel_chunks(out.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = Rng::derive(config.rng_seed, "predict", i);
      out[i] = predict_one(g, score, hdd, rng);
    }
  });
  return out;
}

double candidate_score(const ScoreMatrix& score, const Hyperedge& candidate) {
  const auto& nodes = candidate.nodes;
  const std::size_t size = nodes.size();
  if (size < 2) {
    throw std::invalid_argument("rank_candidates: candidate needs at least two nodes");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      acc += score.get(nodes[i], nodes[j]);
    }
  }
  return acc * 2.0 / static_cast<double>(size * (size - 1));
}

CandidateRanking rank_candidates(const ScoreMatrix& score, std::span<const Hyperedge> candidates,
                                 std::size_t k, unsigned threads) {
  if (k > candidates.size()) {
    throw std::invalid_argument("rank_candidates: k exceeds the number of candidates");
  }
  for (const auto& c : candidates) {
    if (c.cardinality() < 2) {
      throw std::invalid_argument("rank_candidates: candidate needs at least two nodes");
    }
  }
  CandidateRanking result;
  result.k = k;
  result.ranked.resize(candidates.size());
  parallel_chunks(candidates.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      result.ranked[i] = CandidateScore{candidates[i], candidate_score(score, candidates[i]), i};
    }
  });
  std::stable_sort(result.ranked.begin(), result.ranked.end(),
                   [](const CandidateScore& a, const CandidateScore& b) { return a.score > b.score; });
  return result;
}

Hyperedge sample_uniform_hyperedge(std::size_t num_nodes, std::size_t cardinality, Rng& rng) {
  if (cardinality > num_nodes) {
    throw std::invalid_argument("sample_uniform_hyperedge: cardinality exceeds node count");
  }
  // Floyd's subset sampling: one variate per member.
  std::vector<NodeId> chosen;
  chosen.reserve(cardinality);
  for (std::size_t j = num_nodes - cardinality; j < num_nodes; ++j) {
    const auto t = static_cast<NodeId>(rng.below(j + 1));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(static_cast<NodeId>(j));
    }
  }
  return Hyperedge(std::move(chosen));
}

HyperedgeSet generate_distractors(const Hypergraph& g, const DegreeDistribution& hdd,
                                  std::size_t count, std::span<const Hyperedge> forbidden,
                                  Rng& rng, std::size_t max_attempts) {
  if (count == 0) {
    throw std::invalid_argument("generate_distractors: count must be at least 1");
  }
  const std::unordered_set<Hyperedge, HyperedgeHash> blocked(forbidden.begin(), forbidden.end());
  const std::size_t n = g.num_nodes();
  HyperedgeSet out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < max_attempts && !placed; ++attempt) {
      const std::size_t d = hdd.sample(rng);
      if (d > n) {
        continue;
      }
      Hyperedge candidate = sample_uniform_hyperedge(n, d, rng);
      if (!blocked.contains(candidate)) {
        out.push_back(std::move(candidate));
        placed = true;
      }
    }
    if (!placed) {
      throw std::runtime_error("generate_distractors: no admissible hyperedge after " +
                               std::to_string(max_attempts) + " attempts (distractor " +
                               std::to_string(i) + " of " + std::to_string(count) + ")");
    }
  }
  return out;
}

}  // namespace hpra
