#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hpra/hypergraph.hpp"
#include "hpra/random.hpp"
#include "hpra/similarity.hpp"

namespace hpra {

/// Smoothed categorical distribution over hyperedge cardinalities.
class DegreeDistribution {
 public:
  DegreeDistribution(std::size_t min_card, std::vector<double> probs, double smoothing);

  std::size_t min_cardinality() const { return min_card_; }
  std::size_t max_cardinality() const { return min_card_ + probs_.size() - 1; }
  double smoothing() const { return smoothing_; }
  /// 0 outside the support.
  double prob(std::size_t cardinality) const;
  const std::vector<double>& probs() const { return probs_; }

  /// One inverse-CDF draw.
  std::size_t sample(Rng& rng) const;

 private:
  std::size_t min_card_;
  std::vector<double> probs_;
  double smoothing_;
};

/// Inclusive cardinality range.
struct CardinalitySupport {
  std::size_t min_card;
  std::size_t max_card;
};

/// Additive smoothing of the hyperedge cardinality histogram:
/// p(d) = (count(d) + smoothing) / (m + smoothing * |support|).
/// The default support is [2, max observed cardinality + 1].
DegreeDistribution fit_degree_distribution(const Hypergraph& g, double smoothing,
                                           std::optional<CardinalitySupport> support = {});

/// NHAS(x, e) = mean over y in e of score(x, y), for every candidate x.
/// Candidates must not intersect e.
std::unordered_map<NodeId, double> nhas(const ScoreMatrix& score, std::span<const NodeId> e,
                                        std::span<const NodeId> candidates);

struct PredictionConfig {
  std::size_t num_predictions = 1;
  std::uint64_t rng_seed = 0;
  double smoothing = 1.0;
  std::optional<CardinalitySupport> support;
};

/// One generative draw: cardinality from hdd, a first node by preferential
/// attachment on d(v), then nodes from V \ e proportional to NHAS. When
/// every NHAS is zero the next node is uniform over V \ e.
Hyperedge predict_one(const Hypergraph& g, const ScoreMatrix& score,
                      const DegreeDistribution& hdd, Rng& rng);

/// num_predictions independent draws against the same g. Draw i uses the
/// stream derived from (rng_seed, "predict", i).
HyperedgeSet predict_set(const Hypergraph& g, const ScoreMatrix& score,
                         const DegreeDistribution& hdd, const PredictionConfig& config,
                         unsigned threads = 1);

struct CandidateScore {
  Hyperedge hyperedge;
  double score = 0.0;
  std::size_t input_index = 0;
};

/// Mean pairwise score over a candidate hyperedge (missing pairs count 0).
double candidate_score(const ScoreMatrix& score, const Hyperedge& candidate);

struct CandidateRanking {
  std::vector<CandidateScore> ranked;  // full ranking, descending
  std::size_t k = 0;

  std::span<const CandidateScore> top() const { return {ranked.data(), k}; }
};

/// Scores every candidate and sorts descending; ties keep input order.
CandidateRanking rank_candidates(const ScoreMatrix& score, std::span<const Hyperedge> candidates,
                                 std::size_t k, unsigned threads = 1);

/// Random non-edges: cardinality from hdd, nodes uniform without replacement
/// over V. A draw equal to a forbidden node set is redrawn, up to
/// max_attempts per distractor; exhausting the budget throws.
HyperedgeSet generate_distractors(const Hypergraph& g, const DegreeDistribution& hdd,
                                  std::size_t count, std::span<const Hyperedge> forbidden,
                                  Rng& rng, std::size_t max_attempts = 1000);

/// Uniform-random baseline predictor: cardinality from hdd, nodes uniform.
Hyperedge sample_uniform_hyperedge(std::size_t num_nodes, std::size_t cardinality, Rng& rng);

}  // namespace hpra
