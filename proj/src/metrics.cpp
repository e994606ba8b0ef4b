#include "hpra/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "hpra/random.hpp"

namespace hpra {
namespace {

std::size_t overlap(const Hyperedge& a, const Hyperedge& b) {
  std::size_t count = 0;
  auto i = a.nodes.begin();
  auto j = b.nodes.begin();
  while (i != a.nodes.end() && j != b.nodes.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

// Best F1 of each `queries` member against `pool`. Only pool members sharing
// a node can score above zero, so candidates come from an inverted index.
std::vector<double> best_matches(std::span<const Hyperedge> queries,
                                 std::span<const Hyperedge> pool) {
  NodeId max_node = 0;
  for (const auto& e : pool) {
    if (!e.nodes.empty()) {
      max_node = std::max(max_node, e.nodes.back());
    }
  }
  std::vector<std::vector<std::size_t>> postings(static_cast<std::size_t>(max_node) + 1);
  for (std::size_t j = 0; j < pool.size(); ++j) {
    for (NodeId v : pool[j].nodes) {
      postings[v].push_back(j);
    }
  }
  std::vector<double> best(queries.size(), 0.0);
  std::vector<std::size_t> shared(pool.size(), 0);
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    for (NodeId v : queries[i].nodes) {
      if (v >= postings.size()) {
        continue;
      }
      for (std::size_t j : postings[v]) {
        if (shared[j]++ == 0) {
          touched.push_back(j);
        }
      }
    }
    double top = 0.0;
    const auto qsize = static_cast<double>(queries[i].nodes.size());
    for (std::size_t j : touched) {
      const double f1 = 2.0 * static_cast<double>(shared[j]) /
                        (qsize + static_cast<double>(pool[j].nodes.size()));
      top = std::max(top, f1);
      shared[j] = 0;
    }
    touched.clear();
    best[i] = top;
  }
  return best;
}

double mean(const std::vector<double>& values) {
  double acc = 0.0;
  for (double v : values) {
    acc += v;
  }
  return acc / static_cast<double>(values.size());
}

}  // namespace

double hyperedge_f1(const Hyperedge& truth, const Hyperedge& predicted) {
  const std::size_t total = truth.nodes.size() + predicted.nodes.size();
  if (total == 0) {
    return 0.0;
  }
  return 2.0 * static_cast<double>(overlap(truth, predicted)) / static_cast<double>(total);
}

double average_f1(std::span<const Hyperedge> missing, std::span<const Hyperedge> predicted) {
  if (missing.empty() || predicted.empty()) {
    throw std::invalid_argument("average_f1: both hyperedge sets must be nonempty");
  }
  const double forward = mean(best_matches(missing, predicted));
  const double backward = mean(best_matches(predicted, missing));
  return 0.5 * (forward + backward);
}

double auc(std::span<const double> missing_scores, std::span<const double> distractor_scores,
           const AucOptions& options) {
  if (missing_scores.empty() || distractor_scores.empty()) {
    throw std::invalid_argument("auc: score lists must be nonempty");
  }
  if (options.num_comparisons) {
    const std::size_t draws = *options.num_comparisons;
    if (draws == 0) {
      throw std::invalid_argument("auc: num_comparisons must be positive");
    }
    Rng rng = Rng::derive(options.seed, "auc");
    double credit = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
      const double m = missing_scores[rng.below(missing_scores.size())];
      const double d = distractor_scores[rng.below(distractor_scores.size())];
      credit += m > d ? 1.0 : (m == d ? 0.5 : 0.0);
    }
    return credit / static_cast<double>(draws);
  }
  std::vector<double> sorted(distractor_scores.begin(), distractor_scores.end());
  std::sort(sorted.begin(), sorted.end());
  // Counts stay integral (doubled ties) so the ratio is formed once.
  std::uint64_t doubled = 0;
  for (double m : missing_scores) {
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), m);
    const auto hi = std::upper_bound(lo, sorted.end(), m);
    doubled += 2 * static_cast<std::uint64_t>(lo - sorted.begin()) +
               static_cast<std::uint64_t>(hi - lo);
  }
  return static_cast<double>(doubled) /
         (2.0 * static_cast<double>(missing_scores.size()) *
          static_cast<double>(distractor_scores.size()));
}

double precision_at_l(std::span<const CandidateScore> ranking, std::span<const Hyperedge> missing) {
  const std::size_t l = missing.size();
  if (l == 0) {
    throw std::invalid_argument("precision_at_l: missing set must be nonempty");
  }
  if (ranking.size() < l) {
    throw std::invalid_argument("precision_at_l: ranking shorter than the missing set");
  }
  const std::unordered_set<Hyperedge, HyperedgeHash> truth(missing.begin(), missing.end());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < l; ++i) {
    if (truth.contains(ranking[i].hyperedge)) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(l);
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("paired_t_test: samples differ in length");
  }
  if (a.size() < 2) {
    throw std::invalid_argument("paired_t_test: need at least two pairs");
  }
  const std::size_t n = a.size();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    diff[i] = a[i] - b[i];
  }
  TTestResult result;
  result.n = n;
  if (std::all_of(diff.begin(), diff.end(), [](double d) { return d == 0.0; })) {
    return result;
  }
  const double m = mean(diff);
  double ss = 0.0;
  for (double d : diff) {
    ss += (d - m) * (d - m);
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (sd == 0.0) {
    result.degenerate = true;
    result.t = m > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
    result.p = 0.0;
    return result;
  }
  result.t = m / (sd / std::sqrt(static_cast<double>(n)));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  result.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(result.t)));
  return result;
}

}  // namespace hpra
