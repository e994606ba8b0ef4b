#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "hpra/hypergraph.hpp"
#include "hpra/predictor.hpp"

namespace hpra {

/// Set-overlap F1 between a true and a predicted hyperedge:
/// 2|e & p| / (|e| + |p|).
double hyperedge_f1(const Hyperedge& truth, const Hyperedge& predicted);

/// Symmetric best-match F1: half the mean best F1 of each missing hyperedge
/// against the predictions plus half the mean best F1 of each prediction
/// against the missing set. Throws on an empty set.
double average_f1(std::span<const Hyperedge> missing, std::span<const Hyperedge> predicted);

struct AucOptions {
  /// nullopt compares every (missing, distractor) pair.
  std::optional<std::size_t> num_comparisons;
  std::uint64_t seed = 0;
};

/// Probability that a missing hyperedge outscores a distractor, ties 1/2.
double auc(std::span<const double> missing_scores, std::span<const double> distractor_scores,
           const AucOptions& options = {});

/// Fraction of the top L = |missing| ranked candidates whose node set is a
/// missing hyperedge.
double precision_at_l(std::span<const CandidateScore> ranking, std::span<const Hyperedge> missing);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  std::size_t n = 0;
  /// Nonzero mean difference with zero variance: t = +-inf, p = 0.
  bool degenerate = false;
};

/// Two-sided paired Student t-test on a[i] - b[i] with n - 1 degrees of freedom.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace hpra
