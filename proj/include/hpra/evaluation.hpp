#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hpra/hypergraph.hpp"
#include "hpra/metrics.hpp"
#include "hpra/similarity.hpp"

namespace hpra {

enum class SplitMode { kKFold, kTemporal };

struct Fold {
  std::vector<EdgeId> train;
  std::vector<EdgeId> missing;
};

struct SplitPlan {
  SplitMode mode = SplitMode::kKFold;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::int64_t train_begin = 0;
  std::int64_t train_end = 0;
  std::int64_t test_time = 0;
  std::vector<Fold> folds;
};

/// Random partition of the hyperedges into k near-equal missing sets; fold i
/// trains on the other k - 1 parts.
SplitPlan make_kfold(const Hypergraph& g, std::size_t k, std::uint64_t seed);

/// Single fold: train on timestamps in [train_begin, train_end], test on
/// hyperedges stamped test_time.
SplitPlan make_temporal(const Hypergraph& g, std::int64_t train_begin, std::int64_t train_end,
                        std::int64_t test_time);

/// Drops missing hyperedges with a node that has no neighbor in train.
/// train must share the node space the missing ids refer to.
HyperedgeSet prune_missing(const Hypergraph& train, std::span<const Hyperedge> missing);

struct MethodConfig {
  std::string name;
  /// nullopt is the uniform-random baseline.
  std::optional<ScoreKind> kind;
  ScoreParams params;
  /// Katz only: when it has more than one value, beta is chosen per fold by
  /// an inner 80/20 split of the training hyperedges.
  std::vector<double> beta_grid;
};

/// Standard method presets: "hpra", "cn", "katz" (grid
/// {0.005, 0.01, 0.05, 0.1, 0.5}), "random", "hpra-alpha=<a>".
MethodConfig method_preset(const std::string& name);

struct EvalOptions {
  std::string dataset = "dataset";
  bool generative = true;
  bool chs = true;
  double distractor_ratio = 10.0;
  double smoothing = 1.0;
  std::optional<std::size_t> auc_comparisons;
  double selection_holdout = 0.2;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct FoldRecord {
  std::string method;
  std::size_t fold = 0;
  std::size_t train_size = 0;
  std::size_t missing_before = 0;
  std::size_t missing_after = 0;
  bool skipped = false;
  std::string note;
  std::optional<double> selected_beta;
  std::optional<std::size_t> duplicates_of_train;
  std::optional<std::size_t> duplicates_within;
  std::map<std::string, double> metrics;
};

struct AggregateRecord {
  std::string method;
  std::string metric;
  double mean = 0.0;
  double std = 0.0;
  std::size_t folds = 0;
};

struct TTestRecord {
  std::string method_a;
  std::string method_b;
  std::string metric;
  TTestResult result;
};

struct EvalReport {
  std::string dataset;
  SplitPlan plan;
  std::vector<std::string> methods;
  std::vector<FoldRecord> folds;
  std::vector<AggregateRecord> aggregates;
  std::vector<TTestRecord> ttests;

  /// Per-fold values of one metric, in fold order, skipping folds without it.
  std::vector<double> values(const std::string& method, const std::string& metric) const;
  const AggregateRecord* aggregate(const std::string& method, const std::string& metric) const;
};

/// Runs every method on every fold. Metric names: "avg_f1" (generative),
/// "auc" and "precision" (candidate ranking). All methods in a fold share
/// the pruned missing set and the distractor set.
EvalReport run_experiment(const Hypergraph& g, const SplitPlan& plan,
                          std::span<const MethodConfig> methods, const EvalOptions& options);

/// Mean and sample standard deviation.
std::pair<double, double> mean_std(std::span<const double> values);

void write_report_json(std::ostream& out, const EvalReport& report);
/// dataset,method,metric,fold,value
void write_fold_csv(std::ostream& out, const EvalReport& report);
/// dataset,method,metric,mean,std
void write_aggregate_csv(std::ostream& out, const EvalReport& report);

}  // namespace hpra
