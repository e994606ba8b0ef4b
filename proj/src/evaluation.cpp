#include "hpra/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "hpra/hyperedge_io.hpp"
#include "hpra/predictor.hpp"
#include "hpra/random.hpp"

namespace hpra {
namespace {

const std::vector<double> kKatzBetaGrid{0.005, 0.01, 0.05, 0.1, 0.5};

void shuffle(std::vector<EdgeId>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.below(i)]);
  }
}

HyperedgeSet collect(const Hypergraph& g, std::span<const EdgeId> ids) {
  HyperedgeSet out;
  out.reserve(ids.size());
  for (EdgeId e : ids) {
    out.push_back(g.edge(e));
  }
  return out;
}

struct ChsOutcome {
  double auc = 0.0;
  double precision = 0.0;
};

ChsOutcome evaluate_ranking(std::span<const double> candidate_scores,
                            const HyperedgeSet& candidates, std::size_t num_missing,
                            const EvalOptions& options, std::uint64_t auc_seed) {
  std::vector<CandidateScore> ranking(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    ranking[i] = CandidateScore{candidates[i], candidate_scores[i], i};
  }
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const CandidateScore& a, const CandidateScore& b) { return a.score > b.score; });
  AucOptions auc_options;
  auc_options.num_comparisons = options.auc_comparisons;
  auc_options.seed = auc_seed;
  ChsOutcome out;
  out.auc = auc(candidate_scores.subspan(0, num_missing), candidate_scores.subspan(num_missing),
                auc_options);
  out.precision = precision_at_l(ranking, std::span(candidates).subspan(0, num_missing));
  return out;
}

std::vector<double> score_candidates(const ScoreMatrix& score, const HyperedgeSet& candidates,
                                     unsigned threads) {
  auto ranking = rank_candidates(score, candidates, 0, threads);
  std::vector<double> scores(candidates.size());
  for (const auto& c : ranking.ranked) {
    scores[c.input_index] = c.score;
  }
  return scores;
}

// Everything a fold needs that does not depend on the method.
struct FoldContext {
  Hypergraph train;
  HyperedgeSet missing;
  DegreeDistribution hdd;
  HyperedgeSet candidates;  // missing followed by distractors
};

HyperedgeSet make_distractors(const Hypergraph& train, const HyperedgeSet& missing,
                              std::span<const Hyperedge> forbidden_extra, double ratio,
                              Rng& rng) {
  const auto empirical = fit_degree_distribution(train, 0.0);
  HyperedgeSet forbidden(train.edges().begin(), train.edges().end());
  forbidden.insert(forbidden.end(), forbidden_extra.begin(), forbidden_extra.end());
  const auto count = static_cast<std::size_t>(
      std::ceil(ratio * static_cast<double>(missing.size())));
  return generate_distractors(train, empirical, std::max<std::size_t>(count, 1), forbidden, rng);
}

double select_katz_beta(const Hypergraph& train, const MethodConfig& method,
                        const EvalOptions& options, std::size_t fold) {
  std::vector<EdgeId> ids(train.num_edges());
  std::iota(ids.begin(), ids.end(), 0);
  Rng rng = Rng::derive(options.seed, "katz-select", fold);
  shuffle(ids, rng);
  const auto held = std::max<std::size_t>(
      1, static_cast<std::size_t>(options.selection_holdout * static_cast<double>(ids.size())));
  if (held >= ids.size()) {
    return method.beta_grid.front();
  }
  std::vector<EdgeId> inner_missing_ids(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(held));
  std::vector<EdgeId> inner_train_ids(ids.begin() + static_cast<std::ptrdiff_t>(held), ids.end());
  std::sort(inner_train_ids.begin(), inner_train_ids.end());
  const Hypergraph inner = train.subgraph(inner_train_ids);
  const HyperedgeSet raw = collect(train, inner_missing_ids);
  const HyperedgeSet inner_missing = prune_missing(inner, raw);
  if (inner_missing.empty()) {
    return method.beta_grid.front();
  }

  HyperedgeSet candidates;
  if (options.chs) {
    Rng drng = Rng::derive(options.seed, "katz-select-distractors", fold);
    candidates = inner_missing;
    auto distractors = make_distractors(inner, inner_missing, raw, options.distractor_ratio, drng);
    candidates.insert(candidates.end(), distractors.begin(), distractors.end());
  }
  const auto hdd = fit_degree_distribution(inner, options.smoothing);

  double best_beta = method.beta_grid.front();
  double best_value = -1.0;
  for (double beta : method.beta_grid) {
    const ScoreMatrix score = katz(inner, beta, method.params.max_len, options.threads);
    double value = 0.0;
    if (options.chs) {
      const auto scores = score_candidates(score, candidates, options.threads);
      value = evaluate_ranking(scores, candidates, inner_missing.size(), options,
                               splitmix64(options.seed ^ fold))
                  .auc;
    } else {
      PredictionConfig config;
      config.num_predictions = inner_missing.size();
      config.rng_seed = splitmix64(options.seed + fold);
      value = average_f1(inner_missing, predict_set(inner, score, hdd, config, options.threads));
    }
    if (value > best_value) {
      best_value = value;
      best_beta = beta;
    }
  }
  return best_beta;
}

void run_method(const FoldContext& ctx, const MethodConfig& method, const EvalOptions& options,
                std::size_t fold, FoldRecord& record) {
  const std::size_t num_missing = ctx.missing.size();
  if (!method.kind) {
    if (options.generative) {
      Rng rng = Rng::derive(options.seed, "random-predict", fold);
      HyperedgeSet predicted;
      predicted.reserve(num_missing);
      for (std::size_t i = 0; i < num_missing; ++i) {
        std::size_t d = ctx.hdd.sample(rng);
        d = std::min(d, ctx.train.num_nodes());
        predicted.push_back(sample_uniform_hyperedge(ctx.train.num_nodes(), d, rng));
      }
      record.metrics["avg_f1"] = average_f1(ctx.missing, predicted);
    }
    if (options.chs) {
      Rng rng = Rng::derive(options.seed, "random-score", fold);
      std::vector<double> scores(ctx.candidates.size());
      for (auto& s : scores) {
        s = rng.uniform();
      }
      auto outcome = evaluate_ranking(scores, ctx.candidates, num_missing, options,
                                      Rng::derive(options.seed, "auc", fold).next());
      record.metrics["auc"] = outcome.auc;
      record.metrics["precision"] = outcome.precision;
    }
    return;
  }

  ScoreParams params = method.params;
  if (*method.kind == ScoreKind::kKatz && method.beta_grid.size() > 1) {
    params.beta = select_katz_beta(ctx.train, method, options, fold);
    record.selected_beta = params.beta;
  } else if (*method.kind == ScoreKind::kKatz) {
    if (!method.beta_grid.empty()) {
      params.beta = method.beta_grid.front();
    }
    record.selected_beta = params.beta;
  }
  const ScoreMatrix score = score_matrix(ctx.train, *method.kind, params, options.threads);

  if (options.generative) {
    PredictionConfig config;
    config.num_predictions = num_missing;
    config.rng_seed = Rng::derive(options.seed, "predict-fold", fold).next();
    config.smoothing = options.smoothing;
    const HyperedgeSet predicted = predict_set(ctx.train, score, ctx.hdd, config, options.threads);
    record.metrics["avg_f1"] = average_f1(ctx.missing, predicted);

    const std::unordered_set<Hyperedge, HyperedgeHash> training(ctx.train.edges().begin(),
                                                                ctx.train.edges().end());
    std::unordered_set<Hyperedge, HyperedgeHash> seen;
    std::size_t of_train = 0;
    std::size_t within = 0;
    for (const auto& e : predicted) {
      of_train += training.contains(e) ? 1 : 0;
      within += seen.insert(e).second ? 0 : 1;
    }
    record.duplicates_of_train = of_train;
    record.duplicates_within = within;
  }
  if (options.chs) {
    const auto scores = score_candidates(score, ctx.candidates, options.threads);
    auto outcome = evaluate_ranking(scores, ctx.candidates, num_missing, options,
                                    Rng::derive(options.seed, "auc", fold).next());
    record.metrics["auc"] = outcome.auc;
    record.metrics["precision"] = outcome.precision;
  }
}

nlohmann::json to_json(const TTestResult& r) {
  nlohmann::json j;
  j["t"] = r.t;
  j["p"] = r.p;
  j["folds"] = r.n;
  j["degenerate"] = r.degenerate;
  return j;
}

}  // namespace

SplitPlan make_kfold(const Hypergraph& g, std::size_t k, std::uint64_t seed) {
  const std::size_t m = g.num_edges();
  if (k < 2) {
    throw std::invalid_argument("make_kfold: K must be at least 2");
  }
  if (k > m) {
    throw std::invalid_argument("make_kfold: K exceeds the number of hyperedges");
  }
  std::vector<EdgeId> order(m);
  std::iota(order.begin(), order.end(), 0);
  Rng rng = Rng::derive(seed, "split");
  shuffle(order, rng);

  SplitPlan plan;
  plan.mode = SplitMode::kKFold;
  plan.k = k;
  plan.seed = seed;
  std::vector<std::size_t> owner(m);
  for (std::size_t f = 0; f < k; ++f) {
    for (std::size_t i = m * f / k; i < m * (f + 1) / k; ++i) {
      owner[order[i]] = f;
    }
  }
  plan.folds.resize(k);
  for (EdgeId e = 0; e < m; ++e) {
    for (std::size_t f = 0; f < k; ++f) {
      (owner[e] == f ? plan.folds[f].missing : plan.folds[f].train).push_back(e);
    }
  }
  return plan;
}

SplitPlan make_temporal(const Hypergraph& g, std::int64_t train_begin, std::int64_t train_end,
                        std::int64_t test_time) {
  if (!g.has_timestamps()) {
    throw std::invalid_argument("make_temporal: every hyperedge needs a t= timestamp");
  }
  if (train_begin > train_end) {
    throw std::invalid_argument("make_temporal: empty training window");
  }
  SplitPlan plan;
  plan.mode = SplitMode::kTemporal;
  plan.k = 1;
  plan.train_begin = train_begin;
  plan.train_end = train_end;
  plan.test_time = test_time;
  Fold fold;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const std::int64_t t = *g.timestamp(e);
    if (t == test_time) {
      fold.missing.push_back(e);
    } else if (t >= train_begin && t <= train_end) {
      fold.train.push_back(e);
    }
  }
  if (fold.train.empty()) {
    throw std::invalid_argument("make_temporal: no hyperedges in the training window");
  }
  if (fold.missing.empty()) {
    throw std::invalid_argument("make_temporal: no hyperedges at the test time");
  }
  plan.folds.push_back(std::move(fold));
  return plan;
}

HyperedgeSet prune_missing(const Hypergraph& train, std::span<const Hyperedge> missing) {
  HyperedgeSet kept;
  for (const auto& e : missing) {
    const bool connected = std::all_of(e.nodes.begin(), e.nodes.end(), [&](NodeId v) {
      return v < train.num_nodes() && !train.incident_edges(v).empty();
    });
    if (connected) {
      kept.push_back(e);
    }
  }
  return kept;
}

MethodConfig method_preset(const std::string& name) {
  MethodConfig m;
  m.name = name;
  if (name == "hpra" || name == "hra") {
    m.kind = ScoreKind::kHra;
  } else if (name == "cn") {
    m.kind = ScoreKind::kCn;
  } else if (name == "katz") {
    m.kind = ScoreKind::kKatz;
    m.beta_grid = kKatzBetaGrid;
  } else if (name == "random") {
  } else if (name.rfind("hpra-alpha=", 0) == 0) {
    m.kind = ScoreKind::kHra;
    std::size_t used = 0;
    const std::string value = name.substr(11);
    double alpha = 0.0;
    try {
      alpha = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      throw std::invalid_argument("bad alpha in method '" + name + "'");
    }
    m.params.alpha = alpha;
  } else if (name.rfind("katz-beta=", 0) == 0) {
    m.kind = ScoreKind::kKatz;
    m.beta_grid = {std::stod(name.substr(10))};
  } else {
    throw std::invalid_argument("unknown method '" + name + "'");
  }
  return m;
}

std::pair<double, double> mean_std(std::span<const double> values) {
  if (values.empty()) {
    return {0.0, 0.0};
  }
  double acc = 0.0;
  for (double v : values) {
    acc += v;
  }
  const double mean = acc / static_cast<double>(values.size());
  if (values.size() < 2) {
    return {mean, 0.0};
  }
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

std::vector<double> EvalReport::values(const std::string& method, const std::string& metric) const {
  std::vector<double> out;
  for (const auto& f : folds) {
    if (f.method != method || f.skipped) {
      continue;
    }
    if (auto it = f.metrics.find(metric); it != f.metrics.end()) {
      out.push_back(it->second);
    }
  }
  return out;
}

const AggregateRecord* EvalReport::aggregate(const std::string& method,
                                             const std::string& metric) const {
  for (const auto& a : aggregates) {
    if (a.method == method && a.metric == metric) {
      return &a;
    }
  }
  return nullptr;
}

EvalReport run_experiment(const Hypergraph& g, const SplitPlan& plan,
                          std::span<const MethodConfig> methods, const EvalOptions& options) {
  if (methods.empty()) {
    throw std::invalid_argument("run_experiment: no methods");
  }
  if (!options.generative && !options.chs) {
    throw std::invalid_argument("run_experiment: no evaluation mode selected");
  }
  EvalReport report;
  report.dataset = options.dataset;
  report.plan = plan;
  for (const auto& m : methods) {
    report.methods.push_back(m.name);
  }

  std::size_t completed = 0;
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    const Fold& fold = plan.folds[f];
    std::vector<FoldRecord> records(methods.size());
    for (std::size_t i = 0; i < methods.size(); ++i) {
      records[i].method = methods[i].name;
      records[i].fold = f;
      records[i].train_size = fold.train.size();
      records[i].missing_before = fold.missing.size();
    }
    auto fail_all = [&](const std::string& note) {
      for (auto& r : records) {
        r.skipped = true;
        r.note = note;
      }
    };

    try {
      Hypergraph train = g.subgraph(fold.train);
      const HyperedgeSet raw_missing = collect(g, fold.missing);
      HyperedgeSet missing = prune_missing(train, raw_missing);
      for (auto& r : records) {
        r.train_size = train.num_edges();
        r.missing_after = missing.size();
      }
      if (missing.empty()) {
        fail_all("every missing hyperedge was pruned");
      } else {
        auto hdd = fit_degree_distribution(train, options.smoothing);
        HyperedgeSet candidates;
        if (options.chs) {
          Rng rng = Rng::derive(options.seed, "distractors", f);
          candidates = missing;
          auto distractors =
              make_distractors(train, missing, raw_missing, options.distractor_ratio, rng);
          candidates.insert(candidates.end(), distractors.begin(), distractors.end());
        }
        FoldContext ctx{std::move(train), std::move(missing), std::move(hdd),
                        std::move(candidates)};
        for (std::size_t i = 0; i < methods.size(); ++i) {
          try {
            run_method(ctx, methods[i], options, f, records[i]);
            ++completed;
          } catch (const std::exception& e) {
            records[i].skipped = true;
            records[i].note = e.what();
            records[i].metrics.clear();
          }
        }
      }
    } catch (const std::exception& e) {
      fail_all(e.what());
    }
    report.folds.insert(report.folds.end(), records.begin(), records.end());
  }
  if (completed == 0) {
    std::string why = report.folds.empty() ? "no folds" : report.folds.front().note;
    throw std::runtime_error("run_experiment: every fold failed (" + why + ")");
  }

  const std::vector<std::string> metric_names{"avg_f1", "auc", "precision"};
  for (const auto& method : report.methods) {
    for (const auto& metric : metric_names) {
      const auto vals = report.values(method, metric);
      if (vals.empty()) {
        continue;
      }
      const auto [mean, sd] = mean_std(vals);
      report.aggregates.push_back({method, metric, mean, sd, vals.size()});
    }
  }
  for (const auto& metric : metric_names) {
    for (std::size_t a = 0; a < report.methods.size(); ++a) {
      for (std::size_t b = a + 1; b < report.methods.size(); ++b) {
        std::vector<double> va;
        std::vector<double> vb;
        for (std::size_t f = 0; f < plan.folds.size(); ++f) {
          const auto& ra = report.folds[f * methods.size() + a];
          const auto& rb = report.folds[f * methods.size() + b];
          auto ia = ra.metrics.find(metric);
          auto ib = rb.metrics.find(metric);
          if (!ra.skipped && !rb.skipped && ia != ra.metrics.end() && ib != rb.metrics.end()) {
            va.push_back(ia->second);
            vb.push_back(ib->second);
          }
        }
        if (va.size() >= 2) {
          report.ttests.push_back(
              {report.methods[a], report.methods[b], metric, paired_t_test(va, vb)});
        }
      }
    }
  }
  return report;
}

void write_report_json(std::ostream& out, const EvalReport& report) {
  nlohmann::json j;
  j["dataset"] = report.dataset;
  nlohmann::json split;
  if (report.plan.mode == SplitMode::kKFold) {
    split["mode"] = "kfold";
    split["k"] = report.plan.k;
    split["seed"] = report.plan.seed;
  } else {
    split["mode"] = "temporal";
    split["train_begin"] = report.plan.train_begin;
    split["train_end"] = report.plan.train_end;
    split["test_time"] = report.plan.test_time;
  }
  j["split"] = split;
  j["methods"] = report.methods;
  j["folds"] = nlohmann::json::array();
  for (const auto& f : report.folds) {
    nlohmann::json rec;
    rec["method"] = f.method;
    rec["fold"] = f.fold;
    rec["train_size"] = f.train_size;
    rec["missing_before_pruning"] = f.missing_before;
    rec["missing_after_pruning"] = f.missing_after;
    rec["skipped"] = f.skipped;
    if (!f.note.empty()) {
      rec["note"] = f.note;
    }
    if (f.selected_beta) {
      rec["katz_beta"] = *f.selected_beta;
    }
    if (f.duplicates_of_train) {
      rec["predicted_duplicates_of_train"] = *f.duplicates_of_train;
      rec["predicted_duplicates_within"] = *f.duplicates_within;
    }
    rec["metrics"] = f.metrics;
    j["folds"].push_back(rec);
  }
  j["aggregates"] = nlohmann::json::array();
  for (const auto& a : report.aggregates) {
    j["aggregates"].push_back(
        {{"method", a.method}, {"metric", a.metric}, {"mean", a.mean}, {"std", a.std},
         {"folds", a.folds}});
  }
  j["ttests"] = nlohmann::json::array();
  for (const auto& t : report.ttests) {
    nlohmann::json rec = to_json(t.result);
    rec["method_a"] = t.method_a;
    rec["method_b"] = t.method_b;
    rec["metric"] = t.metric;
    j["ttests"].push_back(rec);
  }
  out << j.dump(2) << '\n';
}

void write_fold_csv(std::ostream& out, const EvalReport& report) {
  out << "dataset,method,metric,fold,value\n";
  for (const auto& f : report.folds) {
    for (const auto& [metric, value] : f.metrics) {
      out << report.dataset << ',' << f.method << ',' << metric << ',' << f.fold << ','
          << format_double(value) << '\n';
    }
  }
}

void write_aggregate_csv(std::ostream& out, const EvalReport& report) {
  out << "dataset,method,metric,mean,std\n";
  for (const auto& a : report.aggregates) {
    out << report.dataset << ',' << a.method << ',' << a.metric << ',' << format_double(a.mean)
        << ',' << format_double(a.std) << '\n';
  }
}

}  // namespace hpra
