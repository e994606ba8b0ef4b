#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hpra/evaluation.hpp"
#include "hpra/hyperedge_io.hpp"
#include "hpra/synthetic.hpp"

using namespace hpra;

namespace {

Hypergraph parse(const std::string& text) {
  std::istringstream in(text);
  return Hypergraph::build(parse_hyperedge_list(in));
}

Hypergraph fixture(std::uint64_t seed = 7) {
  SyntheticSpec spec;
  spec.num_nodes = 80;
  spec.num_communities = 2;
  spec.num_edges = 100;
  return Hypergraph::build(generate_synthetic(spec, seed));
}

std::string report_json(const EvalReport& r) {
  std::ostringstream out;
  write_report_json(out, r);
  return out.str();
}

}  // namespace

TEST_CASE("k-fold partitions the hyperedges") {
  auto g = parse("a b\nb c\nc d\nd e\ne f\nf g\ng h\nh i\ni j\nj k\n");
  auto plan = make_kfold(g, 5, 3);
  REQUIRE(plan.folds.size() == 5);
  std::vector<int> hits(g.num_edges(), 0);
  for (const auto& f : plan.folds) {
    CHECK(f.missing.size() == 2);
    CHECK(f.train.size() == 8);
    for (EdgeId e : f.missing) hits[e]++;
    std::set<EdgeId> both(f.train.begin(), f.train.end());
    for (EdgeId e : f.missing) CHECK_FALSE(both.contains(e));
  }
  for (int h : hits) CHECK(h == 1);
  CHECK(make_kfold(g, 5, 3).folds[2].missing == plan.folds[2].missing);
  CHECK_THROWS_AS(make_kfold(g, 11, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_kfold(g, 1, 0), std::invalid_argument);
}

TEST_CASE("uneven k-fold sizes differ by at most one") {
  auto g = fixture();
  auto plan = make_kfold(g, 7, 1);
  std::size_t lo = g.num_edges(), hi = 0, total = 0;
  for (const auto& f : plan.folds) {
    lo = std::min(lo, f.missing.size());
    hi = std::max(hi, f.missing.size());
    total += f.missing.size();
  }
  CHECK(hi - lo <= 1);
  CHECK(total == g.num_edges());
}

TEST_CASE("prune_missing on a constructed six-node instance") {
  // Node space a..f. Training: {a,b}, {b,c}, {e,e'} is absent; d and f have
  // no training neighbors.
  auto full = parse("a b\nb c\nc d\na c\nd f\ne a\n");
  std::vector<EdgeId> train_ids{0, 1, 5};
  auto train = full.subgraph(train_ids);
  const auto id = [&](const char* l) { return *full.find(l); };
  std::vector<Hyperedge> missing{Hyperedge({id("c"), id("d")}), Hyperedge({id("a"), id("c")}),
                                 Hyperedge({id("d"), id("f")}), Hyperedge({id("e"), id("b")}),
                                 Hyperedge({id("a"), id("b"), id("c")})};
  auto kept = prune_missing(train, missing);
  // Hand enumeration: nodes with a training neighbor are a, b, c, e.
  std::vector<Hyperedge> expected{missing[1], missing[3], missing[4]};
  CHECK(kept == expected);
}

TEST_CASE("temporal split") {
  auto g = parse("t=2000 a b\nt=2001 b c\nt=2002 c d\nt=2003 a d\nt=2003 b d\n");
  auto plan = make_temporal(g, 2000, 2002, 2003);
  REQUIRE(plan.folds.size() == 1);
  CHECK(plan.folds[0].train == std::vector<EdgeId>{0, 1, 2});
  CHECK(plan.folds[0].missing == std::vector<EdgeId>{3, 4});
  CHECK_THROWS_AS(make_temporal(g, 2000, 2002, 1990), std::invalid_argument);
  CHECK_THROWS_AS(make_temporal(parse("a b\n"), 0, 1, 2), std::invalid_argument);
}

TEST_CASE("method presets") {
  CHECK(method_preset("hpra").kind == ScoreKind::kHra);
  CHECK_FALSE(method_preset("random").kind.has_value());
  CHECK(method_preset("katz").beta_grid == std::vector<double>{0.005, 0.01, 0.05, 0.1, 0.5});
  CHECK(method_preset("hpra-alpha=0.25").params.alpha == 0.25);
  CHECK_THROWS_AS(method_preset("hpra-alpha=x"), std::invalid_argument);
  CHECK_THROWS_AS(method_preset("cmm"), std::invalid_argument);
}

TEST_CASE("mean and sample std") {
  std::vector<double> v{1, 2, 3, 4};
  auto [m, s] = mean_std(v);
  CHECK(m == 2.5);
  CHECK(s == doctest::Approx(std::sqrt(5.0 / 3.0)));
}

TEST_CASE("run_experiment produces a complete reproducible report") {
  auto g = fixture();
  auto plan = make_kfold(g, 4, 11);
  std::vector<MethodConfig> methods{method_preset("hpra"), method_preset("cn"),
                                    method_preset("katz"), method_preset("random")};
  EvalOptions options;
  options.dataset = "synthetic";
  options.seed = 11;
  auto report = run_experiment(g, plan, methods, options);
  CHECK(report.folds.size() == 16);
  for (const auto& f : report.folds) {
    CHECK_FALSE(f.skipped);
    CHECK(f.metrics.count("avg_f1") == 1);
    CHECK(f.metrics.count("auc") == 1);
    CHECK(f.metrics.count("precision") == 1);
    CHECK(f.missing_after <= f.missing_before);
    if (f.method == "katz") CHECK(f.selected_beta.has_value());
  }
  for (const auto& a : report.aggregates) {
    auto vals = report.values(a.method, a.metric);
    auto [m, s] = mean_std(vals);
    CHECK(a.mean == m);
    CHECK(a.std == s);
  }
  CHECK(report.ttests.size() == 3 * 6);
  options.threads = 3;
  CHECK(report_json(report) == report_json(run_experiment(g, plan, methods, options)));

  std::ostringstream folds, agg;
  write_fold_csv(folds, report);
  write_aggregate_csv(agg, report);
  CHECK(folds.str().rfind("dataset,method,metric,fold,value\nsynthetic,hpra,", 0) == 0);
  CHECK(agg.str().rfind("dataset,method,metric,mean,std\n", 0) == 0);
  auto parsed = nlohmann::json::parse(report_json(report));
  CHECK(parsed["folds"].size() == 16);
  CHECK(parsed["split"]["mode"] == "kfold");
}

TEST_CASE("folds whose missing set is fully pruned are skipped") {
  // Fold structure: with K=2 on two disjoint edges, each missing edge has
  // nodes absent from training.
  auto g = parse("a b\nc d\n");
  auto plan = make_kfold(g, 2, 0);
  std::vector<MethodConfig> methods{method_preset("hpra")};
  EvalOptions options;
  CHECK_THROWS_AS(run_experiment(g, plan, methods, options), std::runtime_error);
}

TEST_CASE("temporal experiment runs end to end") {
  std::ostringstream text;
  SyntheticSpec spec;
  spec.num_nodes = 60;
  spec.num_edges = 120;
  auto records = generate_synthetic(spec, 5);
  for (std::size_t i = 0; i < records.size(); ++i) records[i].timestamp = 2000 + static_cast<int>(i / 30);
  auto g = Hypergraph::build(records);
  auto plan = make_temporal(g, 2000, 2002, 2003);
  std::vector<MethodConfig> methods{method_preset("hpra"), method_preset("random")};
  EvalOptions options;
  auto report = run_experiment(g, plan, methods, options);
  CHECK(report.folds.size() == 2);
  CHECK(report.ttests.empty());  // one fold
  CHECK(report.aggregate("hpra", "auc") != nullptr);
}
