// hpra: hyperedge prediction command line.
//
// Exit status: 0 success, 1 runtime or data error, 2 usage error.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hpra/evaluation.hpp"
#include "hpra/hyperedge_io.hpp"
#include "hpra/hypergraph.hpp"
#include "hpra/parallel.hpp"
#include "hpra/predictor.hpp"
#include "hpra/similarity.hpp"
#include "hpra/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string input;
  std::string output;
  std::string format;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool largest_component = false;
};

struct ScoreFlags {
  std::string kind = "hra";
  std::optional<double> alpha;
  double beta = 0.01;
  int max_len = 5;
};

// Writes to the named file, or standard output when the path is empty or "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) {
        throw std::runtime_error("cannot write " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string resolve_format(const std::string& flag, const std::string& path,
                           const std::string& fallback) {
  if (!flag.empty()) {
    return flag;
  }
  const std::string ext = fs::path(path).extension().string();
  if (ext == ".json") {
    return "json";
  }
  if (ext == ".csv") {
    return "csv";
  }
  return fallback;
}

void add_common(CLI::App* cmd, Common& c, bool needs_input = true) {
  if (needs_input) {
    cmd->add_option("-i,--input", c.input, "Hyperedge-list file")->required();
    cmd->add_flag("--largest-component", c.largest_component,
                  "Restrict to the largest connected component");
  }
  cmd->add_option("-o,--output", c.output, "Output path (standard output when omitted)");
  cmd->add_option("--format", c.format, "Output format, overrides the extension")
      ->check(CLI::IsMember({"json", "csv", "txt"}));
  cmd->add_option("--seed", c.seed, "Master random seed");
  cmd->add_option("--threads", c.threads, "Worker threads (default: HPRA_THREADS or all cores)");
}

void add_score_flags(CLI::App* cmd, ScoreFlags& s) {
  cmd->add_option("--kind", s.kind, "Similarity index")
      ->check(CLI::IsMember({"hra", "cn", "katz"}));
  cmd->add_option("--alpha", s.alpha, "HRA weighting alpha in [0,1] (default: plain sum)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--beta", s.beta, "Katz damping factor")->check(CLI::PositiveNumber);
  cmd->add_option("--max-len", s.max_len, "Katz walk-length cutoff")->check(CLI::Range(2, 64));
}

hpra::Hypergraph load_input(const Common& c) {
  hpra::Hypergraph g = hpra::load(c.input, c.largest_component);
  if (g.dropped_singletons() > 0) {
    std::cerr << "warning: dropped " << g.dropped_singletons()
              << " hyperedge(s) with fewer than two distinct nodes\n";
  }
  return g;
}

hpra::ScoreMatrix build_scores(const hpra::Hypergraph& g, const ScoreFlags& s, unsigned threads) {
  hpra::ScoreParams params;
  params.alpha = s.alpha;
  params.beta = s.beta;
  params.max_len = s.max_len;
  return hpra::score_matrix(g, hpra::parse_score_kind(s.kind), params, threads);
}

// Resolves labels against g; unknown labels get ids past the node range,
// where every score is zero.
hpra::HyperedgeSet resolve(const hpra::Hypergraph& g, const std::vector<hpra::EdgeRecord>& records,
                           std::vector<std::string>& labels) {
  labels = g.labels();
  std::map<std::string, hpra::NodeId> extra;
  hpra::HyperedgeSet out;
  for (const auto& rec : records) {
    std::vector<hpra::NodeId> ids;
    for (const auto& label : rec.labels) {
      if (auto id = g.find(label)) {
        ids.push_back(*id);
      } else {
        auto [it, inserted] = extra.try_emplace(label, static_cast<hpra::NodeId>(labels.size()));
        if (inserted) {
          labels.push_back(label);
        }
        ids.push_back(it->second);
      }
    }
    out.emplace_back(std::move(ids), rec.weight.value_or(1.0));
  }
  return out;
}

// Flat key=value config: each key becomes --key=value unless the command
// line already sets that flag.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (config_path.empty()) {
    return out;
  }
  std::ifstream in(config_path);
  if (!in) {
    throw UsageError("cannot read config file " + config_path);
  }
  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(out.begin(), out.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(config_path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (given(key)) {
      continue;
    }
    if (value == "true") {
      extra.push_back("--" + key);
    } else if (value != "false") {
      extra.push_back("--" + key + "=" + value);
    }
  }
  // Options follow the subcommand name.
  out.insert(out.empty() ? out.end() : out.begin() + 1, extra.begin(), extra.end());
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

struct EvalFlags {
  std::string methods = "hpra,cn,katz";
  std::string mode = "both";
  std::size_t folds = 5;
  double distractor_ratio = 10.0;
  double smoothing = 1.0;
  std::size_t auc_comparisons = 0;
  std::string dataset;
  std::string folds_csv;
  std::string aggregate_csv;
  std::int64_t train_begin = 0;
  std::int64_t train_end = 0;
  std::int64_t test_time = 0;
};

void add_eval_flags(CLI::App* cmd, EvalFlags& e) {
  cmd->add_option("--methods", e.methods,
                  "Comma-separated: hpra, cn, katz, random, hpra-alpha=<a>, katz-beta=<b>");
  cmd->add_option("--mode", e.mode, "Evaluation protocol")
      ->check(CLI::IsMember({"generative", "chs", "both"}));
  cmd->add_option("--distractor-ratio", e.distractor_ratio, "Distractors per missing hyperedge")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--smoothing", e.smoothing, "Additive smoothing of the cardinality distribution")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--auc-comparisons", e.auc_comparisons,
                  "Sampled AUC comparisons (0 = exhaustive)");
  cmd->add_option("--dataset", e.dataset, "Dataset name used in reports");
  cmd->add_option("--folds-csv", e.folds_csv, "Also write per-fold CSV here");
  cmd->add_option("--aggregate-csv", e.aggregate_csv, "Also write aggregate CSV here");
}

void emit_report(const hpra::EvalReport& report, const Common& c, const EvalFlags& e) {
  for (const auto& f : report.folds) {
    if (f.skipped) {
      std::cerr << "warning: fold " << f.fold << " (" << f.method << ") skipped: " << f.note
                << '\n';
    }
  }
  for (const auto& a : report.aggregates) {
    std::cerr << a.method << ' ' << a.metric << ' ' << hpra::format_double(a.mean) << " +- "
              << hpra::format_double(a.std) << '\n';
  }
  const std::string format = resolve_format(c.format, c.output, "json");
  if (format == "csv") {
    Sink sink(c.output);
    hpra::write_aggregate_csv(sink.stream(), report);
  } else {
    Sink sink(c.output);
    hpra::write_report_json(sink.stream(), report);
  }
  if (!e.folds_csv.empty()) {
    Sink sink(e.folds_csv);
    hpra::write_fold_csv(sink.stream(), report);
  }
  if (!e.aggregate_csv.empty()) {
    Sink sink(e.aggregate_csv);
    hpra::write_aggregate_csv(sink.stream(), report);
  }
}

hpra::EvalReport evaluate(const hpra::Hypergraph& g, const hpra::SplitPlan& plan,
                          const Common& c, const EvalFlags& e) {
  std::vector<hpra::MethodConfig> methods;
  for (const auto& name : split_list(e.methods)) {
    try {
      methods.push_back(hpra::method_preset(name));
    } catch (const std::invalid_argument& err) {
      throw UsageError(err.what());
    }
  }
  if (methods.empty()) {
    throw UsageError("--methods is empty");
  }
  hpra::EvalOptions options;
  options.dataset = e.dataset.empty() ? fs::path(c.input).stem().string() : e.dataset;
  options.generative = e.mode != "chs";
  options.chs = e.mode != "generative";
  options.distractor_ratio = e.distractor_ratio;
  options.smoothing = e.smoothing;
  if (e.auc_comparisons > 0) {
    options.auc_comparisons = e.auc_comparisons;
  }
  options.seed = c.seed;
  options.threads = hpra::resolve_threads(c.threads);
  return hpra::run_experiment(g, plan, methods, options);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperedge prediction with hypergraph resource allocation", "hpra"};
  app.require_subcommand(1);

  Common common;
  ScoreFlags score_flags;
  EvalFlags eval_flags;

  auto* load_info = app.add_subcommand("load-info", "Print node/hyperedge/degree summary");
  add_common(load_info, common);

  auto* scores = app.add_subcommand("scores", "Write the pairwise score matrix as CSV");
  add_common(scores, common);
  add_score_flags(scores, score_flags);

  std::size_t count = 0;
  double smoothing = 1.0;
  std::size_t min_card = 0;
  std::size_t max_card = 0;
  auto* predict = app.add_subcommand("predict", "Generate new hyperedges");
  add_common(predict, common);
  add_score_flags(predict, score_flags);
  predict->add_option("-n,--count", count, "Number of hyperedges to predict")
      ->required()
      ->check(CLI::PositiveNumber);
  predict->add_option("--smoothing", smoothing, "Additive smoothing of the cardinality distribution")
      ->check(CLI::NonNegativeNumber);
  predict->add_option("--min-card", min_card, "Smallest cardinality in the support");
  predict->add_option("--max-card", max_card, "Largest cardinality in the support");

  std::string candidates_path;
  std::string missing_path;
  std::string metrics_path;
  std::size_t top = 0;
  auto* rank = app.add_subcommand("rank", "Rank candidate hyperedges by mean pairwise score");
  add_common(rank, common);
  add_score_flags(rank, score_flags);
  rank->add_option("--candidates", candidates_path, "Candidate hyperedge-list file")->required();
  rank->add_option("--top", top, "Emit only the top k (default: all)");
  rank->add_option("--missing", missing_path,
                   "Known missing hyperedges; the rest of the candidates are distractors");
  rank->add_option("--metrics", metrics_path, "Write AUC and precision CSV here (needs --missing)");

  auto* eval_cv = app.add_subcommand("eval-cv", "K-fold cross-validated evaluation");
  add_common(eval_cv, common);
  add_eval_flags(eval_cv, eval_flags);
  eval_cv->add_option("-k,--folds", eval_flags.folds, "Number of folds")->check(CLI::Range(2, 1000000));

  auto* eval_temporal = app.add_subcommand("eval-temporal", "Train on earlier timestamps, test on one");
  add_common(eval_temporal, common);
  add_eval_flags(eval_temporal, eval_flags);
  eval_temporal->add_option("--train-begin", eval_flags.train_begin, "First training timestamp")
      ->required();
  eval_temporal->add_option("--train-end", eval_flags.train_end, "Last training timestamp")
      ->required();
  eval_temporal->add_option("--test-time", eval_flags.test_time, "Timestamp to predict")->required();

  hpra::SyntheticSpec spec;
  auto* gen = app.add_subcommand("gen-synthetic", "Write a planted-community hypergraph");
  add_common(gen, common, false);
  gen->add_option("--nodes", spec.num_nodes, "Number of nodes")->check(CLI::PositiveNumber);
  gen->add_option("--communities", spec.num_communities, "Number of communities")
      ->check(CLI::PositiveNumber);
  gen->add_option("--edges", spec.num_edges, "Number of hyperedges")->check(CLI::PositiveNumber);
  gen->add_option("--min-card", spec.min_cardinality, "Smallest hyperedge size");
  gen->add_option("--max-card", spec.max_cardinality, "Largest hyperedge size");
  gen->add_option("--noise", spec.noise, "Probability of a community-agnostic hyperedge")
      ->check(CLI::Range(0.0, 1.0));

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const unsigned threads = hpra::resolve_threads(common.threads);
    if (*load_info) {
      const auto g = load_input(common);
      const auto s = hpra::summarize(g);
      Sink sink(common.output);
      if (resolve_format(common.format, common.output, "csv") == "json") {
        sink.stream() << "{\"nodes\": " << s.num_nodes << ", \"hyperedges\": " << s.num_edges
                      << ", \"avg_hyperedge_degree\": " << hpra::format_double(s.avg_edge_degree)
                      << ", \"avg_node_degree\": " << hpra::format_double(s.avg_node_degree)
                      << "}\n";
      } else {
        sink.stream() << "nodes,hyperedges,avg_hyperedge_degree,avg_node_degree\n"
                      << s.num_nodes << ',' << s.num_edges << ','
                      << hpra::format_double(s.avg_edge_degree) << ','
                      << hpra::format_double(s.avg_node_degree) << '\n';
      }
    } else if (*scores) {
      const auto g = load_input(common);
      const auto matrix = build_scores(g, score_flags, threads);
      Sink sink(common.output);
      hpra::write_score_csv(sink.stream(), g, matrix);
    } else if (*predict) {
      const auto g = load_input(common);
      const auto matrix = build_scores(g, score_flags, threads);
      std::optional<hpra::CardinalitySupport> support;
      if (min_card > 0 || max_card > 0) {
        std::size_t observed = 2;
        for (const auto& e : g.edges()) {
          observed = std::max(observed, e.cardinality());
        }
        support = hpra::CardinalitySupport{min_card > 0 ? min_card : 2,
                                           max_card > 0 ? max_card : observed + 1};
      }
      const auto hdd = hpra::fit_degree_distribution(g, smoothing, support);
      hpra::PredictionConfig config;
      config.num_predictions = count;
      config.rng_seed = hpra::Rng::derive(common.seed, "prediction").next();
      config.smoothing = smoothing;
      config.support = support;
      const auto predicted = hpra::predict_set(g, matrix, hdd, config, threads);
      Sink sink(common.output);
      hpra::write_hyperedges(sink.stream(), g.labels(), predicted);
    } else if (*rank) {
      const auto g = load_input(common);
      const auto matrix = build_scores(g, score_flags, threads);
      std::vector<std::string> labels;
      const auto candidates = resolve(g, hpra::read_hyperedge_file(candidates_path), labels);
      const std::size_t k = top == 0 ? candidates.size() : std::min(top, candidates.size());
      const auto ranking = hpra::rank_candidates(matrix, candidates, k, threads);
      {
        Sink sink(common.output);
        auto& out = sink.stream();
        out << "rank,score,input_index,hyperedge\n";
        for (std::size_t i = 0; i < k; ++i) {
          const auto& c = ranking.ranked[i];
          out << i + 1 << ',' << hpra::format_double(c.score) << ',' << c.input_index << ',';
          for (std::size_t j = 0; j < c.hyperedge.nodes.size(); ++j) {
            out << (j ? " " : "") << labels[c.hyperedge.nodes[j]];
          }
          out << '\n';
        }
      }
      if (!missing_path.empty()) {
        // Match by label sets so candidates and missing files resolve independently.
        auto names_of = [](const hpra::Hyperedge& e, const std::vector<std::string>& names) {
          std::vector<std::string> out;
          for (auto v : e.nodes) {
            out.push_back(names[v]);
          }
          std::sort(out.begin(), out.end());
          return out;
        };
        std::vector<std::string> missing_labels;
        const auto missing = resolve(g, hpra::read_hyperedge_file(missing_path), missing_labels);
        std::set<std::vector<std::string>> missing_names;
        for (const auto& e : missing) {
          missing_names.insert(names_of(e, missing_labels));
        }
        std::vector<double> by_input(candidates.size());
        for (const auto& c : ranking.ranked) {
          by_input[c.input_index] = c.score;
        }
        std::vector<double> positive;
        std::vector<double> negative;
        hpra::HyperedgeSet truth;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
          if (missing_names.contains(names_of(candidates[i], labels))) {
            positive.push_back(by_input[i]);
            truth.push_back(candidates[i]);
          } else {
            negative.push_back(by_input[i]);
          }
        }
        if (positive.empty() || negative.empty()) {
          throw std::runtime_error("rank: candidates must contain both missing and other hyperedges");
        }
        const double auc_value = hpra::auc(positive, negative);
        const double precision = hpra::precision_at_l(ranking.ranked, truth);
        Sink sink(metrics_path);
        sink.stream() << "metric,value\n"
                      << "auc," << hpra::format_double(auc_value) << '\n'
                      << "precision," << hpra::format_double(precision) << '\n';
      }
    } else if (*eval_cv) {
      const auto g = load_input(common);
      const auto plan = hpra::make_kfold(g, eval_flags.folds, common.seed);
      emit_report(evaluate(g, plan, common, eval_flags), common, eval_flags);
    } else if (*eval_temporal) {
      const auto g = load_input(common);
      const auto plan = hpra::make_temporal(g, eval_flags.train_begin, eval_flags.train_end,
                                            eval_flags.test_time);
      emit_report(evaluate(g, plan, common, eval_flags), common, eval_flags);
    } else if (*gen) {
      const auto records = hpra::generate_synthetic(spec, common.seed);
      const auto g = hpra::Hypergraph::build(records);
      Sink sink(common.output);
      hpra::write_hyperedge_list(sink.stream(), g);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hpra::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
