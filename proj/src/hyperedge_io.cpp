#include "hpra/hyperedge_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <system_error>

namespace hpra {
namespace {

bool starts_with(const std::string& token, const char* prefix) {
  return token.rfind(prefix, 0) == 0;
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && first != last;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::vector<EdgeRecord> parse_hyperedge_list(std::istream& in) {
  std::vector<EdgeRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string tok; tokens >> tok;) {
      parts.push_back(std::move(tok));
    }
    if (parts.empty() || parts.front()[0] == '#') {
      continue;
    }
    EdgeRecord rec;
    std::size_t begin = 0;
    std::size_t end = parts.size();
    if (starts_with(parts.front(), "t=")) {
      std::int64_t t = 0;
      if (!parse_number(parts.front().substr(2), t)) {
        throw ParseError("line " + std::to_string(line_no) + ": bad timestamp '" +
                             parts.front() + "'",
                         line_no);
      }
      rec.timestamp = t;
      ++begin;
    }
    if (end > begin && starts_with(parts.back(), "w=")) {
      double w = 0.0;
      if (!parse_number(parts.back().substr(2), w)) {
        throw ParseError("line " + std::to_string(line_no) + ": bad weight '" +
                             parts.back() + "'",
                         line_no);
      }
      if (!(w > 0.0)) {
        throw ParseError("line " + std::to_string(line_no) + ": weight must be positive",
                         line_no);
      }
      rec.weight = w;
      --end;
    }
    if (begin >= end) {
      throw ParseError("line " + std::to_string(line_no) + ": hyperedge has no nodes",
                       line_no);
    }
    rec.labels.assign(parts.begin() + static_cast<std::ptrdiff_t>(begin),
                      parts.begin() + static_cast<std::ptrdiff_t>(end));
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<EdgeRecord> read_hyperedge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  auto records = parse_hyperedge_list(in);
  if (records.empty()) {
    throw ParseError(path.string() + ": no hyperedges", 0);
  }
  return records;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_hyperedge_list(std::ostream& out, const Hypergraph& g) {
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (auto t = g.timestamp(e)) {
      out << "t=" << *t << ' ';
    }
    const auto& edge = g.edge(e);
    for (std::size_t i = 0; i < edge.nodes.size(); ++i) {
      out << (i ? " " : "") << g.label(edge.nodes[i]);
    }
    if (edge.weight != 1.0) {
      out << " w=" << format_double(edge.weight);
    }
    out << '\n';
  }
}

void write_hyperedges(std::ostream& out, const std::vector<std::string>& labels,
                      const HyperedgeSet& edges) {
  for (const auto& edge : edges) {
    for (std::size_t i = 0; i < edge.nodes.size(); ++i) {
      out << (i ? " " : "") << labels.at(edge.nodes[i]);
    }
    if (edge.weight != 1.0) {
      out << " w=" << format_double(edge.weight);
    }
    out << '\n';
  }
}

Hypergraph largest_component(const Hypergraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : g.edges()) {
    for (std::size_t i = 1; i < e.nodes.size(); ++i) {
      auto a = find_root(parent, e.nodes[0]);
      auto b = find_root(parent, e.nodes[i]);
      if (a != b) {
        parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::size_t> size(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    ++size[find_root(parent, v)];
  }
  std::size_t best = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (size[v] > size[best]) {
      best = v;
    }
  }

  std::vector<NodeId> remap(n, static_cast<NodeId>(-1));
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < n; ++v) {
    if (find_root(parent, v) == best) {
      remap[v] = static_cast<NodeId>(labels.size());
      labels.push_back(g.label(static_cast<NodeId>(v)));
    }
  }
  std::vector<Hyperedge> edges;
  std::vector<std::optional<std::int64_t>> stamps;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edge(e);
    if (find_root(parent, edge.nodes.front()) != best) {
      continue;
    }
    std::vector<NodeId> members;
    for (NodeId v : edge.nodes) {
      members.push_back(remap[v]);
    }
    edges.emplace_back(std::move(members), edge.weight);
    stamps.push_back(g.timestamp(e));
  }
  return Hypergraph::from_edges(std::move(labels), std::move(edges), std::move(stamps));
}

Hypergraph load(const std::filesystem::path& path, bool largest_component_only) {
  Hypergraph g = Hypergraph::build(read_hyperedge_file(path));
  return largest_component_only ? largest_component(g) : g;
}

Summary summarize(const Hypergraph& g) {
  Summary s;
  s.num_nodes = g.num_nodes();
  s.num_edges = g.num_edges();
  std::size_t incidences = 0;
  for (const auto& e : g.edges()) {
    incidences += e.nodes.size();
  }
  double degree_total = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    degree_total += g.node_degree(v);
  }
  if (s.num_edges > 0) {
    s.avg_edge_degree = static_cast<double>(incidences) / static_cast<double>(s.num_edges);
  }
  if (s.num_nodes > 0) {
    s.avg_node_degree = degree_total / static_cast<double>(s.num_nodes);
  }
  return s;
}

}  // namespace hpra
