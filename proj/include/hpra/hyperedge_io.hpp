#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpra/hypergraph.hpp"

namespace hpra {

/// Malformed hyperedge-list input. line() is 1-based; 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Hyperedge-list text format, one hyperedge per line:
//
//   [t=<integer>] label label ... [w=<float>]
//
// Blank lines and lines starting with '#' are skipped.
std::vector<EdgeRecord> parse_hyperedge_list(std::istream& in);
std::vector<EdgeRecord> read_hyperedge_file(const std::filesystem::path& path);

/// Writes every hyperedge of g. Weights equal to 1 are omitted; other
/// weights use the shortest round-trip representation.
void write_hyperedge_list(std::ostream& out, const Hypergraph& g);
/// Writes a free-standing set over g's labels (e.g. predictions).
void write_hyperedges(std::ostream& out, const std::vector<std::string>& labels,
                      const HyperedgeSet& edges);

std::string format_double(double value);

/// Restriction to the connected component (nodes joined by shared
/// hyperedges) with the most nodes. Ties go to the component containing the
/// smallest node id. Node order is preserved.
Hypergraph largest_component(const Hypergraph& g);

/// Reads, builds and optionally restricts to the largest component.
Hypergraph load(const std::filesystem::path& path, bool largest_component_only);

struct Summary {
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  double avg_edge_degree = 0.0;
  double avg_node_degree = 0.0;
};

Summary summarize(const Hypergraph& g);

}  // namespace hpra
