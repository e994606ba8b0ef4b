#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hpra/hyperedge_io.hpp"

using namespace hpra;

namespace {

Hypergraph parse(const std::string& text) {
  std::istringstream in(text);
  return Hypergraph::build(parse_hyperedge_list(in));
}

std::string serialize(const Hypergraph& g) {
  std::ostringstream out;
  write_hyperedge_list(out, g);
  return out.str();
}

}  // namespace

TEST_CASE("comments, blank lines, weights and timestamps") {
  auto g = parse("# header\n\na b c\n  # indented comment\nt=2001 b d w=0.25\r\n");
  CHECK(g.num_edges() == 2);
  CHECK(g.edge(0).weight == 1.0);
  CHECK(g.edge(1).weight == 0.25);
  CHECK_FALSE(g.timestamp(0).has_value());
  CHECK(g.timestamp(1) == 2001);
  CHECK(g.num_nodes() == 4);
}

TEST_CASE("malformed lines report their line number") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_hyperedge_list(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("a b\nc d w=abc\n") == 2);
  CHECK(line_of("a b\n\nt=x c d\n") == 3);
  CHECK(line_of("t=5 w=2\n") == 1);
  CHECK(line_of("a b w=-1\n") == 1);
  CHECK(line_of("a b w=0\n") == 1);
}

TEST_CASE("empty file is rejected") {
  const auto path = std::filesystem::temp_directory_path() / "hpra_empty_test.txt";
  { std::ofstream out(path); out << "# nothing here\n"; }
  CHECK_THROWS_AS(read_hyperedge_file(path), ParseError);
  std::filesystem::remove(path);
  CHECK_THROWS(read_hyperedge_file("/nonexistent/hpra/file.txt"));
}

TEST_CASE("largest component of disjoint pairs") {
  auto g = parse("a b\nc d\ne f\n");
  auto lc = largest_component(g);
  CHECK(lc.num_nodes() == 2);
  CHECK(lc.num_edges() == 1);
  CHECK(lc.label(0) == "a");

  auto h = parse("a b\nc d\nd e\nx y\n");
  auto lh = largest_component(h);
  CHECK(lh.num_nodes() == 3);
  CHECK(lh.num_edges() == 2);
  CHECK(lh.find("c").has_value());
}

TEST_CASE("serialize then build is idempotent") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::ostringstream text;
    const int m = 1 + static_cast<int>(gen() % 12);
    for (int i = 0; i < m; ++i) {
      if (gen() % 3 == 0) text << "t=" << static_cast<int>(gen() % 50) - 10 << ' ';
      const int size = 2 + static_cast<int>(gen() % 3);
      for (int j = 0; j < size; ++j) text << "node" << gen() % 9 << ' ';
      if (gen() % 2) text << "w=" << format_double(0.1 + static_cast<double>(gen() % 1000) / 7.0);
      text << '\n';
    }
    Hypergraph g1;
    try {
      g1 = parse(text.str());
    } catch (const std::invalid_argument&) {
      continue;  // every line collapsed to a singleton
    }
    const std::string once = serialize(g1);
    const Hypergraph g2 = parse(once);
    CHECK(serialize(g2) == once);
    REQUIRE(g2.num_edges() == g1.num_edges());
    for (EdgeId e = 0; e < g1.num_edges(); ++e) {
      CHECK(g2.edge(e).weight == g1.edge(e).weight);
      CHECK(g2.timestamp(e) == g1.timestamp(e));
    }
  }
}

TEST_CASE("summary columns") {
  auto g = parse("a b c\nb c\nc d e f\n");
  auto s = summarize(g);
  CHECK(s.num_nodes == 6);
  CHECK(s.num_edges == 3);
  CHECK(s.avg_edge_degree == doctest::Approx(9.0 / 3.0));
  CHECK(s.avg_node_degree == doctest::Approx(9.0 / 6.0));
}
