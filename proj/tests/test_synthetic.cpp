#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "hpra/hyperedge_io.hpp"
#include "hpra/synthetic.hpp"

using namespace hpra;

namespace {

bool pure(const SyntheticSpec& spec, const EdgeRecord& r) {
  std::set<std::size_t> cs;
  for (const auto& l : r.labels) cs.insert(community_of(spec, std::stoul(l.substr(1))));
  return cs.size() == 1;
}

double binom(double n, double k) { return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)); }

}  // namespace

TEST_CASE("community blocks") {
  SyntheticSpec spec;
  spec.num_nodes = 10;
  spec.num_communities = 3;
  spec.max_cardinality = 3;
  CHECK(community_of(spec, 0) == 0);
  CHECK(community_of(spec, 2) == 0);
  CHECK(community_of(spec, 3) == 1);
  CHECK(community_of(spec, 6) == 2);
  CHECK(community_of(spec, 9) == 2);
}

TEST_CASE("noise-free generation never spans communities") {
  SyntheticSpec spec;
  spec.noise = 0.0;
  for (const auto& r : generate_synthetic(spec, 3)) {
    CHECK(pure(spec, r));
    CHECK(r.labels.size() >= spec.min_cardinality);
    CHECK(r.labels.size() <= spec.max_cardinality);
  }
}

TEST_CASE("generation is deterministic per seed") {
  SyntheticSpec spec;
  auto text = [&](std::uint64_t seed) {
    std::ostringstream out;
    write_hyperedge_list(out, Hypergraph::build(generate_synthetic(spec, seed)));
    return out.str();
  };
  CHECK(text(1) == text(1));
  CHECK(text(1) != text(2));
}

TEST_CASE("community purity tracks the noise rate") {
  SyntheticSpec spec;
  spec.num_edges = 5000;
  spec.noise = 0.2;
  const auto records = generate_synthetic(spec, 8);
  double pure_count = 0;
  for (const auto& r : records) pure_count += pure(spec, r);
  // A noisy edge of size d is pure by chance with probability
  // C * C(n/C, d) / C(n, d); cardinalities are uniform over the range.
  const double widths = static_cast<double>(spec.max_cardinality - spec.min_cardinality + 1);
  double chance = 0;
  for (std::size_t d = spec.min_cardinality; d <= spec.max_cardinality; ++d) {
    chance += 4 * binom(50, d) / binom(200, d) / widths;
  }
  const double p = (1 - spec.noise) + spec.noise * chance;
  const double sigma = std::sqrt(p * (1 - p) / spec.num_edges);
  CHECK(std::abs(pure_count / spec.num_edges - p) <= 4 * sigma);
}

TEST_CASE("invalid specs are rejected") {
  SyntheticSpec spec;
  spec.max_cardinality = 60;
  CHECK_THROWS_AS(generate_synthetic(spec, 0), std::invalid_argument);
  spec = SyntheticSpec{};
  spec.noise = 1.5;
  CHECK_THROWS_AS(generate_synthetic(spec, 0), std::invalid_argument);
  spec = SyntheticSpec{};
  spec.min_cardinality = 1;
  CHECK_THROWS_AS(generate_synthetic(spec, 0), std::invalid_argument);
}
