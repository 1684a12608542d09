#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "dynleiden/batch_gen.hpp"
#include "support/oracles.hpp"

using namespace dynleiden;

namespace {

// Symmetric, no self-pairs, insertions absent from g, deletions present,
// and no unordered pair used twice.
void check_valid(const Graph& g, const BatchUpdate& b) {
  CHECK(is_symmetric(b));
  std::set<std::pair<VertexId, VertexId>> used;
  for (const auto& d : b.deletions) {
    CHECK(d.source != d.target);
    CHECK(g.has_edge(d.source, d.target));
    if (d.source < d.target) CHECK(used.insert({d.source, d.target}).second);
  }
  for (const auto& e : b.insertions) {
    CHECK(e.source != e.target);
    CHECK_FALSE(g.has_edge(e.source, e.target));
    CHECK(e.weight == 1.0f);
    if (e.source < e.target) CHECK(used.insert({e.source, e.target}).second);
  }
}

}  // namespace

TEST_CASE("zero fraction gives an empty batch") {
  BatchSpec spec;
  spec.fraction = 0.0;
  CHECK(generate_batch(oracle::barbell(), spec).empty());
}

TEST_CASE("batch size arithmetic") {
  const Graph g = oracle::random_graph(200, 1000, 1);
  REQUIRE(g.undirected_edge_count() == 1000);
  BatchSpec spec;
  spec.fraction = 0.01;
  spec.seed = 5;
  const BatchUpdate b = generate_batch(g, spec);
  CHECK(b.insertions.size() == 16);
  CHECK(b.deletions.size() == 4);
  check_valid(g, b);
}

TEST_CASE("generation is deterministic per seed") {
  const Graph g = oracle::random_graph(100, 400, 2);
  BatchSpec spec;
  spec.fraction = 0.05;
  spec.seed = 77;
  CHECK(generate_batch(g, spec) == generate_batch(g, spec));
  BatchSpec other = spec;
  other.seed = 78;
  CHECK_FALSE(generate_batch(g, spec) == generate_batch(g, other));
}

TEST_CASE("generated batches are valid and apply cleanly") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = oracle::random_graph(80, 300, 900 + seed, 3);
    BatchSpec spec;
    spec.fraction = 0.1;
    spec.insertion_share = 0.5 + 0.01 * static_cast<double>(seed);
    spec.seed = seed;
    const BatchUpdate b = generate_batch(g, spec);
    check_valid(g, b);
    const auto app = apply_batch_checked(g, b);
    CHECK(app.skipped_deletions == 0);
    CHECK(app.skipped_insertions == 0);
    CHECK(app.graph.vertex_count() == g.vertex_count());
    // Deletions carry the weight of the edge they remove.
    for (const auto& d : b.deletions) CHECK(d.weight == *g.edge_weight(d.source, d.target));
  }
}

TEST_CASE("impossible requests fail") {
  const Graph g = oracle::barbell();
  BatchSpec spec;
  spec.fraction = 1.0;
  spec.insertion_share = 0.0;
  CHECK_NOTHROW(generate_batch(g, spec));

  // K4 has no non-edges.
  std::vector<WeightedEdge> e;
  for (VertexId i = 0; i < 4; ++i)
    for (VertexId j = i + 1; j < 4; ++j) e.push_back({i, j, 1});
  const Graph complete = build_graph(e, 4);
  spec.insertion_share = 1.0;
  spec.fraction = 0.5;
  CHECK_THROWS_AS(generate_batch(complete, spec), std::invalid_argument);

  spec.fraction = 1.5;
  CHECK_THROWS_AS(generate_batch(g, spec), std::invalid_argument);
  spec.fraction = 0.5;
  spec.insertion_share = -0.1;
  CHECK_THROWS_AS(generate_batch(g, spec), std::invalid_argument);
}

TEST_CASE("single deletions are uniform over the barbell edges") {
  const Graph g = oracle::barbell();
  constexpr int kDraws = 10000;
  std::map<std::pair<VertexId, VertexId>, int> hits;
  BatchSpec spec;
  spec.fraction = 1.0 / 7.0;
  spec.insertion_share = 0.0;
  for (int s = 0; s < kDraws; ++s) {
    spec.seed = static_cast<std::uint64_t>(s);
    const BatchUpdate b = generate_batch(g, spec);
    REQUIRE(b.deletions.size() == 2);
    const auto& d = b.deletions.front();
    ++hits[{std::min(d.source, d.target), std::max(d.source, d.target)}];
  }
  CHECK(hits.size() == 7);
  const double p = 1.0 / 7.0;
  const double mean = kDraws * p;
  const double sigma = std::sqrt(kDraws * p * (1.0 - p));
  for (const auto& [edge, count] : hits) CHECK(std::abs(count - mean) <= 3.0 * sigma);
}
