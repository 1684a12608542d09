#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "dynleiden/quality.hpp"
#include "support/oracles.hpp"

using namespace dynleiden;

TEST_CASE("modularity of the barbell") {
  const Graph g = oracle::barbell();
  CHECK(modularity(g, std::vector<VertexId>{0, 0, 0, 3, 3, 3}) == doctest::Approx(0.357142857).epsilon(1e-9));
  // Each triangle contributes 6/14 - (7/14)^2.
  CHECK(modularity(g, std::vector<VertexId>{0, 0, 0, 3, 3, 3}) == doctest::Approx(6.0 / 7.0 - 0.5).epsilon(1e-12));
  CHECK(modularity(g, std::vector<VertexId>{0, 1, 2, 3, 4, 5}) == doctest::Approx(-34.0 / 196.0).epsilon(1e-12));
  CHECK(modularity(g, std::vector<VertexId>(6, 4)) == doctest::Approx(0.0));
}

TEST_CASE("modularity of two disjoint triangles") {
  std::vector<WeightedEdge> e{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}};
  const Graph g = build_graph(e, 6);
  CHECK(modularity(g, std::vector<VertexId>{0, 0, 0, 3, 3, 3}) == doctest::Approx(0.5));
}

TEST_CASE("modularity of an edgeless graph is zero") {
  CHECK(modularity(build_graph(std::vector<WeightedEdge>{}, 3), std::vector<VertexId>{0, 1, 2}) == 0.0);
}

TEST_CASE("modularity agrees with edge-fraction counting") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const bool unit = trial % 2 == 0;
    const Graph g = oracle::random_graph(30, 60 + trial % 40, 500 + trial, unit ? 1 : 4, unit ? 0.0 : 0.2);
    const auto c = oracle::random_membership(30, 1 + trial % 7, rng);
    const double q = modularity(g, c);
    CHECK(q == doctest::Approx(oracle::modularity(g, c)).epsilon(1e-12));
    CHECK(q >= -0.5);
    CHECK(q <= 1.0);
  }
}

TEST_CASE("modularity is invariant under relabeling") {
  std::mt19937_64 rng(3);
  const Graph g = oracle::random_graph(25, 70, 9);
  const auto c = oracle::random_membership(25, 5, rng);
  std::vector<VertexId> perm(25);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<VertexId> relabeled(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) relabeled[i] = perm[c[i]];
  CHECK(modularity(g, relabeled) == doctest::Approx(modularity(g, c)).epsilon(1e-12));
}

TEST_CASE("delta modularity examples") {
  // Vertex 2 of the barbell moving from its triangle to the other one.
  CHECK(delta_modularity(1, 2, 3, 7, 7, 7) == doctest::Approx(-23.0 / 98.0).epsilon(1e-12));
  const Graph g = oracle::barbell();
  const double before = modularity(g, std::vector<VertexId>{0, 0, 0, 3, 3, 3});
  const double after = modularity(g, std::vector<VertexId>{0, 0, 3, 3, 3, 3});
  CHECK(after == doctest::Approx(0.122449).epsilon(1e-6));
  CHECK(delta_modularity(1, 2, 3, 7, 7, 7) == doctest::Approx(after - before).epsilon(1e-12));
  // Staying put.
  CHECK(delta_modularity(2, 2, 3, 4, 7, 7) == doctest::Approx(0.0));
}

TEST_CASE("delta modularity antisymmetry") {
  std::mt19937_64 rng(5);
  const Graph g = oracle::random_graph(20, 50, 21, 3);
  const double m = g.total_edge_weight();
  const auto k = g.weighted_degrees();
  for (int trial = 0; trial < 100; ++trial) {
    auto c = oracle::random_membership(20, 4, rng);
    const VertexId i = static_cast<VertexId>(rng() % 20);
    const VertexId d = c[i];
    const VertexId target = c[rng() % 20];
    if (target == d) continue;
    auto weight_to = [&](const std::vector<VertexId>& memb, VertexId comm) {
      double w = 0.0;
      auto nbrs = g.neighbors(i);
      auto ws = g.weights(i);
      for (std::size_t e = 0; e < nbrs.size(); ++e)
        if (nbrs[e] != i && memb[nbrs[e]] == comm) w += ws[e];
      return w;
    };
    auto sig = oracle::sigma(c, k);
    const double forward =
        delta_modularity(weight_to(c, target), weight_to(c, d), k[i], sig[target], sig[d], m);
    c[i] = target;
    sig = oracle::sigma(c, k);
    const double backward =
        delta_modularity(weight_to(c, d), weight_to(c, target), k[i], sig[d], sig[target], m);
    CHECK(forward == doctest::Approx(-backward).epsilon(1e-9));
  }
}

TEST_CASE("connectivity audit") {
  const Graph g = oracle::barbell();
  CHECK(audit_connectivity(g, std::vector<VertexId>{0, 0, 0, 3, 3, 3}).empty());

  const Graph isolated = build_graph(std::vector<WeightedEdge>{}, 2);
  CHECK(audit_connectivity(isolated, std::vector<VertexId>{0, 0}) == std::vector<VertexId>{0});

  std::vector<WeightedEdge> e{{0, 1, 1}};
  const Graph partial = build_graph(e, 3);
  CHECK(audit_connectivity(partial, std::vector<VertexId>{1, 1, 1}) == std::vector<VertexId>{1});

  // Agrees with an independent BFS on random instances.
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph r = oracle::random_graph(20, 15 + trial % 20, 800 + trial);
    const auto c = oracle::random_membership(20, 1 + trial % 5, rng);
    CHECK(audit_connectivity(r, c).empty() == oracle::communities_connected(r, c));
  }
}

TEST_CASE("partition statistics") {
  const Graph g = oracle::barbell();
  const auto stats = partition_stats(g, std::vector<VertexId>{0, 0, 0, 3, 3, 3});
  CHECK(stats.community_count == 2);
  REQUIRE(stats.size_histogram.size() > 3);
  CHECK(stats.size_histogram[3] == 2);
  CHECK(stats.disconnected_count == 0);
  CHECK(stats.modularity == doctest::Approx(modularity(g, std::vector<VertexId>{0, 0, 0, 3, 3, 3})));

  const auto singles = partition_stats(g, std::vector<VertexId>{0, 1, 2, 3, 4, 5});
  CHECK(singles.community_count == 6);
  std::size_t members = 0;
  for (std::size_t s = 0; s < singles.size_histogram.size(); ++s) members += s * singles.size_histogram[s];
  CHECK(members == 6);
}
