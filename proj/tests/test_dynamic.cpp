#include <algorithm>
#include <random>

#include "doctest.h"
#include "dynleiden/dynamic.hpp"
#include "dynleiden/quality.hpp"
#include "support/oracles.hpp"

using namespace dynleiden;

namespace {

LeidenParams serial() {
  LeidenParams p;
  p.threads = 1;
  return p;
}

std::size_t count_set(const std::vector<std::uint8_t>& flags) {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), std::uint8_t{1}));
}

// Barbell clustered into its triangles, keyed 0 and 3.
DynamicContext barbell_context() {
  return DynamicContext::from_membership(oracle::barbell(), {0, 0, 0, 3, 3, 3});
}

using Variant = DynamicResult (*)(const Graph&, const BatchUpdate&, const DynamicContext&, const LeidenParams&);
const Variant kVariants[] = {naive_dynamic, delta_screening, dynamic_frontier};

}  // namespace

TEST_CASE("update_weights examples") {
  const Graph g = oracle::barbell();
  const DynamicContext ctx = barbell_context();
  SUBCASE("intra-community deletion") {
    BatchUpdate b;
    b.deletions = {{0, 1, 1}, {1, 0, 1}};
    const auto w = update_weights(b, ctx);
    CHECK(w.vertex_weight[0] == 1.0);
    CHECK(w.vertex_weight[1] == 1.0);
    CHECK(w.community_weight[0] == 5.0);
  }
  SUBCASE("empty batch") {
    const auto w = update_weights(BatchUpdate{}, ctx);
    CHECK(w.vertex_weight == ctx.vertex_weight);
    CHECK(w.community_weight == ctx.community_weight);
  }
  SUBCASE("cross-community insertion") {
    BatchUpdate b;
    b.insertions = {{2, 3, 1}, {3, 2, 1}};
    const auto w = update_weights(b, ctx);
    CHECK(w.vertex_weight[2] == 4.0);
    CHECK(w.vertex_weight[3] == 4.0);
    CHECK(w.community_weight[0] == 8.0);
    CHECK(w.community_weight[3] == 8.0);
  }
}

TEST_CASE("update_weights matches recomputation for any thread count") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = oracle::random_graph(50, 150, 5000 + trial, 4);
    const DynamicContext ctx = DynamicContext::from_membership(g, oracle::random_membership(50, 6, rng));
    const auto app = apply_batch_checked(g, oracle::random_batch(g, 8, 12, rng, 4));
    const auto k = oracle::degrees(app.graph);
    const auto sig = oracle::sigma(ctx.membership, k);
    for (int threads : {1, 3}) {
      const auto w = update_weights(app.applied, ctx, threads);
      CHECK(w.vertex_weight == k);
      for (VertexId c = 0; c < 50; ++c) CHECK(w.community_weight[c] == sig[c]);
    }
  }
}

TEST_CASE("delta-screening marking") {
  const Graph g = oracle::barbell();
  const DynamicContext ctx = barbell_context();
  SUBCASE("intra-community deletion marks one side") {
    BatchUpdate b;
    b.deletions = {{0, 1, 1}, {1, 0, 1}};
    const Graph gt = apply_batch(g, b);
    const auto w = update_weights(b, ctx);
    const auto marks = mark_delta_screening(gt, b, ctx.membership, w.vertex_weight, w.community_weight);
    for (VertexId i : {0u, 1u, 2u}) CHECK(marks.vertices[i] == 1);
    for (VertexId i : {3u, 4u, 5u}) CHECK(marks.vertices[i] == 0);
    CHECK(count_set(marks.vertices) == 3);
  }
  SUBCASE("cross-community deletion is ignored") {
    BatchUpdate b;
    b.deletions = {{2, 3, 1}, {3, 2, 1}};
    const Graph gt = apply_batch(g, b);
    const auto w = update_weights(b, ctx);
    const auto marks = mark_delta_screening(gt, b, ctx.membership, w.vertex_weight, w.community_weight);
    CHECK(count_set(marks.vertices) == 0);
  }
  SUBCASE("empty batch") {
    const auto marks =
        mark_delta_screening(g, BatchUpdate{}, ctx.membership, ctx.vertex_weight, ctx.community_weight);
    CHECK(count_set(marks.vertices) == 0);
    const auto r = delta_screening(g, BatchUpdate{}, ctx, serial());
    CHECK(r.membership == ctx.membership);
    CHECK(r.report.initial_affected == 0);
  }
  SUBCASE("cross-community insertion marks the source side and the target community") {
    BatchUpdate b;
    b.insertions = {{0, 4, 1}, {4, 0, 1}};
    const Graph gt = apply_batch(g, b);
    const auto w = update_weights(b, ctx);
    const auto marks = mark_delta_screening(gt, b, ctx.membership, w.vertex_weight, w.community_weight);
    CHECK(marks.communities[0] == 1);
    CHECK(marks.communities[3] == 1);
    CHECK(count_set(marks.vertices) == 6);
  }
  SUBCASE("intra-community insertion has no cross candidates") {
    std::vector<WeightedEdge> e{{0, 1, 1}, {1, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}, {2, 3, 1}};
    const Graph missing = build_graph(e, 6);
    const DynamicContext c2 = DynamicContext::from_membership(missing, {0, 0, 0, 3, 3, 3});
    BatchUpdate b;
    b.insertions = {{0, 2, 1}, {2, 0, 1}};
    const auto app = apply_batch_checked(missing, b);
    const auto w = update_weights(app.applied, c2);
    const auto marks = mark_delta_screening(app.graph, app.applied, c2.membership, w.vertex_weight,
                                            w.community_weight);
    CHECK(count_set(marks.vertices) == 0);
  }
}

TEST_CASE("dynamic-frontier marking") {
  const Graph g = oracle::barbell();
  const DynamicContext ctx = barbell_context();
  SUBCASE("intra-community deletion marks both endpoints only") {
    BatchUpdate b;
    b.deletions = {{0, 1, 1}, {1, 0, 1}};
    const auto marks = mark_dynamic_frontier(6, b, ctx.membership);
    CHECK(marks == std::vector<std::uint8_t>{1, 1, 0, 0, 0, 0});
  }
  SUBCASE("intra-community insertion marks nothing") {
    std::vector<WeightedEdge> e{{0, 1, 1}, {1, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}, {2, 3, 1}};
    const Graph missing = build_graph(e, 6);
    const DynamicContext c2 = DynamicContext::from_membership(missing, {0, 0, 0, 3, 3, 3});
    BatchUpdate b;
    b.insertions = {{0, 2, 1}, {2, 0, 1}};
    CHECK(count_set(mark_dynamic_frontier(6, b, c2.membership)) == 0);
  }
  SUBCASE("cross-community insertion marks both endpoints") {
    BatchUpdate b;
    b.insertions = {{0, 4, 1}, {4, 0, 1}};
    CHECK(mark_dynamic_frontier(6, b, ctx.membership) == std::vector<std::uint8_t>{1, 0, 0, 0, 1, 0});
  }
}

TEST_CASE("naive-dynamic examples") {
  const Graph g = oracle::barbell();
  const DynamicContext ctx = barbell_context();
  SUBCASE("empty batch keeps the converged partition") {
    const auto r = naive_dynamic(g, BatchUpdate{}, ctx, serial());
    CHECK(oracle::blocks(r.membership) == oracle::blocks(ctx.membership));
  }
  SUBCASE("removing the bridge keeps both triangles and raises modularity") {
    BatchUpdate b;
    b.deletions = {{2, 3, 1}, {3, 2, 1}};
    const auto app = apply_batch_checked(g, b);
    const auto r = naive_dynamic(app.graph, app.applied, ctx, serial());
    CHECK(oracle::blocks(r.membership) == oracle::blocks(ctx.membership));
    CHECK(modularity(app.graph, r.membership) > modularity(g, ctx.membership));
  }
  SUBCASE("small random graph stays close to a static rerun") {
    std::mt19937_64 rng(41);
    const Graph r64 = oracle::planted_partition(64, 8, 8, 0.85, 9);
    const auto base = static_leiden(r64, serial());
    const DynamicContext c64 = DynamicContext::from_membership(r64, base.membership);
    const auto app = apply_batch_checked(r64, oracle::random_batch(r64, 1, 2, rng));
    const auto dyn = naive_dynamic(app.graph, app.applied, c64, serial());
    const auto fresh = static_leiden(app.graph, serial());
    CHECK(std::abs(modularity(app.graph, dyn.membership) - modularity(app.graph, fresh.membership)) <= 0.01);
  }
}

TEST_CASE("dynamic variants keep their state consistent") {
  std::mt19937_64 rng(51);
  const LeidenParams p = serial();
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = oracle::planted_partition(300, 15, 8, 0.8, 6000 + trial);
    const auto base = static_leiden(g, p);
    const DynamicContext ctx = DynamicContext::from_membership(g, base.membership);
    const auto app = apply_batch_checked(g, oracle::random_batch(g, 5, 20, rng));
    const Graph& gt = app.graph;
    const auto k = oracle::degrees(gt);

    const auto w = update_weights(app.applied, ctx);
    const auto ds = mark_delta_screening(gt, app.applied, ctx.membership, w.vertex_weight, w.community_weight);
    const auto df = mark_dynamic_frontier(gt.vertex_count(), app.applied, ctx.membership);
    for (VertexId i = 0; i < gt.vertex_count(); ++i)
      if (df[i]) CHECK(ds.vertices[i] == 1);

    for (Variant v : kVariants) {
      const auto r = v(gt, app.applied, ctx, p);
      CHECK(r.vertex_weight == k);
      const auto sig = oracle::sigma(r.membership, k);
      for (VertexId c = 0; c < gt.vertex_count(); ++c)
        CHECK(r.community_weight[c] == doctest::Approx(sig[c]).epsilon(1e-9));
      CHECK(audit_connectivity(gt, r.membership).empty());
      CHECK(oracle::communities_connected(gt, r.membership));
    }
  }
}

TEST_CASE("variants reject a mismatched context") {
  const Graph g = oracle::barbell();
  DynamicContext ctx = barbell_context();
  ctx.membership.pop_back();
  for (Variant v : kVariants) CHECK_THROWS_AS(v(g, BatchUpdate{}, ctx, serial()), std::invalid_argument);
}
