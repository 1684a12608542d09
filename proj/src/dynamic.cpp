#include "dynleiden/dynamic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dynleiden/quality.hpp"
#include "parallel.hpp"

namespace dynleiden {

using detail::store_relaxed;

DynamicContext DynamicContext::from_membership(const Graph& g, std::vector<VertexId> membership) {
  if (membership.size() != g.vertex_count())
    throw std::invalid_argument("membership size does not match vertex count");
  for (VertexId c : membership)
    if (c >= g.vertex_count()) throw std::invalid_argument("community ids must be vertex ids");
  DynamicContext ctx;
  ctx.vertex_weight = g.weighted_degrees();
  ctx.community_weight = community_weights(membership, ctx.vertex_weight);
  ctx.membership = std::move(membership);
  return ctx;
}

VertexCommunityWeights update_weights(const BatchUpdate& b, const DynamicContext& ctx, int threads) {
  const std::size_t n = ctx.membership.size();
  VertexCommunityWeights out{ctx.vertex_weight, ctx.community_weight};
  out.community_weight.resize(std::max(out.community_weight.size(), n), 0.0);
  const std::vector<VertexId>& c_prev = ctx.membership;
  const int team = std::max(threads, 1);

#pragma omp parallel num_threads(team)
  {
    const auto t = static_cast<std::size_t>(omp_get_thread_num());
    const auto size = static_cast<std::size_t>(omp_get_num_threads());
    const std::size_t lo = n * t / size, hi = n * (t + 1) / size;
    auto owns = [&](std::size_t x) { return x >= lo && x < hi; };
    for (const auto& e : b.deletions) {
      const VertexId c = c_prev[e.source];
      if (owns(e.source)) out.vertex_weight[e.source] -= e.weight;
      if (owns(c)) out.community_weight[c] -= e.weight;
    }
    for (const auto& e : b.insertions) {
      const VertexId c = c_prev[e.source];
      if (owns(e.source)) out.vertex_weight[e.source] += e.weight;
      if (owns(c)) out.community_weight[c] += e.weight;
    }
  }
  return out;
}

AffectedMarks mark_delta_screening(const Graph& g_t, const BatchUpdate& b, std::span<const VertexId> c_prev,
                                   std::span<const double> vertex_weights,
                                   std::span<const double> community_weights) {
  const std::size_t n = g_t.vertex_count();
  AffectedMarks marks{std::vector<std::uint8_t>(n, 0), std::vector<std::uint8_t>(n, 0),
                      std::vector<std::uint8_t>(n, 0)};
  const double m = std::accumulate(vertex_weights.begin(), vertex_weights.end(), 0.0) / 2.0;

  for (const auto& e : b.deletions) {
    if (c_prev[e.source] != c_prev[e.target]) continue;
    marks.vertices[e.source] = 1;
    marks.neighbors[e.source] = 1;
    marks.communities[c_prev[e.target]] = 1;
  }

  std::vector<EdgeInsertion> ins(b.insertions.begin(), b.insertions.end());
  std::stable_sort(ins.begin(), ins.end(),
                   [](const EdgeInsertion& x, const EdgeInsertion& y) { return x.source < y.source; });
  CommunityAccumulator acc(n);
  for (std::size_t s = 0; s < ins.size();) {
    const VertexId i = ins[s].source;
    const VertexId d = c_prev[i];
    for (; s < ins.size() && ins[s].source == i; ++s)
      if (c_prev[ins[s].target] != d) acc.add(c_prev[ins[s].target], ins[s].weight);
    if (acc.empty()) continue;
    // Best target by delta-modularity; the weight to d is common to every
    // candidate, so it is left out of the comparison.
    VertexId best = kEmpty;
    double best_gain = 0.0;
    for (VertexId c : acc.keys()) {
      const double gain =
          delta_modularity(acc.get(c), 0.0, vertex_weights[i], community_weights[c], community_weights[d], m);
      if (best == kEmpty || gain > best_gain || (gain == best_gain && c < best)) {
        best = c;
        best_gain = gain;
      }
    }
    acc.clear();
    marks.vertices[i] = 1;
    marks.neighbors[i] = 1;
    marks.communities[best] = 1;
  }

  const auto nn = static_cast<std::int64_t>(n);
  std::uint8_t* vertices = marks.vertices.data();
  for (std::int64_t u = 0; u < nn; ++u) {
    const auto i = static_cast<VertexId>(u);
    if (marks.neighbors[i])
      for (VertexId j : g_t.neighbors(i)) store_relaxed(vertices[j], std::uint8_t{1});
    if (marks.communities[c_prev[i]]) store_relaxed(vertices[i], std::uint8_t{1});
  }
  return marks;
}

std::vector<std::uint8_t> mark_dynamic_frontier(std::size_t vertex_count, const BatchUpdate& b,
                                                std::span<const VertexId> c_prev) {
  std::vector<std::uint8_t> affected(vertex_count, 0);
  for (const auto& e : b.deletions)
    if (c_prev[e.source] == c_prev[e.target]) affected[e.source] = 1;
  for (const auto& e : b.insertions)
    if (c_prev[e.source] != c_prev[e.target]) affected[e.source] = 1;
  return affected;
}

namespace {

void check_context(const Graph& g_t, const DynamicContext& ctx) {
  const std::size_t n = g_t.vertex_count();
  if (ctx.membership.size() != n || ctx.vertex_weight.size() != n || ctx.community_weight.size() < n)
    throw std::invalid_argument("dynamic context does not match the graph");
}

DynamicResult finish(const Graph& g_t, const DynamicContext& ctx, VertexCommunityWeights weights,
                     const std::vector<std::uint8_t>& changed, const AffectedHooks& hooks,
                     const LeidenParams& params, double marking_seconds) {
  LeidenResult r = leiden(g_t, ctx.membership, weights.vertex_weight, weights.community_weight, hooks,
                          changed, params);
  DynamicResult out;
  out.membership = std::move(r.membership);
  out.vertex_weight = std::move(weights.vertex_weight);
  out.community_weight = std::move(r.community_weight);
  out.report = std::move(r.report);
  out.marking_seconds = marking_seconds;
  return out;
}

}  // namespace

DynamicResult naive_dynamic(const Graph& g_t, const BatchUpdate& b, const DynamicContext& ctx,
                            const LeidenParams& params) {
  check_context(g_t, ctx);
  detail::Stopwatch clock;
  auto weights = update_weights(b, ctx, params.resolved_threads());
  auto changed = changed_communities(g_t, ctx.membership, b, true);
  const double marking = clock.seconds();
  return finish(g_t, ctx, std::move(weights), changed, AffectedHooks{}, params, marking);
}

DynamicResult delta_screening(const Graph& g_t, const BatchUpdate& b, const DynamicContext& ctx,
                              const LeidenParams& params) {
  check_context(g_t, ctx);
  detail::Stopwatch clock;
  auto weights = update_weights(b, ctx, params.resolved_threads());
  auto marks = mark_delta_screening(g_t, b, ctx.membership, weights.vertex_weight, weights.community_weight);
  auto changed = changed_communities(g_t, ctx.membership, b, true);
  const double marking = clock.seconds();

  const std::uint8_t* affected = marks.vertices.data();
  AffectedHooks hooks;
  hooks.is_affected = [affected](VertexId i) { return affected[i] != 0; };
  hooks.in_affected_range = hooks.is_affected;
  return finish(g_t, ctx, std::move(weights), changed, hooks, params, marking);
}

DynamicResult dynamic_frontier(const Graph& g_t, const BatchUpdate& b, const DynamicContext& ctx,
                               const LeidenParams& params) {
  check_context(g_t, ctx);
  detail::Stopwatch clock;
  auto weights = update_weights(b, ctx, params.resolved_threads());
  auto affected = mark_dynamic_frontier(g_t.vertex_count(), b, ctx.membership);
  auto changed = changed_communities(g_t, ctx.membership, b, true);
  const double marking = clock.seconds();

  std::uint8_t* flags = affected.data();
  AffectedHooks hooks;
  hooks.is_affected = [flags](VertexId i) { return detail::load_relaxed(flags[i]) != 0; };
  // The frontier may grow anywhere; pruning re-marks the neighbors of movers.
  hooks.on_change = [flags, &g_t](VertexId i) {
    for (VertexId j : g_t.neighbors(i)) store_relaxed(flags[j], std::uint8_t{1});
  };
  return finish(g_t, ctx, std::move(weights), changed, hooks, params, marking);
}

}  // namespace dynleiden
