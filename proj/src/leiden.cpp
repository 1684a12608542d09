#include "dynleiden/leiden.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dynleiden/quality.hpp"
#include "parallel.hpp"

namespace dynleiden {

using detail::compare_and_swap;
using detail::fetch_add_relaxed;
using detail::load_relaxed;
using detail::store_relaxed;
using detail::thread_id;

using Index = std::int64_t;

void LeidenParams::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(tolerance_drop > 1.0)) throw std::invalid_argument("tolerance drop must exceed 1");
  if (max_iterations < 1) throw std::invalid_argument("max iterations must be at least 1");
  if (max_passes < 1) throw std::invalid_argument("max passes must be at least 1");
  if (!(aggregation_tolerance >= 0.0 && aggregation_tolerance <= 1.0))
    throw std::invalid_argument("aggregation tolerance must lie in [0, 1]");
  if (chunk_size_main < 1 || chunk_size_aggregation < 1)
    throw std::invalid_argument("chunk sizes must be at least 1");
  if (threads < 0) throw std::invalid_argument("thread count must not be negative");
}

int LeidenParams::resolved_threads() const { return threads > 0 ? threads : omp_get_max_threads(); }

LeidenWorkspace::LeidenWorkspace(std::size_t capacity, int threads) {
  tables_.reserve(static_cast<std::size_t>(std::max(threads, 1)));
  for (int t = 0; t < std::max(threads, 1); ++t) tables_.emplace_back(capacity);
}

CommunityState CommunityState::singletons(const Graph& g) {
  const std::size_t n = g.vertex_count();
  CommunityState st;
  st.membership.resize(n);
  std::iota(st.membership.begin(), st.membership.end(), VertexId{0});
  st.vertex_weight = g.weighted_degrees();
  st.community_weight = st.vertex_weight;
  st.changed.assign(n, 1);
  st.processed.assign(n, 0);
  return st;
}

namespace {

void scan_relaxed(CommunityAccumulator& acc, const Graph& g, const VertexId* membership,
                  VertexId i, bool include_self) {
  auto adj = g.neighbors(i);
  auto wts = g.weights(i);
  for (std::size_t e = 0; e < adj.size(); ++e) {
    const VertexId j = adj[e];
    if (!include_self && i == j) continue;
    acc.add(load_relaxed(membership[j]), wts[e]);
  }
}

void scan_bounded_relaxed(CommunityAccumulator& acc, const Graph& g, const VertexId* bounds,
                          const VertexId* membership, VertexId i, bool include_self) {
  auto adj = g.neighbors(i);
  auto wts = g.weights(i);
  for (std::size_t e = 0; e < adj.size(); ++e) {
    const VertexId j = adj[e];
    if (!include_self && i == j) continue;
    if (bounds[i] != bounds[j]) continue;
    acc.add(load_relaxed(membership[j]), wts[e]);
  }
}

struct Choice {
  VertexId community;
  double gain;
};

// Best community among the scanned ones: strictly positive gain, ties to the
// lowest id. Returns {current, 0} if nothing improves.
Choice choose_best(const CommunityAccumulator& acc, VertexId current, double k_i,
                   const std::vector<double>& sigma, double m) {
  const double k_i_to_d = acc.get(current);
  const double sigma_d = load_relaxed(sigma[current]);
  Choice best{current, 0.0};
  for (VertexId c : acc.keys()) {
    if (c == current) continue;
    const double gain = delta_modularity(acc.get(c), k_i_to_d, k_i, load_relaxed(sigma[c]), sigma_d, m);
    if (gain > best.gain || (gain == best.gain && best.gain > 0.0 && c < best.community))
      best = {c, gain};
  }
  return best;
}

double half_sum(std::span<const double> k) {
  return std::accumulate(k.begin(), k.end(), 0.0) / 2.0;
}

}  // namespace

void scan_communities(CommunityAccumulator& acc, const Graph& g, std::span<const VertexId> membership,
                      VertexId i, bool include_self) {
  scan_relaxed(acc, g, membership.data(), i, include_self);
}

void scan_bounded(CommunityAccumulator& acc, const Graph& g, std::span<const VertexId> bounds,
                  std::span<const VertexId> membership, VertexId i, bool include_self) {
  scan_bounded_relaxed(acc, g, bounds.data(), membership.data(), i, include_self);
}

MoveResult leiden_move(const Graph& g, CommunityState& state, const AffectedHooks& hooks,
                       double tolerance, const LeidenParams& params, LeidenWorkspace& ws) {
  const auto n = static_cast<Index>(g.vertex_count());
  const double m = half_sum(state.vertex_weight);
  const auto chunk = static_cast<int>(params.chunk_size_main);
  MoveResult result;
  if (n == 0) return result;

  VertexId* membership = state.membership.data();
  std::uint8_t* processed = state.processed.data();
  std::uint8_t* changed = state.changed.data();
  std::vector<double>& sigma = state.community_weight;
  const std::vector<double>& k = state.vertex_weight;

  for (std::size_t l = 0; l < params.max_iterations;) {
    double gained = 0.0;
    std::size_t moves = 0;
#pragma omp parallel for schedule(dynamic, chunk) num_threads(ws.threads()) reduction(+ : gained, moves)
    for (Index u = 0; u < n; ++u) {
      const auto i = static_cast<VertexId>(u);
      if (load_relaxed(processed[i])) continue;
      store_relaxed(processed[i], std::uint8_t{1});
      if (hooks.in_affected_range && !hooks.in_affected_range(i)) continue;
      if (m <= 0.0) continue;

      auto& acc = ws.local(thread_id());
      scan_relaxed(acc, g, membership, i, false);
      const VertexId d = load_relaxed(membership[i]);
      const Choice best = choose_best(acc, d, k[i], sigma, m);
      acc.clear();
      if (best.community == d) continue;

      fetch_add_relaxed(sigma[d], -k[i]);
      fetch_add_relaxed(sigma[best.community], k[i]);
      store_relaxed(membership[i], best.community);
      gained += best.gain;
      ++moves;
      for (VertexId j : g.neighbors(i)) store_relaxed(processed[j], std::uint8_t{0});
      store_relaxed(changed[d], std::uint8_t{1});
      store_relaxed(changed[best.community], std::uint8_t{1});
      if (hooks.on_change) hooks.on_change(i);
    }
    ++l;
    result.iterations = l;
    result.moves += moves;
    result.delta_modularity += gained;
    if (gained <= tolerance) break;
  }
  return result;
}

void leiden_subset_renumber(const Graph& g, CommunityState& state, int threads) {
  const auto n = static_cast<Index>(g.vertex_count());
  std::vector<VertexId> representative(static_cast<std::size_t>(n), kEmpty);
  VertexId* membership = state.membership.data();
  VertexId* rep = representative.data();

#pragma omp parallel for schedule(static) num_threads(threads)
  for (Index i = 0; i < n; ++i) {
    const VertexId c = membership[i];
    if (load_relaxed(rep[c]) == kEmpty) compare_and_swap(rep[c], kEmpty, static_cast<VertexId>(i));
  }

  std::vector<double> sigma(static_cast<std::size_t>(n), 0.0);
  std::vector<std::uint8_t> changed(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (Index c = 0; c < n; ++c) {
    const VertexId r = rep[c];
    if (r == kEmpty) continue;
    sigma[r] = state.community_weight[c];
    changed[r] = state.changed[c];
  }

#pragma omp parallel for schedule(static) num_threads(threads)
  for (Index i = 0; i < n; ++i) membership[i] = rep[membership[i]];

  state.community_weight = std::move(sigma);
  state.changed = std::move(changed);
}

std::vector<std::uint8_t> changed_communities(const Graph& g, std::span<const VertexId> c_prev,
                                              const BatchUpdate& b, bool dynamic) {
  const std::size_t n = g.vertex_count();
  if (!dynamic) return std::vector<std::uint8_t>(n, 1);
  std::vector<std::uint8_t> changed(n, 0);
  for (const auto& e : b.deletions)
    if (c_prev[e.source] == c_prev[e.target]) changed[c_prev[e.source]] = 1;
  for (const auto& e : b.insertions)
    if (c_prev[e.source] == c_prev[e.target]) changed[c_prev[e.source]] = 1;
  return changed;
}

void break_changed_communities(const Graph& g, CommunityState& state) {
  // Ids of broken-out vertices are never live community ids after subset
  // renumbering, so these writes cannot collide with untouched communities.
  const std::size_t n = g.vertex_count();
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId c = state.membership[i];
    if (!state.changed[c]) continue;
    state.membership[i] = static_cast<VertexId>(i);
    state.community_weight[i] = state.vertex_weight[i];
    state.changed[i] = 1;
  }
}

std::size_t leiden_refine(const Graph& g, std::span<const VertexId> bounds, CommunityState& state,
                          double /*tolerance*/, const LeidenParams& params, LeidenWorkspace& ws) {
  const auto n = static_cast<Index>(g.vertex_count());
  const double m = half_sum(state.vertex_weight);
  const auto chunk = static_cast<int>(params.chunk_size_main);
  if (n == 0 || m <= 0.0) return 0;

  VertexId* membership = state.membership.data();
  const VertexId* bound = bounds.data();
  std::vector<double>& sigma = state.community_weight;
  const std::vector<double>& k = state.vertex_weight;
  std::size_t merges = 0;

#pragma omp parallel for schedule(dynamic, chunk) num_threads(ws.threads()) reduction(+ : merges)
  for (Index u = 0; u < n; ++u) {
    const auto i = static_cast<VertexId>(u);
    const VertexId c = load_relaxed(membership[i]);
    if (!state.changed[c] || load_relaxed(sigma[c]) != k[i]) continue;

    auto& acc = ws.local(thread_id());
    scan_bounded_relaxed(acc, g, bound, membership, i, false);
    const Choice best = choose_best(acc, c, k[i], sigma, m);
    acc.clear();
    if (best.community == c || load_relaxed(membership[best.community]) != best.community) continue;

    if (compare_and_swap(sigma[c], k[i], 0.0)) {
      fetch_add_relaxed(sigma[best.community], k[i]);
      store_relaxed(membership[i], best.community);
      ++merges;
    }
  }
  return merges;
}

std::size_t renumber_dense(std::span<VertexId> membership) {
  if (membership.empty()) return 0;
  const VertexId top = *std::max_element(membership.begin(), membership.end());
  std::vector<VertexId> id(std::size_t{top} + 1, kEmpty);
  for (VertexId c : membership) id[c] = 0;
  VertexId next = 0;
  for (auto& v : id)
    if (v != kEmpty) v = next++;
  for (auto& c : membership) c = id[c];
  return next;
}

Graph leiden_aggregate(const Graph& g, std::span<const VertexId> membership, const LeidenParams& params,
                       LeidenWorkspace& ws) {
  const auto n = static_cast<Index>(g.vertex_count());
  if (n == 0) return Graph();
  const std::size_t communities =
      std::size_t{*std::max_element(membership.begin(), membership.end())} + 1;
  const auto chunk = static_cast<int>(params.chunk_size_aggregation);
  const int threads = ws.threads();

  // Community vertices in CSR form: count, exclusive scan, scatter.
  std::vector<EdgeIndex> member_offsets(communities + 1, 0);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (Index i = 0; i < n; ++i) fetch_add_relaxed(member_offsets[membership[i] + 1], EdgeIndex{1});
  std::partial_sum(member_offsets.begin(), member_offsets.end(), member_offsets.begin());

  std::vector<EdgeIndex> cursor(member_offsets.begin(), member_offsets.end() - 1);
  std::vector<VertexId> members(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) num_threads(threads)
  for (Index i = 0; i < n; ++i) {
    const EdgeIndex slot = fetch_add_relaxed(cursor[membership[i]], EdgeIndex{1});
    members[slot] = static_cast<VertexId>(i);
  }

  // Upper bound on each super-vertex degree, then exclusive scan.
  std::vector<EdgeIndex> slot_offsets(communities + 1, 0);
  const auto nc = static_cast<Index>(communities);
#pragma omp parallel for schedule(dynamic, chunk) num_threads(threads)
  for (Index c = 0; c < nc; ++c) {
    EdgeIndex total = 0;
    for (EdgeIndex p = member_offsets[c]; p < member_offsets[c + 1]; ++p) total += g.degree(members[p]);
    slot_offsets[c + 1] = total;
  }
  std::partial_sum(slot_offsets.begin(), slot_offsets.end(), slot_offsets.begin());

  std::vector<VertexId> slot_neighbors(slot_offsets.back());
  std::vector<EdgeWeight> slot_weights(slot_offsets.back());
  std::vector<EdgeIndex> degree(communities + 1, 0);
#pragma omp parallel num_threads(threads)
  {
    std::vector<VertexId> keys;
#pragma omp for schedule(dynamic, chunk)
    for (Index c = 0; c < nc; ++c) {
      if (member_offsets[c] == member_offsets[c + 1]) continue;
      auto& acc = ws.local(thread_id());
      for (EdgeIndex p = member_offsets[c]; p < member_offsets[c + 1]; ++p)
        scan_relaxed(acc, g, membership.data(), members[p], true);
      keys.assign(acc.keys().begin(), acc.keys().end());
      std::sort(keys.begin(), keys.end());
      EdgeIndex out = slot_offsets[c];
      for (VertexId d : keys) {
        slot_neighbors[out] = d;
        slot_weights[out] = static_cast<EdgeWeight>(acc.get(d));
        ++out;
      }
      degree[c + 1] = keys.size();
      acc.clear();
    }
  }

  // Compact the preallocated slots into a dense CSR.
  std::partial_sum(degree.begin(), degree.end(), degree.begin());
  std::vector<VertexId> neighbors(degree.back());
  std::vector<EdgeWeight> weights(degree.back());
#pragma omp parallel for schedule(dynamic, chunk) num_threads(threads)
  for (Index c = 0; c < nc; ++c) {
    const EdgeIndex len = degree[c + 1] - degree[c];
    std::copy_n(slot_neighbors.begin() + static_cast<std::ptrdiff_t>(slot_offsets[c]), len,
                neighbors.begin() + static_cast<std::ptrdiff_t>(degree[c]));
    std::copy_n(slot_weights.begin() + static_cast<std::ptrdiff_t>(slot_offsets[c]), len,
                weights.begin() + static_cast<std::ptrdiff_t>(degree[c]));
  }
  return Graph(std::move(degree), std::move(neighbors), std::move(weights));
}

std::vector<VertexId> dendrogram_lookup(std::span<const VertexId> flat, std::span<const VertexId> level) {
  std::vector<VertexId> out(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (flat[i] >= level.size())
      throw std::out_of_range("dendrogram level does not map community " + std::to_string(flat[i]));
    out[i] = level[flat[i]];
  }
  return out;
}

std::vector<VertexId> Dendrogram::flatten(std::size_t vertex_count) const {
  std::vector<VertexId> flat(vertex_count);
  std::iota(flat.begin(), flat.end(), VertexId{0});
  for (const auto& level : levels) flat = dendrogram_lookup(flat, level);
  return flat;
}

LeidenResult leiden(const Graph& g, std::span<const VertexId> initial_membership,
                    std::span<const double> vertex_weights, std::span<const double> community_weights,
                    const AffectedHooks& hooks, std::span<const std::uint8_t> changed,
                    const LeidenParams& params) {
  params.validate();
  const std::size_t n = g.vertex_count();
  if (initial_membership.size() != n || vertex_weights.size() != n)
    throw std::invalid_argument("membership and vertex weights must have one entry per vertex");
  if (community_weights.size() < n || changed.size() < n)
    throw std::invalid_argument("community weights and changed flags must cover every vertex id");
  for (VertexId c : initial_membership)
    if (c >= n) throw std::invalid_argument("community ids must be vertex ids of the graph");

  detail::Stopwatch total;
  LeidenResult result;
  LeidenReport& report = result.report;
  const int threads = params.resolved_threads();
  LeidenWorkspace ws(n, threads);

  CommunityState st;
  st.membership.assign(initial_membership.begin(), initial_membership.end());
  st.vertex_weight.assign(vertex_weights.begin(), vertex_weights.end());
  st.community_weight.assign(community_weights.begin(), community_weights.begin() + static_cast<std::ptrdiff_t>(n));
  st.changed.assign(changed.begin(), changed.begin() + static_cast<std::ptrdiff_t>(n));
  st.processed.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const bool affected = !hooks.is_affected || hooks.is_affected(static_cast<VertexId>(i));
    st.processed[i] = affected ? 0 : 1;
    if (affected) ++report.initial_affected;
  }

  std::vector<VertexId> flat(n);
  std::iota(flat.begin(), flat.end(), VertexId{0});
  const Graph* current = &g;
  Graph aggregated;
  double tolerance = params.tolerance;
  bool level_pending = true;
  bool converged = false;
  const AffectedHooks everything;

  for (std::size_t pass = 0; pass < params.max_passes && n > 0; ++pass) {
    const bool first = pass == 0;
    PassStats stats;
    stats.vertex_count = current->vertex_count();

    detail::Stopwatch move_clock;
    const MoveResult moved = leiden_move(*current, st, first ? hooks : everything, tolerance, params, ws);
    report.move_seconds += move_clock.seconds();
    stats.iterations = moved.iterations;
    stats.moves = moved.moves;

    if (first) {
      std::vector<std::uint8_t> live(st.size(), 0);
      for (VertexId c : st.membership) live[c] = 1;
      for (std::size_t c = 0; c < live.size(); ++c) {
        if (!live[c]) continue;
        ++report.live_communities;
        if (st.changed[c]) ++report.changed_communities;
      }
      // Nothing moved and nothing needs refining: the input partition stands.
      if (moved.moves == 0 && report.changed_communities == 0) {
        stats.communities = report.live_communities;
        report.passes.push_back(stats);
        converged = true;
        break;
      }
    }

    detail::Stopwatch refine_clock;
    leiden_subset_renumber(*current, st, threads);
    const std::vector<VertexId> bounds = st.membership;
    break_changed_communities(*current, st);
    stats.refine_merges = leiden_refine(*current, bounds, st, tolerance, params, ws);
    report.refine_seconds += refine_clock.seconds();

    if (!first && moved.iterations <= 1) {
      stats.communities = community_count(st.membership);
      report.passes.push_back(stats);
      converged = true;
      break;
    }

    detail::Stopwatch aggregate_clock;
    stats.communities = renumber_dense(st.membership);
    flat = dendrogram_lookup(flat, st.membership);
    result.dendrogram.levels.push_back(st.membership);
    report.passes.push_back(stats);
    if (static_cast<double>(stats.communities) >
        params.aggregation_tolerance * static_cast<double>(current->vertex_count())) {
      report.aggregate_seconds += aggregate_clock.seconds();
      level_pending = false;
      converged = true;
      break;
    }
    aggregated = leiden_aggregate(*current, st.membership, params, ws);
    current = &aggregated;
    st = CommunityState::singletons(*current);
    tolerance /= params.tolerance_drop;
    report.aggregate_seconds += aggregate_clock.seconds();
  }
  report.max_passes_hit = !converged && n > 0;

  if (level_pending && n > 0) {
    flat = dendrogram_lookup(flat, st.membership);
    result.dendrogram.levels.push_back(st.membership);
  }
  result.membership = std::move(flat);
  result.community_weight.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) result.community_weight[result.membership[i]] += vertex_weights[i];
  report.total_seconds = total.seconds();
  return result;
}

LeidenResult static_leiden(const Graph& g, const LeidenParams& params) {
  const CommunityState st = CommunityState::singletons(g);
  return leiden(g, st.membership, st.vertex_weight, st.community_weight, AffectedHooks{}, st.changed, params);
}

}  // namespace dynleiden
