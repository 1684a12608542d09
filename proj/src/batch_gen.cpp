#include "dynleiden/batch_gen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace dynleiden {

void BatchSpec::validate() const {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("batch fraction must lie in [0, 1]");
  if (!(insertion_share >= 0.0 && insertion_share <= 1.0))
    throw std::invalid_argument("insertion share must lie in [0, 1]");
}

BatchUpdate generate_batch(const Graph& g, const BatchSpec& spec) {
  spec.validate();
  BatchUpdate batch;
  const std::size_t n = g.vertex_count();
  const auto total = static_cast<std::size_t>(std::llround(spec.fraction * static_cast<double>(g.undirected_edge_count())));
  if (total == 0) return batch;
  const auto insertions = static_cast<std::size_t>(std::llround(spec.insertion_share * static_cast<double>(total)));
  const std::size_t deletions = total - insertions;

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(g.directed_edge_count() / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (VertexId j : g.neighbors(static_cast<VertexId>(i)))
      if (i < j) edges.emplace_back(static_cast<VertexId>(i), j);

  if (deletions > edges.size())
    throw std::invalid_argument("batch asks for " + std::to_string(deletions) + " deletions but the graph has " +
                                std::to_string(edges.size()) + " edges");
  const double pairs = static_cast<double>(n) * static_cast<double>(n > 0 ? n - 1 : 0) / 2.0;
  if (static_cast<double>(insertions) > pairs - static_cast<double>(edges.size()))
    throw std::invalid_argument("batch asks for more insertions than there are vertex pairs without an edge");

  std::mt19937_64 rng(spec.seed);

  std::unordered_set<std::uint64_t> chosen;
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  const std::size_t budget = 100 * insertions;
  std::size_t attempts = 0;
  while (chosen.size() < insertions) {
    if (attempts++ >= budget)
      throw std::invalid_argument("insertion sampling exceeded its retry budget; graph is too dense");
    VertexId i = pick(rng), j = pick(rng);
    if (i == j || g.has_edge(i, j)) continue;
    if (i > j) std::swap(i, j);
    if (!chosen.insert((std::uint64_t{i} << 32) | j).second) continue;
    batch.insertions.push_back({i, j, 1.0f});
    batch.insertions.push_back({j, i, 1.0f});
  }

  // Partial Fisher-Yates: the first `deletions` slots become the sample.
  for (std::size_t k = 0; k < deletions; ++k) {
    std::uniform_int_distribution<std::size_t> slot(k, edges.size() - 1);
    std::swap(edges[k], edges[slot(rng)]);
    const auto [i, j] = edges[k];
    const EdgeWeight w = *g.edge_weight(i, j);
    batch.deletions.push_back({i, j, w});
    batch.deletions.push_back({j, i, w});
  }
  return batch;
}

}  // namespace dynleiden
