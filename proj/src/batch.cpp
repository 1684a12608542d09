#include "dynleiden/batch.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

namespace dynleiden {

BatchUpdate inverse(const BatchUpdate& b) {
  BatchUpdate inv;
  inv.deletions.reserve(b.insertions.size());
  inv.insertions.reserve(b.deletions.size());
  for (const auto& e : b.insertions) inv.deletions.push_back({e.source, e.target, e.weight});
  for (const auto& e : b.deletions) inv.insertions.push_back({e.source, e.target, e.weight});
  return inv;
}

bool is_symmetric(const BatchUpdate& b) {
  using Key = std::tuple<VertexId, VertexId, EdgeWeight>;
  auto check = [](std::vector<Key> forward, bool with_weight) {
    if (!with_weight)
      for (auto& k : forward) std::get<2>(k) = 0.0f;
    std::vector<Key> reverse;
    reverse.reserve(forward.size());
    for (const auto& [i, j, w] : forward) reverse.emplace_back(j, i, w);
    std::sort(forward.begin(), forward.end());
    std::sort(reverse.begin(), reverse.end());
    return forward == reverse;
  };
  std::vector<Key> dels, ins;
  for (const auto& e : b.deletions) dels.emplace_back(e.source, e.target, e.weight);
  for (const auto& e : b.insertions) ins.emplace_back(e.source, e.target, e.weight);
  return check(std::move(dels), false) && check(std::move(ins), true);
}

BatchApplication apply_batch_checked(const Graph& g, const BatchUpdate& b) {
  const std::size_t n = g.vertex_count();
  for (const auto& e : b.deletions)
    if (e.source >= n || e.target >= n) throw GraphError("batch deletion out of vertex range");
  for (const auto& e : b.insertions) {
    if (e.source >= n || e.target >= n) throw GraphError("batch insertion out of vertex range");
    if (!(e.weight > 0.0f) || !std::isfinite(e.weight))
      throw GraphError("batch insertion weights must be positive and finite");
  }

  auto by_pair = [](const auto& a, const auto& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  };
  std::vector<EdgeDeletion> dels(b.deletions.begin(), b.deletions.end());
  std::vector<EdgeInsertion> ins(b.insertions.begin(), b.insertions.end());
  std::stable_sort(dels.begin(), dels.end(), by_pair);
  std::stable_sort(ins.begin(), ins.end(), by_pair);

  BatchApplication out;
  std::vector<EdgeIndex> offsets(n + 1, 0);
  std::vector<VertexId> neighbors;
  std::vector<EdgeWeight> weights;
  neighbors.reserve(g.directed_edge_count() + ins.size());
  weights.reserve(g.directed_edge_count() + ins.size());

  std::vector<VertexId> kept;
  std::vector<EdgeWeight> kept_w;
  std::size_t d = 0, s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<VertexId>(i);
    auto adj = g.neighbors(v);
    auto wts = g.weights(v);

    // Remove deletions.
    kept.clear();
    kept_w.clear();
    std::size_t a = 0;
    for (; d < dels.size() && dels[d].source == v; ++d) {
      const VertexId t = dels[d].target;
      while (a < adj.size() && adj[a] < t) {
        kept.push_back(adj[a]);
        kept_w.push_back(wts[a]);
        ++a;
      }
      if (a < adj.size() && adj[a] == t) {
        out.applied.deletions.push_back({v, t, wts[a]});
        ++a;
      } else {
        ++out.skipped_deletions;
      }
    }
    for (; a < adj.size(); ++a) {
      kept.push_back(adj[a]);
      kept_w.push_back(wts[a]);
    }

    // Merge insertions.
    std::size_t k = 0;
    VertexId last_inserted = kEmpty;
    for (; s < ins.size() && ins[s].source == v; ++s) {
      const VertexId t = ins[s].target;
      while (k < kept.size() && kept[k] < t) {
        neighbors.push_back(kept[k]);
        weights.push_back(kept_w[k]);
        ++k;
      }
      if ((k < kept.size() && kept[k] == t) || t == last_inserted) {
        ++out.skipped_insertions;
        continue;
      }
      neighbors.push_back(t);
      weights.push_back(ins[s].weight);
      out.applied.insertions.push_back(ins[s]);
      last_inserted = t;
    }
    for (; k < kept.size(); ++k) {
      neighbors.push_back(kept[k]);
      weights.push_back(kept_w[k]);
    }
    offsets[i + 1] = neighbors.size();
  }
  out.graph = Graph(std::move(offsets), std::move(neighbors), std::move(weights));
  return out;
}

void write_batch(std::ostream& out, const BatchUpdate& b) {
  for (const auto& e : b.deletions) out << "D " << e.source << ' ' << e.target << '\n';
  for (const auto& e : b.insertions)
    out << "I " << e.source << ' ' << e.target << ' ' << e.weight << '\n';
}

BatchUpdate read_batch(std::istream& in) {
  BatchUpdate b;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    unsigned long long i = 0, j = 0;
    if (!(ls >> i >> j)) throw GraphError("malformed batch record on line " + std::to_string(line_no));
    if (tag == "D") {
      b.deletions.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), 1.0f});
    } else if (tag == "I") {
      double w = 1.0;
      if (!(ls >> w)) throw GraphError("insertion without weight on line " + std::to_string(line_no));
      b.insertions.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), static_cast<EdgeWeight>(w)});
    } else {
      throw GraphError("unknown batch record '" + tag + "' on line " + std::to_string(line_no));
    }
  }
  return b;
}

}  // namespace dynleiden
