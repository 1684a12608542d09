#pragma once

#include <iosfwd>
#include <vector>

#include "dynleiden/graph.hpp"

namespace dynleiden {

/// A directed edge-removal record. The weight is that of the removed edge;
/// it is filled in by apply_batch (and by the batch generator) and is what
/// the incremental weight update subtracts.
struct EdgeDeletion {
  VertexId source = 0;
  VertexId target = 0;
  EdgeWeight weight = 1.0f;

  friend bool operator==(const EdgeDeletion&, const EdgeDeletion&) = default;
};

struct EdgeInsertion {
  VertexId source = 0;
  VertexId target = 0;
  EdgeWeight weight = 1.0f;

  friend bool operator==(const EdgeInsertion&, const EdgeInsertion&) = default;
};

/// Edge deletions and insertions between two snapshots. Every record is
/// expected to appear in both directions.
struct BatchUpdate {
  std::vector<EdgeDeletion> deletions;
  std::vector<EdgeInsertion> insertions;

  bool empty() const { return deletions.empty() && insertions.empty(); }
  friend bool operator==(const BatchUpdate&, const BatchUpdate&) = default;
};

/// Swaps the roles of deletions and insertions.
BatchUpdate inverse(const BatchUpdate& b);

/// True if every record has its reverse (with equal weight for insertions).
bool is_symmetric(const BatchUpdate& b);

struct BatchApplication {
  Graph graph;
  /// The records that actually took effect, sorted by (source, target).
  /// Deletions carry the weight of the edge they removed.
  BatchUpdate applied;
  std::size_t skipped_deletions = 0;
  std::size_t skipped_insertions = 0;
};

/**
 * Produce the next snapshot: deletions are removed first, then insertions are
 * added. Deleting a missing edge or inserting an existing one is skipped and
 * counted. The vertex set never changes; an out-of-range id throws GraphError.
 */
BatchApplication apply_batch_checked(const Graph& g, const BatchUpdate& b);

inline Graph apply_batch(const Graph& g, const BatchUpdate& b) {
  return apply_batch_checked(g, b).graph;
}

/// Text format: one directed record per line, `D i j` or `I i j w`.
void write_batch(std::ostream& out, const BatchUpdate& b);
BatchUpdate read_batch(std::istream& in);

}  // namespace dynleiden
