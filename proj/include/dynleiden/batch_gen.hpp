#pragma once

#include <cstdint>

#include "dynleiden/batch.hpp"

namespace dynleiden {

struct BatchSpec {
  /// Batch size as a fraction of the undirected edge count.
  double fraction = 0.0;
  double insertion_share = 0.8;
  std::uint64_t seed = 0;
  std::size_t repetitions = 5;

  void validate() const;
};

/**
 * Random batch of round(fraction * |E|) undirected updates:
 * round(insertion_share * B) unit-weight insertions between uniformly chosen
 * non-adjacent vertex pairs, the rest deletions drawn uniformly without
 * replacement from the existing non-loop edges. Every record is emitted in
 * both directions. Deterministic for a given seed.
 *
 * Throws std::invalid_argument if the graph cannot supply enough distinct
 * edges or non-edges, or if insertion sampling exceeds its retry budget.
 */
BatchUpdate generate_batch(const Graph& g, const BatchSpec& spec);

}  // namespace dynleiden
