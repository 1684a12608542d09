#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dynleiden {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint64_t;
/// Edge weights are stored in 32-bit precision; every aggregate (m, K, Sigma, Q) is 64-bit.
using EdgeWeight = float;

/// Reserved id meaning "no vertex / no community".
inline constexpr VertexId kEmpty = std::numeric_limits<VertexId>::max();

class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dynleiden
