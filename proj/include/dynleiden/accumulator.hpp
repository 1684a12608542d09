#pragma once

#include <span>
#include <vector>

#include "dynleiden/types.hpp"

namespace dynleiden {

/**
 * Collision-free map from community id to accumulated edge weight.
 *
 * A dense value array sized to the id universe plus a list of occupied keys,
 * so clearing costs O(keys). Accumulated values are sums of positive edge
 * weights, so a zero slot means the key is absent. One instance per thread.
 */
class CommunityAccumulator {
 public:
  CommunityAccumulator() = default;
  explicit CommunityAccumulator(std::size_t capacity) : values_(capacity, 0.0) {}

  void reserve(std::size_t capacity) {
    if (values_.size() < capacity) values_.resize(capacity, 0.0);
  }
  std::size_t capacity() const { return values_.size(); }

  void add(VertexId key, double weight) {
    if (values_[key] == 0.0) keys_.push_back(key);
    values_[key] += weight;
  }

  /// 0 when absent.
  double get(VertexId key) const { return values_[key]; }
  bool contains(VertexId key) const { return values_[key] != 0.0; }

  /// Occupied keys in insertion order.
  std::span<const VertexId> keys() const { return keys_; }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }

  void clear() {
    for (VertexId k : keys_) values_[k] = 0.0;
    keys_.clear();
  }

 private:
  std::vector<double> values_;
  std::vector<VertexId> keys_;
};

}  // namespace dynleiden
