#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>

#include <omp.h>

namespace dynleiden::detail {

// Relaxed accessors for arrays shared between threads of a parallel loop.
// Readers may observe stale values; that is acceptable for asynchronous
// local moving.

template <class T>
inline T load_relaxed(const T& x) {
  return std::atomic_ref<T>(const_cast<T&>(x)).load(std::memory_order_relaxed);
}

template <class T>
inline void store_relaxed(T& x, T value) {
  std::atomic_ref<T>(x).store(value, std::memory_order_relaxed);
}

template <class T>
inline T fetch_add_relaxed(T& x, T value) {
  return std::atomic_ref<T>(x).fetch_add(value, std::memory_order_relaxed);
}

/// Returns true if x held `expected` and was replaced by `desired`.
template <class T>
inline bool compare_and_swap(T& x, T expected, T desired) {
  return std::atomic_ref<T>(x).compare_exchange_strong(expected, desired, std::memory_order_acq_rel);
}

inline int thread_id() { return omp_get_thread_num(); }

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace dynleiden::detail
