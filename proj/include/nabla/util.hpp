#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nabla {

// Raised when an operation would leave the finite truncation window
// (arity bound of an operad, word-length bound of a wreath construction, ...).
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// Number of worker threads to use: the value of NABLA_OPS_JOBS if set and
// positive, otherwise the hardware concurrency (at least 1).
unsigned worker_count();

// Runs fn(i) for i in [0, count) on worker_count() threads.  fn must only
// write to per-index slots; exceptions are collected and the first rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

// Enumerates tuples (t_0..t_{k-1}) with 0 <= t_i < radix[i], in lexicographic
// order, invoking fn on each.  Returns false (stopping early) if fn does.
bool for_each_tuple(const std::vector<int>& radix,
                    const std::function<bool(const std::vector<int>&)>& fn);

}  // namespace nabla
