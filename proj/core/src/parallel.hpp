#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace v2im::detail {

// Calls fn(i) for i in [first, last), spreading the indices over at most
// `jobs` threads. The first exception (by index) is rethrown.
template <class Fn>
void run_indexed(std::size_t first, std::size_t last, unsigned jobs, Fn&& fn) {
  if (last <= first) return;
  const std::size_t count = last - first;
  const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), count);
  if (workers == 1) {
    for (std::size_t i = first; i < last; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = first + w; i < last; i += workers) {
          try {
            fn(i);
          } catch (...) {
            errors[i - first] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace v2im::detail
