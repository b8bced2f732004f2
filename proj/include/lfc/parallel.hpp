#pragma once

#include <exception>
#include <mutex>

namespace lfc {

/// Runs body(i) for i in [0, n), on OpenMP threads when `parallel` is set.
/// The exception of the lowest failing index is rethrown afterwards.
template <class Body> void parallel_for(int n, bool parallel, Body &&body) {
  if (!parallel) {
    for (int i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::exception_ptr err;
  int err_index = n;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (i < err_index) {
        err_index = i;
        err = std::current_exception();
      }
    }
  }
  if (err)
    std::rethrow_exception(err);
}

} // namespace lfc
