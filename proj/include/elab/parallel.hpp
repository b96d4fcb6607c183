#pragma once

#include <atomic>
#include <cstdint>
#include <exception>

namespace elab {

enum class Exec { Serial, Parallel };

// Index-parallel map. Results are deterministic regardless of the schedule
// because each body invocation may write only to its own slot; the first
// exception wins and is rethrown after the loop joins.
template <typename Fn>
void for_each_index(std::uint64_t n, Exec exec, Fn&& body) {
  if (exec == Exec::Serial) {
    for (std::uint64_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::atomic<bool> failed{false};
  std::exception_ptr first;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      body(static_cast<std::uint64_t>(i));
    } catch (...) {
      if (!failed.exchange(true)) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace elab
