#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace condense {

// Every data-parallel kernel in the library takes one of these. The serial
// path is the reference implementation; tests pin both to identical output.
enum class Exec { serial, parallel };

// Runs body(i) for i in [0, count). Results must be written to per-index
// slots so the outcome does not depend on scheduling. The first exception
// thrown by any iteration is rethrown on the calling thread.
template <class Body>
void for_each_index(std::size_t count, Exec exec, Body&& body) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace condense
