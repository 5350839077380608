#pragma once

#include <cstddef>
#include <functional>

namespace corrtherm {

/// Worker count: CORRTHERM_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. If any call
/// throws, the exception of the smallest failing index is rethrown after all
/// workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace corrtherm
