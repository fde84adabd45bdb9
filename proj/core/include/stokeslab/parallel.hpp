#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace stokeslab {

/// Worker count used by every parallel map in the library (default 1).
void set_thread_count(int threads);
[[nodiscard]] int thread_count() noexcept;

/// Calls body(begin, end) on contiguous chunks of [0, count).
///
/// Chunks are disjoint, so bodies that only write their own index range are
/// race-free. Results never depend on the worker count as long as the body
/// does not reduce across chunks.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

/// Sum of values in a fixed pairwise-tree order, independent of how the
/// values were produced.
[[nodiscard]] double pairwise_sum(std::span<const double> values) noexcept;

}  // namespace stokeslab
