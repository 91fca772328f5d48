#pragma once

// Deterministic reductions and a minimal fork-join helper.
//
// Sums are taken over fixed 1024-element blocks, each reduced by a fixed
// pairwise tree, and the block partials are reduced by the same tree. The
// shape depends only on the element count, so results are bit-identical for
// any thread count.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace phasegrover {

inline constexpr std::size_t kReductionBlock = 1024;

// Below this many elements the engine stays on the calling thread.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 15;

// Thread count used when a caller does not pass one: the value of
// PHASEGROVER_THREADS if set to a positive integer, otherwise 1.
unsigned default_thread_count();

// Runs body(begin, end) over a partition of [0, count) on up to `threads`
// threads. Chunk boundaries are multiples of `grain`.
void parallel_for(std::size_t count, unsigned threads, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body);

// Pairwise sum of values[0..n) with the fixed tree described above.
std::complex<double> pairwise_sum(std::span<const std::complex<double>> values);

// Same tree, where element i is values[indices[i]].
std::complex<double> pairwise_sum_gather(std::span<const std::complex<double>> values,
                                         std::span<const std::uint64_t> indices);

// Blocked sum; block partials computed on up to `threads` threads.
std::complex<double> deterministic_sum(std::span<const std::complex<double>> values,
                                       unsigned threads);

std::complex<double> deterministic_sum_gather(std::span<const std::complex<double>> values,
                                              std::span<const std::uint64_t> indices,
                                              unsigned threads);

} // namespace phasegrover
