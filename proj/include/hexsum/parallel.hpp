#pragma once

// Deterministic reductions and a minimal data-parallel loop.
//
// Results never depend on the number of worker threads: parallel_for only
// writes to disjoint slots, and every reduction goes through pairwise_sum,
// whose tree shape is a function of the input length alone.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace hexsum {

inline constexpr std::size_t kPairwiseBlock = 1024;

/// Pairwise (tree) summation; sequential below kPairwiseBlock elements.
double pairwise_sum(std::span<const double> values) noexcept;
std::complex<double> pairwise_sum(std::span<const std::complex<double>> values) noexcept;

/// Number of workers used by parallel_for. 0 (default) means hardware concurrency.
void set_worker_count(unsigned count) noexcept;
unsigned worker_count() noexcept;

/// Calls body(i) for every i in [0, n), split into contiguous chunks.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hexsum
