#pragma once

#include <cstdint>
#include <vector>

#include "sjlt/randbits.hpp"

namespace sjlt {

// Support of one row of the sparse matrix: a uniformly random k-subset of
// {0, ..., n-1} plus the loop statistics of the rejection sampler.
struct RowPattern {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::vector<std::uint32_t> indices;  // sorted, distinct
  std::uint64_t iterations = 0;        // T_i: number of index draws
  std::uint64_t bits_used = 0;         // iterations * log2 n
};

// Rejection loop: draw a uniform index from log2 n bits, keep it if it is new,
// until k distinct indices have been collected. n must be a power of 2 and
// 1 <= k <= n.
RowPattern sample_subset(std::uint64_t n, std::uint64_t k, BitSource& src);

// Same loop, reusing a caller-owned membership bitset of n bits (left cleared
// on return). `indices` receives the subset in draw order, unsorted.
std::uint64_t sample_subset_into(std::uint64_t n, std::uint64_t k, BitSource& src,
                                 std::vector<std::uint64_t>& bitset,
                                 std::vector<std::uint32_t>& indices);

// E[T] = sum_{j<k} n/(n-j), a sum of geometric means.
double expected_iterations_exact(std::uint64_t n, std::uint64_t k);

// Var[T] = sum_{j<k} (1-p_j)/p_j^2 with p_j = (n-j)/n.
double variance_iterations_exact(std::uint64_t n, std::uint64_t k);

struct IterationStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  std::uint64_t trials = 0;
  // Standard errors of the mean and of the sample variance (the latter from
  // the fourth central moment).
  double mean_stderr = 0.0;
  double variance_stderr = 0.0;
};

// Empirical loop-length statistics over `trials` independent rows.
IterationStats iteration_stats(std::uint64_t n, std::uint64_t k, std::uint64_t trials,
                               BitSource& src);

}  // namespace sjlt
