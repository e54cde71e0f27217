#include "sjlt/rowsampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "sjlt/error.hpp"

namespace sjlt {
namespace {

void check_subset_args(std::uint64_t n, std::uint64_t k) {
  detail::require(is_pow2(n), "subset sampler: n must be a power of 2, got " + std::to_string(n));
  detail::require(n <= (std::uint64_t{1} << 32), "subset sampler: n must be at most 2^32");
  detail::require(k >= 1 && k <= n, "subset sampler: k must lie in [1, n], got " + std::to_string(k));
}

// The rejection loop proper. Leaves the chosen bits set in `bitset`.
std::uint64_t run_loop(std::uint64_t n, std::uint64_t k, BitSource& src,
                       std::vector<std::uint64_t>& bitset, std::vector<std::uint32_t>& indices) {
  const unsigned width = log2_exact(n);
  bitset.resize(static_cast<std::size_t>((n + 63) / 64));
  indices.clear();
  indices.reserve(k);
  std::uint64_t iterations = 0;
  while (indices.size() < k) {
    const std::uint64_t j = src.draw_uint(width);
    ++iterations;
    std::uint64_t& word = bitset[j >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (j & 63);
    if ((word & mask) == 0) {
      word |= mask;
      indices.push_back(static_cast<std::uint32_t>(j));
    }
  }
  return iterations;
}

}  // namespace

std::uint64_t sample_subset_into(std::uint64_t n, std::uint64_t k, BitSource& src,
                                 std::vector<std::uint64_t>& bitset,
                                 std::vector<std::uint32_t>& indices) {
  check_subset_args(n, k);
  const std::uint64_t iterations = run_loop(n, k, src, bitset, indices);
  for (auto j : indices) bitset[j >> 6] = 0;
  return iterations;
}

RowPattern sample_subset(std::uint64_t n, std::uint64_t k, BitSource& src) {
  check_subset_args(n, k);
  RowPattern row;
  row.n = n;
  row.k = k;
  std::vector<std::uint64_t> bitset;
  const std::uint64_t before = src.bits_consumed();
  row.iterations = run_loop(n, k, src, bitset, row.indices);
  row.bits_used = src.bits_consumed() - before;
  if (bitset.size() <= 16 * k) {
    // Dense enough that reading the bitset in order beats sorting.
    row.indices.clear();
    for (std::size_t w = 0; w < bitset.size(); ++w) {
      for (std::uint64_t word = bitset[w]; word != 0; word &= word - 1) {
        row.indices.push_back(static_cast<std::uint32_t>(64 * w + std::countr_zero(word)));
      }
    }
  } else {
    std::sort(row.indices.begin(), row.indices.end());
  }
  return row;
}

double expected_iterations_exact(std::uint64_t n, std::uint64_t k) {
  detail::require(k >= 1 && k <= n, "expected_iterations_exact: k must lie in [1, n]");
  double sum = 0.0;
  const double nn = static_cast<double>(n);
  for (std::uint64_t j = 0; j < k; ++j) sum += nn / (nn - static_cast<double>(j));
  return sum;
}

double variance_iterations_exact(std::uint64_t n, std::uint64_t k) {
  detail::require(k >= 1 && k <= n, "variance_iterations_exact: k must lie in [1, n]");
  double sum = 0.0;
  const double nn = static_cast<double>(n);
  for (std::uint64_t j = 0; j < k; ++j) {
    const double p = (nn - static_cast<double>(j)) / nn;
    sum += (1.0 - p) / (p * p);
  }
  return sum;
}

IterationStats iteration_stats(std::uint64_t n, std::uint64_t k, std::uint64_t trials,
                               BitSource& src) {
  detail::require(trials >= 2, "iteration_stats: need at least 2 trials");
  check_subset_args(n, k);
  std::vector<double> samples(trials);
  std::vector<std::uint64_t> bitset;
  std::vector<std::uint32_t> indices;
  for (auto& t : samples) t = static_cast<double>(sample_subset_into(n, k, src, bitset, indices));

  const double count = static_cast<double>(trials);
  double mean = 0.0;
  for (double t : samples) mean += t;
  mean /= count;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double t : samples) {
    const double c = (t - mean) * (t - mean);
    m2 += c;
    m4 += c * c;
  }
  IterationStats st;
  st.trials = trials;
  st.mean = mean;
  st.variance = m2 / (count - 1.0);
  st.mean_stderr = std::sqrt(st.variance / count);
  const double mu2 = m2 / count;
  const double mu4 = m4 / count;
  st.variance_stderr = std::sqrt(std::max(0.0, mu4 - mu2 * mu2) / count);
  return st;
}

}  // namespace sjlt
