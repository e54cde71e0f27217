#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sjlt/randbits.hpp"

namespace sjlt::stats {

double normal_pdf(double x);
double normal_cdf(double x);
// Inverse of normal_cdf on (0, 1): rational initial guess refined by one
// Halley step, absolute error well below 1e-12 away from the extreme tails.
double normal_quantile(double p);

// Standard normal variate from 106 bits (Box-Muller, cosine branch).
double draw_gaussian(BitSource& src);

struct MeanEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};

MeanEstimate mean_with_stderr(std::span<const double> xs);

// Frequency of `hits` out of `trials` with its binomial standard error.
MeanEstimate frequency(std::uint64_t hits, std::uint64_t trials);

// L1 distance between the quantile functions of the empirical distribution of
// `sorted` (ascending) and N(0,1), which equals their Wasserstein-1 distance.
// Each order statistic is integrated exactly against the normal quantile over
// its probability cell.
double wasserstein_to_normal(std::span<const double> sorted);

// (1/sqrt(T)) * integral of sqrt(F_T (1 - F_T)) dx for the empirical CDF F_T;
// an estimate of the expected Wasserstein-1 sampling error of T draws.
double wasserstein_sampling_scale(std::span<const double> sorted);

}  // namespace sjlt::stats
