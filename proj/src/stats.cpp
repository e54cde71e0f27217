#include "sjlt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sjlt/error.hpp"

namespace sjlt::stats {

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  detail::require(p > 0.0 && p < 1.0, "normal_quantile: p must lie in (0, 1)");
  // Acklam's rational approximation (relative error about 1.15e-9).
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement.
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double draw_gaussian(BitSource& src) {
  // 1 - U lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - src.draw_unit_double();
  const double u2 = src.draw_unit_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

MeanEstimate mean_with_stderr(std::span<const double> xs) {
  MeanEstimate est;
  if (xs.empty()) return est;
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  est.mean = sum / n;
  if (xs.size() < 2) return est;
  double ss = 0.0;
  for (double x : xs) ss += (x - est.mean) * (x - est.mean);
  est.stderr_of_mean = std::sqrt(ss / (n - 1.0) / n);
  return est;
}

MeanEstimate frequency(std::uint64_t hits, std::uint64_t trials) {
  MeanEstimate est;
  if (trials == 0) return est;
  const double t = static_cast<double>(trials);
  est.mean = static_cast<double>(hits) / t;
  est.stderr_of_mean = std::sqrt(est.mean * (1.0 - est.mean) / t);
  return est;
}

double wasserstein_to_normal(std::span<const double> sorted) {
  const std::size_t count = sorted.size();
  if (count == 0) return 0.0;
  const double t = static_cast<double>(count);
  // G(u) = pdf(quantile(u)), with G(0) = G(1) = 0; the integral of the
  // quantile over [a, b] is G(a) - G(b).
  auto G = [](double u) { return (u <= 0.0 || u >= 1.0) ? 0.0 : normal_pdf(normal_quantile(u)); };
  double total = 0.0;
  double g_lo = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double a = static_cast<double>(i) / t;
    const double b = static_cast<double>(i + 1) / t;
    const double g_hi = G(b);
    const double w = sorted[i];
    const double cw = normal_cdf(w);
    double c;
    double g_c;
    if (cw <= a) {
      c = a;
      g_c = g_lo;
    } else if (cw >= b) {
      c = b;
      g_c = g_hi;
    } else {
      c = cw;
      g_c = normal_pdf(w);
    }
    total += w * (2.0 * c - a - b) - g_lo + 2.0 * g_c - g_hi;
    g_lo = g_hi;
  }
  return total;
}

double wasserstein_sampling_scale(std::span<const double> sorted) {
  const std::size_t count = sorted.size();
  if (count < 2) return 0.0;
  const double t = static_cast<double>(count);
  double integral = 0.0;
  for (std::size_t i = 1; i < count; ++i) {
    const double f = static_cast<double>(i) / t;
    integral += (sorted[i] - sorted[i - 1]) * std::sqrt(f * (1.0 - f));
  }
  return integral / std::sqrt(t);
}

}  // namespace sjlt::stats
