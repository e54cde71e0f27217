#include "sjlt/wht.hpp"

#include <cmath>
#include <string>

#include "sjlt/error.hpp"
#include "sjlt/parallel.hpp"

namespace sjlt {

void wht_inplace(std::span<double> x, std::uint64_t* additions) {
  const std::size_t n = x.size();
  detail::require(is_pow2(n), "wht: length must be a power of 2, got " + std::to_string(n));
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      double* lo = x.data() + i;
      double* hi = lo + h;
      for (std::size_t j = 0; j < h; ++j) {
        const double a = lo[j];
        const double b = hi[j];
        lo[j] = (a + b) * r;
        hi[j] = (a - b) * r;
      }
    }
    if (additions != nullptr) *additions += n;
  }
}

RealVector wht_apply(RealVector x) {
  wht_inplace(x);
  return x;
}

std::vector<RealVector> wht_apply_batch(std::vector<RealVector> xs) {
  if (xs.empty()) return xs;
  const std::size_t n = xs.front().size();
  for (const auto& x : xs) detail::require(x.size() == n, "wht batch: mixed vector lengths");
  parallel_for(xs.size(), [&](std::size_t i) { wht_inplace(xs[i]); });
  return xs;
}

}  // namespace sjlt
