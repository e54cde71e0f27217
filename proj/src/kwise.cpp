#include "sjlt/kwise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "sjlt/error.hpp"
#include "sjlt/gf2m.hpp"

namespace sjlt {
namespace {

constexpr unsigned kMaxEnumerationBits = 24;
constexpr double kMaxTallyWork = 4.0e9;

void check_family_args(std::uint64_t n, unsigned l) {
  detail::require(is_pow2(n), "sign family: n must be a power of 2, got " + std::to_string(n));
  detail::require(l >= 2 && l % 2 == 0,
                  "sign family: l must be even and at least 2, got " + std::to_string(l));
}

double binomial(std::uint64_t n, unsigned r) {
  double c = 1.0;
  for (unsigned i = 0; i < r; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c;
}

}  // namespace

unsigned required_independence(std::uint64_t n, double delta) {
  detail::require(n >= 1, "required_independence: n must be positive");
  detail::require(delta > 0.0 && delta < 0.5, "required_independence: delta must lie in (0, 1/2)");
  return 2 * static_cast<unsigned>(std::ceil(std::log(static_cast<double>(n) / delta)));
}

std::uint64_t sign_seed_bits(std::uint64_t n, unsigned l) {
  check_family_args(n, l);
  if (l > n) return n;
  return (std::uint64_t{log2_exact(n)} + 1) * (l / 2) + 1;
}

SignFamily build_sign_family(std::uint64_t n, unsigned l, BitSource& src) {
  check_family_args(n, l);
  SignFamily fam;
  fam.n = n;
  fam.l = l;
  fam.signs.resize(n);
  const std::uint64_t before = src.bits_consumed();

  if (l > n) {
    fam.mode = SignMode::full;
    for (auto& s : fam.signs) s = src.next_bit() ? -1 : 1;
    fam.seed_bits_used = src.bits_consumed() - before;
    return fam;
  }

  fam.mode = SignMode::kwise;
  const unsigned m = log2_exact(n) + 1;
  if (m > GF2m::kMaxDegree) detail::fail_invalid("sign family: n too large for GF(2^32) indexing");
  const GF2m field(m);
  const unsigned half = l / 2;

  const bool b0 = src.next_bit();
  std::vector<std::uint64_t> coeffs(half);
  for (auto& a : coeffs) a = src.draw_uint(m);

  for (std::uint64_t j = 0; j < n; ++j) {
    const std::uint64_t x = j + 1;
    const GF2m::FixedMultiplier times_x2(field, field.mul(x, x));
    std::uint64_t power = x;  // x^(2t-1)
    std::uint64_t acc = 0;
    for (unsigned t = 0; t < half; ++t) {
      acc ^= coeffs[t] & power;
      power = times_x2(power);
    }
    const bool bit = b0 ^ (std::popcount(acc) & 1);
    fam.signs[j] = bit ? -1 : 1;
  }
  fam.seed_bits_used = src.bits_consumed() - before;
  return fam;
}

KwiseEnumeration enumerate_kwise(std::uint64_t n, unsigned l, unsigned order) {
  check_family_args(n, l);
  if (order == 0) order = l;
  order = static_cast<unsigned>(std::min<std::uint64_t>(order, n));
  const std::uint64_t seed_bits = sign_seed_bits(n, l);
  if (seed_bits > kMaxEnumerationBits) {
    throw BudgetExceeded("kwise enumeration: seed space of 2^" + std::to_string(seed_bits) +
                         " exceeds 2^24");
  }
  const std::uint64_t seeds = std::uint64_t{1} << seed_bits;
  const double work = binomial(n, order) * static_cast<double>(seeds) * order;
  if (work > kMaxTallyWork) throw BudgetExceeded("kwise enumeration: tally work too large");

  // Sign bits per seed, packed 64 coordinates per word (1 = negative sign).
  const std::size_t words = static_cast<std::size_t>((n + 63) / 64);
  std::vector<std::uint64_t> table(static_cast<std::size_t>(seeds) * words, 0);
  std::vector<std::uint8_t> seed(seed_bits);
  for (std::uint64_t s = 0; s < seeds; ++s) {
    for (std::uint64_t b = 0; b < seed_bits; ++b) seed[b] = (s >> (seed_bits - 1 - b)) & 1;
    BitSource src = BitSource::replay(seed);
    const SignFamily fam = build_sign_family(n, l, src);
    std::uint64_t* row = &table[static_cast<std::size_t>(s) * words];
    for (std::uint64_t j = 0; j < n; ++j) {
      if (fam.signs[j] < 0) row[j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }

  KwiseEnumeration out;
  out.seeds = seeds;
  out.min_count = std::numeric_limits<std::uint64_t>::max();
  const std::size_t patterns = std::size_t{1} << order;
  std::vector<std::uint64_t> counts(patterns);
  std::vector<std::uint64_t> subset(order);
  for (unsigned i = 0; i < order; ++i) subset[i] = i;

  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint64_t s = 0; s < seeds; ++s) {
      const std::uint64_t* row = &table[static_cast<std::size_t>(s) * words];
      std::size_t pattern = 0;
      for (unsigned i = 0; i < order; ++i) {
        pattern = (pattern << 1) | ((row[subset[i] / 64] >> (subset[i] % 64)) & 1);
      }
      ++counts[pattern];
    }
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    out.min_count = std::min(out.min_count, *lo);
    out.max_count = std::max(out.max_count, *hi);
    ++out.subsets;

    // Next combination in lexicographic order.
    int i = static_cast<int>(order) - 1;
    while (i >= 0 && subset[i] == n - order + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (unsigned j = i + 1; j < order; ++j) subset[j] = subset[j - 1] + 1;
  }

  out.uniform = out.min_count == out.max_count && out.max_count * patterns == seeds;
  return out;
}

bool verify_kwise_exact(std::uint64_t n, unsigned l) { return enumerate_kwise(n, l).uniform; }

}  // namespace sjlt
