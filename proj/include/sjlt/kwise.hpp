#pragma once

#include <cstdint>
#include <vector>

#include "sjlt/randbits.hpp"

namespace sjlt {

enum class SignMode { kwise, full };

// Diagonal sign family beta_1..beta_n. In kwise mode any l of the signs are
// jointly uniform on {-1,+1}^l over the seed space; in full mode (l > n) all n
// signs are independent.
struct SignFamily {
  std::uint64_t n = 0;
  unsigned l = 0;
  SignMode mode = SignMode::kwise;
  std::vector<std::int8_t> signs;
  std::uint64_t seed_bits_used = 0;
};

// 2 * ceil(ln(n / delta)); delta must lie in (0, 1/2).
unsigned required_independence(std::uint64_t n, double delta);

// Seed length of the construction: (log2 n + 1) * l / 2 + 1 bits, or n bits
// when l > n.
std::uint64_t sign_seed_bits(std::uint64_t n, unsigned l);

// Draws the seed from `src` and expands it. The seed is read as one bit b0
// followed by l/2 field elements a_1..a_{l/2} of m = log2 n + 1 bits each.
// Column j is indexed by the field element x_j = j + 1 and
//   beta_j = (-1)^(b0 xor <a_1, x_j> xor <a_2, x_j^3> xor ... xor <a_{l/2}, x_j^(l-1)>)
// with <.,.> the GF(2) inner product of bit representations.
SignFamily build_sign_family(std::uint64_t n, unsigned l, BitSource& src);

struct KwiseEnumeration {
  std::uint64_t seeds = 0;          // size of the enumerated seed space
  std::uint64_t subsets = 0;        // coordinate subsets examined
  std::uint64_t min_count = 0;      // smallest pattern count over all subsets
  std::uint64_t max_count = 0;      // largest pattern count over all subsets
  bool uniform = false;             // min_count == max_count == seeds / 2^order
};

// Enumerates every seed of build_sign_family(n, l, .) and tallies the joint
// sign pattern on every subset of `order` coordinates (order defaults to l,
// capped at n). Throws BudgetExceeded when the seed space exceeds 2^24 or the
// total tally work is too large for a desk run.
KwiseEnumeration enumerate_kwise(std::uint64_t n, unsigned l, unsigned order = 0);

bool verify_kwise_exact(std::uint64_t n, unsigned l);

}  // namespace sjlt
