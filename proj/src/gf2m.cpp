#include "sjlt/gf2m.hpp"

#include <array>
#include <string>

#include "sjlt/error.hpp"

namespace sjlt {
namespace {

// Low-weight primitive polynomials, index = degree.
constexpr std::array<std::uint64_t, 33> kModuli = {
    0x0,          // unused
    0x3,          // x + 1
    0x7,          // x^2 + x + 1
    0xB,          // x^3 + x + 1
    0x13,         // x^4 + x + 1
    0x25,         // x^5 + x^2 + 1
    0x43,         // x^6 + x + 1
    0x83,         // x^7 + x + 1
    0x11D,        // x^8 + x^4 + x^3 + x^2 + 1
    0x211,        // x^9 + x^4 + 1
    0x409,        // x^10 + x^3 + 1
    0x805,        // x^11 + x^2 + 1
    0x1053,       // x^12 + x^6 + x^4 + x + 1
    0x201B,       // x^13 + x^4 + x^3 + x + 1
    0x4443,       // x^14 + x^10 + x^6 + x + 1
    0x8003,       // x^15 + x + 1
    0x1100B,      // x^16 + x^12 + x^3 + x + 1
    0x20009,      // x^17 + x^3 + 1
    0x40081,      // x^18 + x^7 + 1
    0x80027,      // x^19 + x^5 + x^2 + x + 1
    0x100009,     // x^20 + x^3 + 1
    0x200005,     // x^21 + x^2 + 1
    0x400003,     // x^22 + x + 1
    0x800021,     // x^23 + x^5 + 1
    0x1000087,    // x^24 + x^7 + x^2 + x + 1
    0x2000009,    // x^25 + x^3 + 1
    0x4000047,    // x^26 + x^6 + x^2 + x + 1
    0x8000027,    // x^27 + x^5 + x^2 + x + 1
    0x10000009,   // x^28 + x^3 + 1
    0x20000005,   // x^29 + x^2 + 1
    0x40800007,   // x^30 + x^23 + x^2 + x + 1
    0x80000009,   // x^31 + x^3 + 1
    0x100400007,  // x^32 + x^22 + x^2 + x + 1
};

}  // namespace

std::uint64_t GF2m::modulus_for(unsigned m) {
  detail::require(m >= 1 && m <= kMaxDegree,
                  "GF(2^m): degree must be in [1, 32], got " + std::to_string(m));
  return kModuli[m];
}

GF2m::GF2m(unsigned m) : m_(m), poly_(modulus_for(m)), mask_((std::uint64_t{1} << m) - 1) {}

std::uint64_t GF2m::mul(std::uint64_t a, std::uint64_t b) const noexcept {
  // Shift-and-add with interleaved reduction; a stays below 2^m.
  const std::uint64_t top = std::uint64_t{1} << (m_ - 1);
  std::uint64_t r = 0;
  a &= mask_;
  b &= mask_;
  while (b != 0) {
    if (b & 1) r ^= a;
    b >>= 1;
    const bool carry = (a & top) != 0;
    a = (a << 1) & mask_;
    if (carry) a ^= poly_ & mask_;
  }
  return r;
}

GF2m::FixedMultiplier::FixedMultiplier(const GF2m& field, std::uint64_t b) noexcept
    : m_(field.m_), mask_(field.mask_) {
  b &= mask_;
  table_[0] = 0;
  for (unsigned v = 1; v < 16; ++v) table_[v] = (table_[v >> 1] << 1) ^ ((v & 1) ? b : 0);
  const std::uint64_t low = field.poly_ & mask_;
  for (unsigned s = 0; s < m_; ++s) {
    if ((low >> s) & 1) tap_[taps_++] = s;
  }
}

std::uint64_t GF2m::pow(std::uint64_t a, std::uint64_t e) const noexcept {
  std::uint64_t result = 1;
  std::uint64_t base = a & mask_;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint64_t GF2m::inv(std::uint64_t a) const {
  detail::require((a & mask_) != 0, "GF(2^m): zero has no inverse");
  return pow(a, order() - 2);
}

}  // namespace sjlt
