#pragma once

#include <cstdint>

namespace sjlt {

// Arithmetic in GF(2^m), 1 <= m <= 32, elements stored as the low m bits of a
// 64-bit word (bit i is the coefficient of x^i). The modulus is a fixed
// primitive polynomial per degree, so results are reproducible everywhere.
class GF2m {
 public:
  static constexpr unsigned kMaxDegree = 32;

  explicit GF2m(unsigned m);

  unsigned degree() const noexcept { return m_; }
  // Modulus including the x^m term.
  std::uint64_t modulus() const noexcept { return poly_; }
  std::uint64_t order() const noexcept { return std::uint64_t{1} << m_; }

  static std::uint64_t modulus_for(unsigned m);

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept { return a ^ b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
  // Multiplicative inverse of a nonzero element (a^(2^m - 2)).
  std::uint64_t inv(std::uint64_t a) const;

  // Multiplication by one fixed element via a 4-bit window table. Several
  // times faster than mul() once the factor is reused a few times.
  class FixedMultiplier {
   public:
    FixedMultiplier(const GF2m& field, std::uint64_t b) noexcept;
    std::uint64_t operator()(std::uint64_t a) const noexcept {
      std::uint64_t r = 0;
      for (unsigned i = 0; i < m_; i += 4) r ^= table_[(a >> i) & 15] << i;
      // Fold the high part back with x^m = g(x).
      for (std::uint64_t hi = r >> m_; hi != 0; hi = r >> m_) {
        r &= mask_;
        for (unsigned t = 0; t < taps_; ++t) r ^= hi << tap_[t];
      }
      return r;
    }

   private:
    unsigned m_;
    std::uint64_t mask_;
    std::uint64_t table_[16];
    unsigned taps_ = 0;
    unsigned tap_[32];
  };

 private:
  unsigned m_;
  std::uint64_t poly_;
  std::uint64_t mask_;
};

}  // namespace sjlt
