#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sjlt {

// Raised when an argument is outside the documented domain of an operation
// (non-power-of-2 length, eps outside (0,1), odd independence order, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a verification check is asked to run outside the regime its
// bound covers. This is a usage error, not a failed check.
class PreconditionError : public std::domain_error {
 public:
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

// Raised when an enumeration-based oracle would exceed its work budget.
class BudgetExceeded : public std::length_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::length_error(what) {}
};

namespace detail {

[[noreturn]] inline void fail_invalid(const std::string& what) { throw InvalidArgument(what); }

inline void require(bool condition, const std::string& what) {
  if (!condition) fail_invalid(what);
}

}  // namespace detail

inline constexpr bool is_pow2(std::uint64_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

inline constexpr unsigned log2_exact(std::uint64_t n) noexcept {
  unsigned r = 0;
  while (n > 1) {
    n >>= 1;
    ++r;
  }
  return r;
}

}  // namespace sjlt
