#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sjlt/plan.hpp"
#include "sjlt/randbits.hpp"
#include "sjlt/wht.hpp"

namespace sjlt::verify {

// Margin, in standard errors, granted to every Monte-Carlo comparison.
inline constexpr double kSigmaMargin = 4.0;

// Flatness threshold r0 under which the moment table holds: (n/k) alpha^2 <= r0.
inline constexpr double kFlatnessLimit = 0.1;

enum class CheckKind {
  upper,      // observed <= bound + 4 stderr
  two_sided,  // |observed - target| <= bound + 4 stderr
  exact,      // decided with exact (integer) arithmetic
};

struct CheckReport {
  std::string name;
  CheckKind kind = CheckKind::upper;
  double claimed_bound = 0.0;
  double target = 0.0;  // two-sided checks only
  double observed = 0.0;
  double std_err = 0.0;
  bool passed = false;
  std::uint64_t trials = 0;
  double elapsed = 0.0;  // seconds
};

// Sets `passed` from the other fields for upper and two-sided checks.
void settle(CheckReport& r);

// One JSON object: name, bound, observed, stderr, passed, trials, elapsed,
// plus kind and target.
std::string to_json_line(const CheckReport& r);

bool all_passed(const std::vector<CheckReport>& reports);

enum class VectorShape { spike_capped, flat, random_unit, two_block };

const char* to_string(VectorShape shape);
VectorShape parse_shape(const std::string& name);

// A unit test vector with ||v||_inf <= alpha. alpha <= 0 means 1/sqrt(n).
struct TestVectorSpec {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  double alpha = 0.0;
  VectorShape shape = VectorShape::flat;

  double effective_alpha() const;
  // (n/k) alpha^2
  double flatness() const;
};

// spike_capped puts floor(1/alpha^2) entries at +-alpha and spreads the rest
// evenly; random_unit water-fills a Gaussian direction under the cap;
// two_block gives the first half twice the magnitude of the second.
RealVector make_test_vector(const TestVectorSpec& spec, BitSource& src);

// Standard unit vectors used as embedding inputs: e_1, the flat vector and a
// random direction (no cap).
RealVector unit_spike(std::uint64_t n);
RealVector unit_flat(std::uint64_t n);
RealVector unit_random(std::uint64_t n, BitSource& src);

// One draw of W = sqrt(n/k) sum_j xi_j eps_j v_j with a k-subset xi.
std::vector<double> sample_w(const RealVector& v, std::uint64_t k, std::uint64_t trials,
                             const BitSource& src);

// Exceedance frequency of ||H D u||_inf >= sqrt(2e ln(2n/delta))/sqrt(n) over
// fresh l-wise sign diagonals, against delta. One report per shape (e_1, flat,
// random unit, two-block).
std::vector<CheckReport> check_linf_flattening(std::uint64_t n, double delta, std::uint64_t trials,
                                               const BitSource& src);

// Exhaustive over all k-subsets and all index sets A: E prod_{i in A} xi_i
// equals k(k-1)..(k-|A|+1) / n(n-1)..(n-|A|+1) and is at most (k/n)^|A|.
// One exact report per |A| = 0..n.
std::vector<CheckReport> check_negative_correlation(std::uint64_t n, std::uint64_t k);

// Tails of W against the sampling-without-replacement Bernstein bounds at each
// s of the grid: P(W >= s) <= exp(-s^2/(2 + (2/3) sqrt(n/k) alpha s)) and
// P(|W| >= s) <= twice that.
std::vector<CheckReport> check_sparse_bernstein(const TestVectorSpec& v,
                                                const std::vector<double>& s_grid,
                                                std::uint64_t trials, const BitSource& src);

// Even moments of W: E W^2 = 1 and E W^4..W^10 <= 3.1, 17, 127, 1283.
// Throws PreconditionError unless (n/k) alpha^2 <= 1/10.
std::vector<CheckReport> check_moment_table(const TestVectorSpec& v, std::uint64_t trials,
                                            const BitSource& src);

// |E|W| - sqrt(2/pi)| <= (3/2) alpha sqrt(n/k), and the Wasserstein distance of
// W to N(0,1) against 3 (k/n) sum_j (n/k)^{3/2} |v_j|^3.
std::vector<CheckReport> check_normal_approx(const TestVectorSpec& v, std::uint64_t trials,
                                             const BitSource& src);

// Deviation of Z2 = sum W_i^2 and Z1 = sum |W_i| over the plan's d rows, at
// t = c sqrt(d) for c in t_multipliers. Throws PreconditionError unless
// (n/k) alpha^2 <= 1/10.
std::vector<CheckReport> check_sum_deviation(const EmbeddingPlan& plan, const TestVectorSpec& v,
                                             std::uint64_t trials, const BitSource& src,
                                             const std::vector<double>& t_multipliers = {});

// Failure frequency of the distortion interval over `seeds` independent
// embeddings, per input vector, against 2 delta.
std::vector<CheckReport> check_end_to_end(const EmbeddingPlan& plan,
                                          const std::vector<RealVector>& us,
                                          const std::vector<std::string>& names,
                                          std::uint64_t seeds, const BitSource& src);

// Frequency with which some pairwise difference of the point set leaves the
// distortion interval, against the plan's failure probability p.
CheckReport check_pointset_end_to_end(const EmbeddingPlan& plan,
                                      const std::vector<RealVector>& points, std::uint64_t seeds,
                                      const BitSource& src);

}  // namespace sjlt::verify
