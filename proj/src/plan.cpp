#include "sjlt/plan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sjlt/error.hpp"
#include "sjlt/kwise.hpp"
#include "sjlt/rowsampler.hpp"

namespace sjlt {
namespace {

using std::numbers::e;
using std::numbers::pi;

// Constants of the two l2 bounds:
//   d >= d_coef (1+2eps)^2/eps^2 ln(3/delta)
//   k >= max(k_coef ln(6d/delta), k_floor) ln(2n/delta)
struct L2Constants {
  double d_coef;
  double k_coef;
  double k_floor;
};

// Constants of the two l1 bounds:
//   d >= (d_base + d_slope kappa eps)/(kappa^2 eps^2) ln(2/delta)
//   k >= max(k_coef/(gap(kappa) eps^2), k_floor) ln(2n/delta)
struct L1Constants {
  double d_base;
  double d_slope;
  double k_coef;
  double k_floor;
  L1KappaForm form;
};

constexpr L2Constants kL2Theorem{1.55, 8.0 * e / 3.0, 20.0 * e};
constexpr L2Constants kL2Rounded{1.55, 7.25, 55.0};

L1Constants l1_theorem(L1KappaForm form) {
  return {pi, std::sqrt(pi / 2.0) * 8.0 / 3.0, 9.0 * pi * e / 4.0, 20.0 * e, form};
}
L1Constants l1_rounded(L1KappaForm form) { return {3.15, 3.4, 19.3, 55.0, form}; }

void check_common(std::uint64_t n, double eps, double delta) {
  detail::require(is_pow2(n), "plan: n must be a power of 2 (pad the input first)");
  detail::require(eps > 0.0 && eps < 1.0, "plan: eps must lie in (0, 1)");
  detail::require(delta > 0.0 && delta < 0.5, "plan: delta must lie in (0, 1/2)");
}

std::uint64_t ceil_u64(double x) { return static_cast<std::uint64_t>(std::ceil(x)); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

bool sparse_ok(std::uint64_t k, std::uint64_t n) { return 3 * k <= n; }

void choose_l2_mode(EmbeddingPlan& plan, const PlanOptions& opts) {
  if (sparse_ok(plan.k, plan.n)) {
    plan.mode = EmbeddingMode::sparse;
    plan.provenance.push_back("mode sparse: k <= n/3");
  } else if (opts.force_sparse && plan.k <= plan.n) {
    plan.mode = EmbeddingMode::sparse;
    plan.provenance.push_back("mode sparse (forced): n/3 < k <= n");
  } else {
    plan.mode = EmbeddingMode::achlioptas_fallback;
    plan.provenance.push_back("mode achlioptas_fallback: k > n/3, dense {+1,0,-1} matrix with "
                              "probabilities {1/6,2/3,1/6} and the same d");
  }
}

void fill_l2(EmbeddingPlan& plan, const L2Constants& c, double log_d_arg_over_delta) {
  const double eps = plan.eps;
  const double delta = plan.delta;
  plan.d_bound = c.d_coef * (1.0 + 2.0 * eps) * (1.0 + 2.0 * eps) / (eps * eps) *
                 std::log(log_d_arg_over_delta);
  plan.d = std::max<std::uint64_t>(1, ceil_u64(plan.d_bound));
  const double dd = static_cast<double>(plan.d);
  plan.k_bound = std::max(c.k_coef * std::log(6.0 * dd / delta), c.k_floor) *
                 std::log(2.0 * static_cast<double>(plan.n) / delta);
  plan.k = ceil_u64(plan.k_bound);
  plan.provenance.push_back("d = ceil(" + fmt(c.d_coef) + " (1+2eps)^2/eps^2 ln(3/delta)) = " +
                            std::to_string(plan.d));
  plan.provenance.push_back("k = ceil(max(" + fmt(c.k_coef) + " ln(6d/delta), " + fmt(c.k_floor) +
                            ") ln(2n/delta)) = " + std::to_string(plan.k));
}

double l1_d_bound(const L1Constants& c, double kappa, double eps, double delta) {
  return (c.d_base + c.d_slope * kappa * eps) / (kappa * kappa * eps * eps) * std::log(2.0 / delta);
}

double l1_k_bound(const L1Constants& c, double kappa, double eps, double delta, std::uint64_t n) {
  const double gap = c.form == L1KappaForm::squared_gap ? (1.0 - kappa) * (1.0 - kappa)
                                                        : 1.0 - kappa * kappa;
  return std::max(c.k_coef / (gap * eps * eps), c.k_floor) *
         std::log(2.0 * static_cast<double>(n) / delta);
}

void fill_l1(EmbeddingPlan& plan, const L1Constants& c, const PlanOptions& opts) {
  const double eps = plan.eps;
  const double delta = plan.delta;
  const std::uint64_t n = plan.n;
  auto set_kappa = [&](double kappa) {
    plan.kappa = kappa;
    plan.d_bound = l1_d_bound(c, kappa, eps, delta);
    plan.d = std::max<std::uint64_t>(1, ceil_u64(plan.d_bound));
    plan.k_bound = l1_k_bound(c, kappa, eps, delta, n);
    plan.k = ceil_u64(plan.k_bound);
  };
  set_kappa(plan.kappa);
  plan.provenance.push_back("kappa = " + fmt(plan.kappa));
  plan.provenance.push_back("d = ceil((" + fmt(c.d_base) + " + " + fmt(c.d_slope) +
                            " kappa eps)/(kappa^2 eps^2) ln(2/delta)) = " + std::to_string(plan.d));
  plan.provenance.push_back(
      std::string("k = ceil(max(") + fmt(c.k_coef) +
      (c.form == L1KappaForm::squared_gap ? "/((1-kappa)^2 eps^2), " : "/((1-kappa^2) eps^2), ") +
      fmt(c.k_floor) + ") ln(2n/delta)) = " + std::to_string(plan.k));

  if (sparse_ok(plan.k, n)) {
    plan.mode = EmbeddingMode::sparse;
    plan.provenance.push_back("mode sparse: k <= n/3");
    return;
  }
  if (plan.k <= n && opts.force_sparse) {
    plan.mode = EmbeddingMode::sparse;
    plan.provenance.push_back("mode sparse (forced): n/3 < k <= n");
    return;
  }
  if (plan.k <= n) {
    plan.mode = EmbeddingMode::dense_l1;
    plan.provenance.push_back("mode dense_l1: n/3 < k <= n, taking k = n (independent signs)");
    plan.k = n;
    return;
  }
  // k > n at this kappa. As kappa -> 0 the k-bound decreases to
  // max(k_coef/eps^2, k_floor) ln(2n/delta); if even that exceeds n no kappa works.
  const double log_term = std::log(2.0 * static_cast<double>(n) / delta);
  const double k_inf = std::max(c.k_coef / (eps * eps), c.k_floor) * log_term;
  if (ceil_u64(k_inf) > n) {
    plan.mode = EmbeddingMode::no_reduction;
    plan.provenance.push_back("mode no_reduction: k > n for every kappa in (0,1); the dimension "
                              "reduction would be at most proportional");
    return;
  }
  // Largest kappa whose k-bound fits in n.
  const double ratio = c.k_coef * log_term / (eps * eps * static_cast<double>(n));
  double kappa = c.form == L1KappaForm::squared_gap ? 1.0 - std::sqrt(ratio) : std::sqrt(1.0 - ratio);
  while (kappa > 0.0 && ceil_u64(l1_k_bound(c, kappa, eps, delta, n)) > n) kappa *= 1.0 - 1e-12;
  set_kappa(kappa);
  plan.k = n;
  if (plan.d >= n) {
    plan.mode = EmbeddingMode::no_reduction;
    plan.provenance.push_back("mode no_reduction: the largest feasible kappa = " + fmt(kappa) +
                              " gives d = " + std::to_string(plan.d) + " >= n");
    return;
  }
  plan.mode = EmbeddingMode::dense_l1;
  plan.provenance.push_back("mode dense_l1: k > n at the requested kappa; kappa lowered to " +
                            fmt(kappa) + " so the k-bound fits, d = " + std::to_string(plan.d) +
                            ", k = n");
}

}  // namespace

const char* to_string(EmbeddingMode mode) {
  switch (mode) {
    case EmbeddingMode::sparse: return "sparse";
    case EmbeddingMode::achlioptas_fallback: return "achlioptas_fallback";
    case EmbeddingMode::dense_l1: return "dense_l1";
    case EmbeddingMode::no_reduction: return "no_reduction";
  }
  return "unknown";
}

EmbeddingPlan plan_l2(std::uint64_t n, double eps, double delta, const PlanOptions& opts) {
  check_common(n, eps, delta);
  EmbeddingPlan plan;
  plan.n = n;
  plan.q = 2;
  plan.eps = eps;
  plan.delta = delta;
  plan.l = required_independence(n, delta);
  fill_l2(plan, kL2Theorem, 3.0 / delta);
  choose_l2_mode(plan, opts);
  plan.provenance.push_back("l = 2 ceil(ln(n/delta)) = " + std::to_string(plan.l));
  return plan;
}

EmbeddingPlan plan_l1(std::uint64_t n, double eps, double delta, double kappa,
                      const PlanOptions& opts) {
  check_common(n, eps, delta);
  detail::require(kappa > 0.0 && kappa < 1.0, "plan: kappa must lie in (0, 1)");
  EmbeddingPlan plan;
  plan.n = n;
  plan.q = 1;
  plan.eps = eps;
  plan.delta = delta;
  plan.kappa = kappa;
  plan.l = required_independence(n, delta);
  fill_l1(plan, l1_theorem(opts.l1_kappa_form), opts);
  plan.provenance.push_back("l = 2 ceil(ln(n/delta)) = " + std::to_string(plan.l));
  return plan;
}

EmbeddingPlan plan_for_pointset(std::uint64_t n, std::uint64_t points, double eps, double fail_prob,
                                unsigned q, double kappa, const PlanOptions& opts) {
  detail::require(points >= 2, "plan: the point set needs at least 2 points");
  detail::require(fail_prob > 0.0 && fail_prob < 1.0, "plan: failure probability must lie in (0, 1)");
  detail::require(q == 1 || q == 2, "plan: q must be 1 or 2");
  const double nn = static_cast<double>(points);
  const double delta = fail_prob / (nn * nn);
  check_common(n, eps, delta);

  EmbeddingPlan plan;
  plan.n = n;
  plan.q = q;
  plan.eps = eps;
  plan.delta = delta;
  plan.points = points;
  plan.fail_prob = fail_prob;
  plan.l = required_independence(n, delta);
  plan.provenance.push_back("point set: N = " + std::to_string(points) + ", p = " + fmt(fail_prob) +
                            "; delta = p/N^2 = " + fmt(delta) +
                            " so the union bound over C(N,2) difference vectors fails with "
                            "probability at most C(N,2) 2 delta < p");
  if (q == 2) {
    fill_l2(plan, kL2Rounded, 3.0 / delta);
    choose_l2_mode(plan, opts);
  } else {
    detail::require(kappa > 0.0 && kappa < 1.0, "plan: kappa must lie in (0, 1)");
    plan.kappa = kappa;
    fill_l1(plan, l1_rounded(opts.l1_kappa_form), opts);
  }
  plan.provenance.push_back("l = 2 ceil(ln(n N^2/p)) = " + std::to_string(plan.l));
  return plan;
}

EmbeddingPlan make_manual_plan(std::uint64_t n, std::uint64_t d, std::uint64_t k, unsigned q,
                               double delta) {
  detail::require(is_pow2(n), "plan: n must be a power of 2");
  detail::require(d >= 1, "plan: d must be positive");
  detail::require(k >= 1 && k <= n, "plan: k must lie in [1, n]");
  detail::require(q == 1 || q == 2, "plan: q must be 1 or 2");
  EmbeddingPlan plan;
  plan.n = n;
  plan.d = d;
  plan.k = k;
  plan.q = q;
  plan.delta = delta;
  plan.l = required_independence(n, delta);
  plan.mode = EmbeddingMode::sparse;
  plan.d_bound = static_cast<double>(d);
  plan.k_bound = static_cast<double>(k);
  plan.provenance.push_back("manual: d and k chosen by the caller");
  return plan;
}

BitEstimate estimate_bits(const EmbeddingPlan& plan) {
  BitEstimate est;
  const double d = static_cast<double>(plan.d);
  const double n = static_cast<double>(plan.n);
  const double k = static_cast<double>(plan.k);
  const double log2n = static_cast<double>(log2_exact(plan.n));
  switch (plan.mode) {
    case EmbeddingMode::sparse:
      est.signs = static_cast<double>(sign_seed_bits(plan.n, plan.l));
      est.rows = d * k + d * expected_iterations_exact(plan.n, plan.k) * log2n;
      est.rows_rough = d * k + 1.5 * d * k * log2n;
      break;
    case EmbeddingMode::dense_l1:
      est.signs = static_cast<double>(sign_seed_bits(plan.n, plan.l));
      est.fallback = d * n;
      break;
    case EmbeddingMode::achlioptas_fallback:
      // 3 bits per attempt, 6 of 8 outcomes accepted.
      est.fallback = d * n * 4.0;
      break;
    case EmbeddingMode::no_reduction:
      break;
  }
  return est;
}

}  // namespace sjlt
