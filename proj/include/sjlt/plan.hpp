#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sjlt {

enum class EmbeddingMode { sparse, achlioptas_fallback, dense_l1, no_reduction };

const char* to_string(EmbeddingMode mode);

// Which denominator the point-set l1 k-formula uses. The theorem form is
// (1 - kappa)^2; the rounded point-set display prints (1 - kappa^2).
enum class L1KappaForm { squared_gap, one_minus_square };

struct PlanOptions {
  // Use the sparse matrix whenever k <= n (the theorems' validity bound)
  // instead of switching to a dense fallback above n/3.
  bool force_sparse = false;
  L1KappaForm l1_kappa_form = L1KappaForm::squared_gap;
};

// All parameters of one embedding f_q = d^(-1/q) P H D, plus how they were
// derived. Plans are pure functions of their inputs.
struct EmbeddingPlan {
  std::uint64_t n = 0;      // input dimension, power of 2
  std::uint64_t d = 0;      // target dimension
  std::uint64_t k = 0;      // nonzeros per row of P
  unsigned l = 0;           // independence order of the sign diagonal
  unsigned q = 2;           // target norm
  double eps = 0.0;
  double delta = 0.0;
  double kappa = 0.0;       // l1 only
  EmbeddingMode mode = EmbeddingMode::sparse;
  std::uint64_t seed = 0;

  double d_bound = 0.0;     // real-valued lower bound before the ceiling
  double k_bound = 0.0;
  std::uint64_t points = 0; // N for point-set plans, 0 otherwise
  double fail_prob = 0.0;   // p for point-set plans
  std::vector<std::string> provenance;
};

EmbeddingPlan plan_l2(std::uint64_t n, double eps, double delta, const PlanOptions& opts = {});

EmbeddingPlan plan_l1(std::uint64_t n, double eps, double delta, double kappa = 0.5,
                      const PlanOptions& opts = {});

// Union bound over the C(N,2) difference vectors: delta = p / N^2, with the
// rounded constants of the point-set formulas.
EmbeddingPlan plan_for_pointset(std::uint64_t n, std::uint64_t points, double eps, double fail_prob,
                                unsigned q, double kappa = 0.5, const PlanOptions& opts = {});

// A plan with caller-chosen d and k in sparse mode, for experiments that fix
// the shape directly. delta only sets the sign independence order.
EmbeddingPlan make_manual_plan(std::uint64_t n, std::uint64_t d, std::uint64_t k, unsigned q,
                               double delta);

// Expected random-bit usage of building the plan's embedding.
struct BitEstimate {
  double signs = 0.0;
  double rows = 0.0;        // d*k + d*E[T]*log2 n
  double fallback = 0.0;
  double rows_rough = 0.0;  // d*k + (3/2)*d*k*log2 n
  double total() const { return signs + rows + fallback; }
};

BitEstimate estimate_bits(const EmbeddingPlan& plan);

}  // namespace sjlt
