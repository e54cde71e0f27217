#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "sjlt/kwise.hpp"
#include "sjlt/plan.hpp"
#include "sjlt/randbits.hpp"
#include "sjlt/rowsampler.hpp"
#include "sjlt/wht.hpp"

namespace sjlt {

struct SignedRow {
  RowPattern pattern;
  std::vector<std::int8_t> signs;  // aligned with pattern.indices
};

// P = sqrt(n/k) (xi_ij eps_ij): each row a k-subset of columns with signs.
struct SparseSignMatrix {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::vector<SignedRow> rows;
  double scale = 1.0;  // sqrt(n/k)
};

enum class DenseKind { achlioptas, signs };

// Row-major d x n matrix with entries in {-1, 0, +1} (achlioptas) or
// {-1, +1} (signs).
struct DenseFallbackMatrix {
  DenseKind kind = DenseKind::signs;
  std::uint64_t d = 0;
  std::uint64_t n = 0;
  std::vector<std::int8_t> entries;
  double scale = 1.0;  // sqrt(3) for achlioptas, 1 for signs
};

struct Embedding {
  EmbeddingPlan plan;
  SignFamily signs;  // empty in achlioptas mode, which does not precondition
  std::variant<SparseSignMatrix, DenseFallbackMatrix> matrix;
  BitReport bits;
  std::uint64_t total_iterations = 0;  // T = T_1 + ... + T_d (sparse mode)
};

// Zero-pads to the next power of 2. Rejects empty input.
RealVector pad_pow2(std::span<const double> u);

// Draws D and P for the plan. The sign diagonal is read from `src`; row i of
// P is read from src.derive(0).derive(i + 1). Throws InvalidArgument
// for a no_reduction plan.
Embedding build_embedding(const EmbeddingPlan& plan, BitSource& src);

// f_q(u) = d^(-1/q) P H D u. u must have length plan.n.
RealVector apply(const Embedding& emb, std::span<const double> u);

std::vector<RealVector> apply_batch(const Embedding& emb, const std::vector<RealVector>& us);

// sqrt(pi/2) ||y||_1, the l1 estimator of ||u||_2.
double l1_norm_estimate(std::span<const double> y);

// ||y||_2 for q = 2, sqrt(pi/2) ||y||_1 for q = 1.
double norm_estimate(const EmbeddingPlan& plan, std::span<const double> y);

// Whether norm_estimate / ||u||_2 lies in [1/(1+eps), 1+eps] (q = 2) or
// [1-eps, 1+eps] (q = 1).
bool within_distortion(const EmbeddingPlan& plan, double ratio);

}  // namespace sjlt
