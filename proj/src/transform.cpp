#include "sjlt/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sjlt/error.hpp"
#include "sjlt/parallel.hpp"

namespace sjlt {
namespace {

// One {+1, 0, -1} entry with probabilities {1/6, 2/3, 1/6}: draw 3 bits,
// reject 6 and 7, map 0 -> +1, 1 -> -1, 2..5 -> 0.
std::int8_t draw_achlioptas_entry(BitSource& src) {
  while (true) {
    const auto v = src.draw_uint(3);
    if (v == 0) return 1;
    if (v == 1) return -1;
    if (v < 6) return 0;
  }
}

double output_scale(const EmbeddingPlan& plan) {
  const double d = static_cast<double>(plan.d);
  return plan.q == 1 ? 1.0 / d : 1.0 / std::sqrt(d);
}

SparseSignMatrix build_sparse(const EmbeddingPlan& plan, const BitSource& src, BitReport& bits,
                              std::uint64_t& total_iterations) {
  SparseSignMatrix p;
  p.n = plan.n;
  p.k = plan.k;
  p.scale = std::sqrt(static_cast<double>(plan.n) / static_cast<double>(plan.k));
  p.rows.resize(plan.d);
  std::vector<std::uint64_t> row_bits(plan.d);
  parallel_for(plan.d, [&](std::size_t i) {
    BitSource row_src = src.derive(i + 1);
    SignedRow& row = p.rows[i];
    row.pattern = sample_subset(plan.n, plan.k, row_src);
    row.signs.resize(plan.k);
    // 64 signs per draw; same bit order as one next_bit() per sign.
    for (std::size_t t = 0; t < plan.k; t += 64) {
      const unsigned width = static_cast<unsigned>(std::min<std::uint64_t>(64, plan.k - t));
      std::uint64_t bits = row_src.draw_uint(width) << (64 - width);
      for (unsigned b = 0; b < width; ++b, bits <<= 1) row.signs[t + b] = (bits >> 63) ? -1 : 1;
    }
    row_bits[i] = row_src.bits_consumed();
  });
  total_iterations = 0;
  for (std::size_t i = 0; i < plan.d; ++i) {
    bits.add(BitReport::kRows, row_bits[i]);
    total_iterations += p.rows[i].pattern.iterations;
  }
  return p;
}

DenseFallbackMatrix build_dense(const EmbeddingPlan& plan, DenseKind kind, const BitSource& src,
                                BitReport& bits) {
  DenseFallbackMatrix m;
  m.kind = kind;
  m.d = plan.d;
  m.n = plan.n;
  m.scale = kind == DenseKind::achlioptas ? std::sqrt(3.0) : 1.0;
  m.entries.resize(plan.d * plan.n);
  std::vector<std::uint64_t> row_bits(plan.d);
  parallel_for(plan.d, [&](std::size_t i) {
    BitSource row_src = src.derive(i + 1);
    std::int8_t* row = m.entries.data() + i * plan.n;
    for (std::uint64_t j = 0; j < plan.n; ++j) {
      row[j] = kind == DenseKind::achlioptas ? draw_achlioptas_entry(row_src)
                                              : (row_src.next_bit() ? -1 : 1);
    }
    row_bits[i] = row_src.bits_consumed();
  });
  for (auto b : row_bits) bits.add(BitReport::kFallback, b);
  return m;
}

}  // namespace

RealVector pad_pow2(std::span<const double> u) {
  detail::require(!u.empty(), "pad_pow2: empty vector");
  std::size_t n = 1;
  while (n < u.size()) n <<= 1;
  RealVector out(n, 0.0);
  std::copy(u.begin(), u.end(), out.begin());
  return out;
}

Embedding build_embedding(const EmbeddingPlan& plan, BitSource& src) {
  if (plan.mode == EmbeddingMode::no_reduction) {
    detail::fail_invalid("build_embedding: the plan refuses to embed (no_reduction): d would not "
                         "be smaller than n");
  }
  detail::require(is_pow2(plan.n), "build_embedding: n must be a power of 2");
  detail::require(plan.d >= 1, "build_embedding: d must be positive");
  // k is unused by the dense fallback and may exceed n there.
  detail::require(plan.mode == EmbeddingMode::achlioptas_fallback || (plan.k >= 1 && plan.k <= plan.n),
                  "build_embedding: k must lie in [1, n]");
  detail::require(plan.q == 1 || plan.q == 2, "build_embedding: q must be 1 or 2");

  Embedding emb;
  emb.plan = plan;
  // Row streams are children of src.derive(0) and do not depend on how many
  // bits the diagonal consumed.
  const BitSource root = src.derive(0);
  switch (plan.mode) {
    case EmbeddingMode::sparse: {
      emb.signs = build_sign_family(plan.n, plan.l, src);
      emb.bits.add(BitReport::kSigns, emb.signs.seed_bits_used);
      emb.matrix = build_sparse(plan, root, emb.bits, emb.total_iterations);
      break;
    }
    case EmbeddingMode::dense_l1: {
      emb.signs = build_sign_family(plan.n, plan.l, src);
      emb.bits.add(BitReport::kSigns, emb.signs.seed_bits_used);
      emb.matrix = build_dense(plan, DenseKind::signs, root, emb.bits);
      break;
    }
    case EmbeddingMode::achlioptas_fallback:
      emb.bits.add(BitReport::kSigns, 0);
      emb.matrix = build_dense(plan, DenseKind::achlioptas, root, emb.bits);
      break;
    case EmbeddingMode::no_reduction:
      break;
  }
  return emb;
}

RealVector apply(const Embedding& emb, std::span<const double> u) {
  const EmbeddingPlan& plan = emb.plan;
  detail::require(u.size() == plan.n, "apply: input length " + std::to_string(u.size()) +
                                          " does not match n = " + std::to_string(plan.n));
  RealVector y(plan.d, 0.0);
  const double out_scale = output_scale(plan);

  if (const auto* dense = std::get_if<DenseFallbackMatrix>(&emb.matrix);
      dense != nullptr && dense->kind == DenseKind::achlioptas) {
    for (std::uint64_t i = 0; i < plan.d; ++i) {
      const std::int8_t* row = dense->entries.data() + i * plan.n;
      double acc = 0.0;
      for (std::uint64_t j = 0; j < plan.n; ++j) acc += row[j] * u[j];
      y[i] = acc * dense->scale * out_scale;
    }
    return y;
  }

  RealVector v(u.begin(), u.end());
  for (std::uint64_t j = 0; j < plan.n; ++j) v[j] *= emb.signs.signs[j];
  wht_inplace(v);

  if (const auto* sparse = std::get_if<SparseSignMatrix>(&emb.matrix)) {
    const double s = sparse->scale * out_scale;
    for (std::uint64_t i = 0; i < plan.d; ++i) {
      const SignedRow& row = sparse->rows[i];
      double acc = 0.0;
      for (std::size_t t = 0; t < row.signs.size(); ++t) acc += row.signs[t] * v[row.pattern.indices[t]];
      y[i] = acc * s;
    }
  } else {
    const auto& dense = std::get<DenseFallbackMatrix>(emb.matrix);
    const double s = dense.scale * out_scale;
    for (std::uint64_t i = 0; i < plan.d; ++i) {
      const std::int8_t* row = dense.entries.data() + i * plan.n;
      double acc = 0.0;
      for (std::uint64_t j = 0; j < plan.n; ++j) acc += row[j] * v[j];
      y[i] = acc * s;
    }
  }
  return y;
}

std::vector<RealVector> apply_batch(const Embedding& emb, const std::vector<RealVector>& us) {
  std::vector<RealVector> out(us.size());
  parallel_for(us.size(), [&](std::size_t i) { out[i] = sjlt::apply(emb, us[i]); });
  return out;
}

double l1_norm_estimate(std::span<const double> y) {
  double s = 0.0;
  for (double x : y) s += std::abs(x);
  return std::sqrt(std::numbers::pi / 2.0) * s;
}

double norm_estimate(const EmbeddingPlan& plan, std::span<const double> y) {
  if (plan.q == 1) return l1_norm_estimate(y);
  double s = 0.0;
  for (double x : y) s += x * x;
  return std::sqrt(s);
}

bool within_distortion(const EmbeddingPlan& plan, double ratio) {
  if (plan.q == 1) return ratio >= 1.0 - plan.eps && ratio <= 1.0 + plan.eps;
  return ratio >= 1.0 / (1.0 + plan.eps) && ratio <= 1.0 + plan.eps;
}

}  // namespace sjlt
