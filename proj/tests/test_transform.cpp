#include <bit>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sjlt/error.hpp"
#include "sjlt/stats.hpp"
#include "sjlt/transform.hpp"

using namespace sjlt;

namespace {

RealVector random_unit(std::size_t n, BitSource& src) {
  RealVector v(n);
  double s = 0.0;
  for (auto& x : v) {
    x = stats::draw_gaussian(src);
    s += x * x;
  }
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

// Entry (i, j) of H_n: (-1)^popcount(i & j) / sqrt(n).
double hadamard_entry(std::uint64_t i, std::uint64_t j, std::uint64_t n) {
  return (std::popcount(i & j) % 2 ? -1.0 : 1.0) / std::sqrt(double(n));
}

}  // namespace

TEST_CASE("sparse embedding equals the explicit product d^(-1/2) P H D u") {
  const EmbeddingPlan plan = make_manual_plan(64, 12, 10, 2, 0.05);
  BitSource src(17, 0);
  const Embedding emb = build_embedding(plan, src);
  const auto& p = std::get<SparseSignMatrix>(emb.matrix);
  BitSource vs(18, 0);
  const RealVector u = random_unit(64, vs);
  const RealVector y = sjlt::apply(emb, u);
  for (std::uint64_t i = 0; i < plan.d; ++i) {
    std::vector<double> prow(64, 0.0);
    for (std::size_t t = 0; t < plan.k; ++t) prow[p.rows[i].pattern.indices[t]] = p.rows[i].signs[t] * std::sqrt(6.4);
    double expect = 0.0;
    for (std::uint64_t a = 0; a < 64; ++a)
      for (std::uint64_t b = 0; b < 64; ++b) expect += prow[a] * hadamard_entry(a, b, 64) * emb.signs.signs[b] * u[b];
    CHECK(y[i] == doctest::Approx(expect / std::sqrt(12.0)).epsilon(1e-12));
  }
}

TEST_CASE("row streams are keyed by row index") {
  const EmbeddingPlan plan = make_manual_plan(256, 5, 20, 2, 0.05);
  BitSource src(3, 4);
  const BitSource copy = src;
  const Embedding emb = build_embedding(plan, src);
  const BitSource root = copy.derive(0);
  for (std::uint64_t i = 0; i < plan.d; ++i) {
    BitSource row = root.derive(i + 1);
    RowPattern expect = sample_subset(256, 20, row);
    CHECK(std::get<SparseSignMatrix>(emb.matrix).rows[i].pattern.indices == expect.indices);
  }
}

TEST_CASE("reported bits are seed bits + d k + T log2 n") {
  for (auto plan : {make_manual_plan(1024, 30, 100, 2, 0.05), plan_l2(1 << 16, 0.5, 0.05),
                    plan_for_pointset(4096, 10, 0.5, 0.5, 2)}) {
    BitSource src(5, 0);
    const Embedding emb = build_embedding(plan, src);
    REQUIRE(plan.mode == EmbeddingMode::sparse);
    const std::uint64_t expect =
        sign_seed_bits(plan.n, plan.l) + plan.d * plan.k + emb.total_iterations * log2_exact(plan.n);
    CHECK(emb.bits.total() == expect);
    CHECK(emb.bits.get(BitReport::kSigns) == sign_seed_bits(plan.n, plan.l));
    std::uint64_t t = 0;
    for (const auto& r : std::get<SparseSignMatrix>(emb.matrix).rows) t += r.pattern.iterations;
    CHECK(t == emb.total_iterations);
  }
}

TEST_CASE("same seed, same embedding") {
  const EmbeddingPlan plan = make_manual_plan(512, 20, 64, 2, 0.05);
  BitSource a(9, 0), b(9, 0), c(10, 0);
  const Embedding ea = build_embedding(plan, a), eb = build_embedding(plan, b), ec = build_embedding(plan, c);
  const RealVector u(512, 1.0 / std::sqrt(512.0));
  CHECK(sjlt::apply(ea, u) == sjlt::apply(eb, u));
  CHECK(sjlt::apply(ea, u) != sjlt::apply(ec, u));
  CHECK(ea.bits.total() == eb.bits.total());
}

TEST_CASE("achlioptas entries have probabilities 1/6, 2/3, 1/6") {
  const EmbeddingPlan plan = plan_l2(256, 0.2, 0.01);
  REQUIRE(plan.mode == EmbeddingMode::achlioptas_fallback);
  BitSource src(1, 0);
  const Embedding emb = build_embedding(plan, src);
  const auto& m = std::get<DenseFallbackMatrix>(emb.matrix);
  CHECK(m.kind == DenseKind::achlioptas);
  CHECK(m.scale == doctest::Approx(std::sqrt(3.0)));
  double plus = 0, zero = 0, minus = 0;
  for (auto x : m.entries) (x > 0 ? plus : x < 0 ? minus : zero) += 1;
  const double total = double(m.entries.size());
  auto within = [&](double hits, double p) { return std::abs(hits / total - p) <= 4 * std::sqrt(p * (1 - p) / total); };
  CHECK(within(plus, 1.0 / 6));
  CHECK(within(zero, 2.0 / 3));
  CHECK(within(minus, 1.0 / 6));
  // 3 bits per attempt, acceptance 3/4
  const double per_entry = double(emb.bits.get(BitReport::kFallback)) / total;
  CHECK(std::abs(per_entry - 4.0) <= 4 * std::sqrt(3.0 * 3 * (0.25 / 0.5625) / total));
  CHECK(emb.bits.get(BitReport::kSigns) == 0);
}

TEST_CASE("linear, and zero maps to zero") {
  const EmbeddingPlan plan = make_manual_plan(128, 16, 20, 2, 0.05);
  BitSource src(2, 0), vs(3, 0);
  const Embedding emb = build_embedding(plan, src);
  const RealVector u = random_unit(128, vs), w = random_unit(128, vs);
  RealVector mix(128);
  for (int j = 0; j < 128; ++j) mix[j] = 2.5 * u[j] - 0.75 * w[j];
  const RealVector fu = sjlt::apply(emb, u), fw = sjlt::apply(emb, w), fm = sjlt::apply(emb, mix);
  for (int i = 0; i < 16; ++i) CHECK(fm[i] == doctest::Approx(2.5 * fu[i] - 0.75 * fw[i]).epsilon(1e-12));
  for (double y : sjlt::apply(emb, RealVector(128, 0.0))) CHECK(y == 0.0);
}

TEST_CASE("squared norm is preserved on average") {
  const EmbeddingPlan plan = make_manual_plan(256, 16, 32, 2, 0.05);
  BitSource vs(4, 0);
  const RealVector u = random_unit(256, vs);
  std::vector<double> sq;
  const BitSource root(77, 0);
  for (std::uint64_t s = 0; s < 2000; ++s) {
    BitSource src = root.derive(s);
    const RealVector y = sjlt::apply(build_embedding(plan, src), u);
    double t = 0.0;
    for (double x : y) t += x * x;
    sq.push_back(t);
  }
  const auto m = stats::mean_with_stderr(sq);
  CHECK(std::abs(m.mean - 1.0) <= 4 * m.stderr_of_mean);
}

TEST_CASE("l1 target") {
  const double c = std::sqrt(std::numbers::pi / 2);
  CHECK(l1_norm_estimate(std::vector<double>{1.0, -1.0, 0.5}) == doctest::Approx(2.5 * c));
  const EmbeddingPlan plan = plan_l1(1 << 16, 0.5, 0.05, 0.5);
  BitSource src(6, 0), vs(7, 0);
  const Embedding emb = build_embedding(plan, src);
  const RealVector u = random_unit(1 << 16, vs);
  const double ratio = norm_estimate(plan, sjlt::apply(emb, u));
  CHECK(within_distortion(plan, ratio));
  CHECK(std::abs(ratio - 1.0) < 0.2);
}

TEST_CASE("distortion intervals") {
  EmbeddingPlan two = make_manual_plan(8, 2, 2, 2, 0.05);
  two.eps = 0.5;
  CHECK(within_distortion(two, 1.0 / 1.5));
  CHECK_FALSE(within_distortion(two, 0.66));
  CHECK(within_distortion(two, 1.5));
  EmbeddingPlan one = make_manual_plan(8, 2, 2, 1, 0.05);
  one.eps = 0.5;
  CHECK(within_distortion(one, 0.5));
  CHECK_FALSE(within_distortion(one, 0.49));
}

TEST_CASE("padding and refusals") {
  CHECK(pad_pow2(std::vector<double>{1, 2, 3}) == RealVector{1, 2, 3, 0});
  CHECK(pad_pow2(std::vector<double>{1, 2}) == RealVector{1, 2});
  CHECK_THROWS_AS(pad_pow2(std::vector<double>{}), InvalidArgument);
  BitSource src(1, 0);
  CHECK_THROWS_AS(build_embedding(plan_l1(1024, 0.5, 0.05, 0.5), src), InvalidArgument);
  const Embedding emb = build_embedding(make_manual_plan(16, 2, 2, 2, 0.05), src);
  CHECK_THROWS_AS(sjlt::apply(emb, RealVector(8, 0.0)), InvalidArgument);
}
