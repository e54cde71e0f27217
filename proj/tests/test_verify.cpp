#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "sjlt/error.hpp"
#include "sjlt/verify.hpp"

using namespace sjlt;
using namespace sjlt::verify;

namespace {

double linf(const RealVector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double l2(const RealVector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("test vectors are unit and respect the cap") {
  BitSource src(1, 0);
  for (auto shape : {VectorShape::spike_capped, VectorShape::flat, VectorShape::random_unit, VectorShape::two_block})
    for (double alpha : {0.0, 0.05, 0.2}) {
      CAPTURE(to_string(shape));
      CAPTURE(alpha);
      const TestVectorSpec spec{1024, 256, alpha, shape};
      if (shape == VectorShape::two_block && alpha == 0.0) {
        CHECK_THROWS_AS(make_test_vector(spec, src), InvalidArgument);
        continue;
      }
      const RealVector v = make_test_vector(spec, src);
      CHECK(l2(v) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(linf(v) <= spec.effective_alpha() * (1 + 1e-12));
    }
  const RealVector spike = make_test_vector({1024, 256, 0.2, VectorShape::spike_capped}, src);
  CHECK(std::abs(spike[0]) == doctest::Approx(0.2));
  CHECK(std::abs(spike[24]) == doctest::Approx(0.2));
  CHECK(std::abs(spike[25]) == 0.0);  // 25 entries of 0.2 already fill the norm
  CHECK_THROWS_AS(make_test_vector({1024, 256, 0.01, VectorShape::flat}, src), InvalidArgument);
  CHECK(parse_shape("two-block") == VectorShape::two_block);
  CHECK_THROWS_AS(parse_shape("square"), InvalidArgument);
}

TEST_CASE("sample_w has unit variance and is reproducible") {
  const RealVector v = unit_flat(256);
  const BitSource src(5, 0);
  const auto w = sample_w(v, 64, 20000, src);
  CHECK(w == sample_w(v, 64, 20000, src));
  double s2 = 0.0;
  for (double x : w) s2 += x * x;
  CHECK(std::abs(s2 / 20000 - 1.0) < 0.06);
}

TEST_CASE("negative correlation is exact for every n <= 10") {
  for (std::uint64_t n = 1; n <= 10; ++n)
    for (std::uint64_t k = 1; k <= n; ++k) {
      const auto reports = check_negative_correlation(n, k);
      CHECK(reports.size() == n + 1);
      CHECK(all_passed(reports));
    }
  const auto r = check_negative_correlation(8, 3);
  CHECK(r[2].target == doctest::Approx(3.0 * 2 / (8 * 7)));
  CHECK(r[2].claimed_bound == doctest::Approx(9.0 / 64));
  CHECK_THROWS_AS(check_negative_correlation(24, 12), BudgetExceeded);
}

TEST_CASE("flatness precondition") {
  const BitSource src(1, 0);
  CHECK_THROWS_AS(check_moment_table({1024, 256, 0.5, VectorShape::spike_capped}, 100, src), PreconditionError);
  const EmbeddingPlan plan = make_manual_plan(1024, 8, 256, 2, 0.05);
  CHECK_THROWS_AS(check_sum_deviation(plan, {1024, 256, 0.5, VectorShape::spike_capped}, 100, src),
                  PreconditionError);
}

TEST_CASE("small runs of the statistical checks pass") {
  const BitSource src(11, 0);
  const TestVectorSpec spec{1024, 256, 0.0, VectorShape::flat};
  CHECK(all_passed(check_moment_table(spec, 5000, src)));
  CHECK(all_passed(check_normal_approx(spec, 5000, src)));
  CHECK(all_passed(check_sparse_bernstein(spec, {0.5, 1, 2, 3}, 5000, src)));
  CHECK(all_passed(check_linf_flattening(256, 0.05, 500, src)));
  CHECK(all_passed(check_sum_deviation(make_manual_plan(1024, 16, 256, 2, 0.05), spec, 500, src)));
}

TEST_CASE("a check that cannot hold fails") {
  // the l-infinity bound is far below what e_1 reaches without any signs
  CheckReport r;
  r.kind = CheckKind::upper;
  r.claimed_bound = 0.01;
  r.observed = 0.5;
  r.std_err = 0.01;
  settle(r);
  CHECK_FALSE(r.passed);
  r.kind = CheckKind::two_sided;
  r.target = 0.5;
  settle(r);
  CHECK(r.passed);
}

TEST_CASE("json lines carry the record fields") {
  CheckReport r;
  r.name = "x";
  r.claimed_bound = 1.5;
  r.observed = 1.0;
  r.std_err = 0.1;
  r.passed = true;
  r.trials = 10;
  const auto j = nlohmann::json::parse(to_json_line(r));
  for (const char* key : {"name", "bound", "observed", "stderr", "passed", "trials", "elapsed"}) CHECK(j.contains(key));
  CHECK(j["bound"] == 1.5);
  CHECK(to_json_line(r).find('\n') == std::string::npos);
}
