// Acceptance run: one PASS/FAIL line per criterion. Pass --verbose to also
// print every individual check record.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sjlt/error.hpp"
#include "sjlt/kwise.hpp"
#include "sjlt/plan.hpp"
#include "sjlt/rowsampler.hpp"
#include "sjlt/stats.hpp"
#include "sjlt/transform.hpp"
#include "sjlt/vector_file.hpp"
#include "sjlt/verify.hpp"
#include "sjlt/wht.hpp"

using namespace sjlt;
using verify::CheckReport;

namespace {

bool verbose = false;

struct Outcome {
  bool passed = true;
  std::string summary;
  std::vector<std::string> notes;  // printed for failures (all lines with --verbose)

  void require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    if (!ok || verbose) notes.push_back((ok ? "ok   " : "FAIL ") + what);
  }
  void absorb(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports) require(r.passed, verify::to_json_line(r));
  }
};

RealVector gaussian_vector(std::size_t n, BitSource& src) {
  RealVector v(n);
  for (auto& x : v) x = stats::draw_gaussian(src);
  return v;
}

double l2(const RealVector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// 1 ---------------------------------------------------------------------------
Outcome wht_correctness() {
  Outcome out;
  BitSource src(101, 0);
  double worst_matrix = 0.0, worst_inv = 0.0, worst_iso = 0.0;
  for (std::size_t n = 1; n <= 4096; n *= 2) {
    // explicit matrix from H_2n = [[H, H], [H, -H]] / sqrt(2)
    std::vector<std::vector<double>> h;
    if (n <= 64) {
      h = {{1.0}};
      for (std::size_t m = 1; m < n; m *= 2) {
        std::vector<std::vector<double>> next(2 * m, std::vector<double>(2 * m));
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) {
            const double v = h[i][j] / std::sqrt(2.0);
            next[i][j] = next[i][j + m] = next[i + m][j] = v;
            next[i + m][j + m] = -v;
          }
        h = std::move(next);
      }
    }
    for (int rep = 0; rep < 100; ++rep) {
      const RealVector x = gaussian_vector(n, src);
      const RealVector y = wht_apply(x);
      const RealVector z = wht_apply(y);
      const double nx = l2(x);
      if (n <= 64) {
        for (std::size_t i = 0; i < n; ++i) {
          double e = 0.0;
          for (std::size_t j = 0; j < n; ++j) e += h[i][j] * x[j];
          worst_matrix = std::max(worst_matrix, std::abs(e - y[i]));
        }
      }
      for (std::size_t i = 0; i < n; ++i) worst_inv = std::max(worst_inv, std::abs(z[i] - x[i]) / nx);
      worst_iso = std::max(worst_iso, std::abs(l2(y) - nx) / nx);
    }
  }
  out.require(worst_matrix <= 1e-12, "matrix product, max abs error " + fmt(worst_matrix));
  out.require(worst_inv <= 1e-10, "involution, max rel error " + fmt(worst_inv));
  out.require(worst_iso <= 1e-10, "isometry, max rel error " + fmt(worst_iso));
  out.summary = "n=1..4096, 100 vectors each; matrix err " + fmt(worst_matrix) + ", involution " +
                fmt(worst_inv) + ", isometry " + fmt(worst_iso);
  return out;
}

// 2 ---------------------------------------------------------------------------
Outcome exact_independence() {
  Outcome out;
  const std::pair<std::uint64_t, unsigned> cases[] = {{8, 2}, {16, 4}, {32, 4}};
  for (auto [n, l] : cases) {
    const std::uint64_t expect_bits = (log2_exact(n) + 1) * l / 2 + 1;
    const KwiseEnumeration e = enumerate_kwise(n, l);
    BitSource src(1, 0);
    const SignFamily fam = build_sign_family(n, l, src);
    const std::string tag = "(n=" + std::to_string(n) + ",l=" + std::to_string(l) + ")";
    out.require(e.uniform && e.min_count == e.max_count && e.min_count * (1u << l) == e.seeds,
                tag + " every pattern count = " + std::to_string(e.min_count) + ".." +
                    std::to_string(e.max_count) + " over " + std::to_string(e.seeds) + " seeds");
    out.require(sign_seed_bits(n, l) == expect_bits && fam.seed_bits_used == expect_bits &&
                    e.seeds == (std::uint64_t{1} << expect_bits),
                tag + " seed bits " + std::to_string(fam.seed_bits_used) + ", expected " +
                    std::to_string(expect_bits));
  }
  out.summary = "(8,2), (16,4), (32,4): all l-subsets uniform, seed = (log2 n + 1) l/2 + 1 bits";
  return out;
}

// 3 ---------------------------------------------------------------------------
Outcome negative_correlation() {
  Outcome out;
  std::size_t sets = 0;
  for (std::uint64_t n = 1; n <= 10; ++n)
    for (std::uint64_t k = 1; k <= n; ++k) {
      const auto reports = verify::check_negative_correlation(n, k);
      for (const auto& r : reports) sets += r.trials;
      out.absorb(reports);
    }
  out.summary = "all n<=10, 1<=k<=n, " + std::to_string(sets) + " index sets: exact match and <= (k/n)^|A|";
  return out;
}

// 4 ---------------------------------------------------------------------------
Outcome sampler_statistics() {
  Outcome out;
  std::size_t grid = 0;
  double worst = 0.0;
  for (std::uint64_t n = 2; n <= 4096; n *= 2)
    for (std::uint64_t k = 1; 3 * k <= n; ++k) {
      ++grid;
      const double ratio = expected_iterations_exact(n, k) / static_cast<double>(k);
      worst = std::max(worst, ratio);
      if (ratio > 1.5) out.require(false, "E T > 1.5k at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  out.require(worst <= 1.5, "max E[T]/k over " + std::to_string(grid) + " grid points = " + fmt(worst));
  BitSource src(404, 0);
  const IterationStats s = iteration_stats(1024, 256, 10000, src);
  const double bound = 0.75 * 256;
  out.require(s.variance <= bound + 4 * s.variance_stderr,
              "Var T at (1024,256) = " + fmt(s.variance) + " +- " + fmt(s.variance_stderr) + " vs " + fmt(bound));
  out.summary = "max E[T]/k = " + fmt(worst) + " on " + std::to_string(grid) + " points; Var T = " +
                fmt(s.variance) + " (stderr " + fmt(s.variance_stderr) + ") vs 0.75k = 192";
  return out;
}

const verify::TestVectorSpec kFlat{4096, 1024, 0.0, verify::VectorShape::flat};

// 5 ---------------------------------------------------------------------------
Outcome moment_table() {
  Outcome out;
  const auto reports = verify::check_moment_table(kFlat, 100000, BitSource(505, 0));
  out.absorb(reports);
  out.summary = "n=4096 k=1024 flat, 1e5 trials:";
  for (const auto& r : reports) out.summary += " " + r.name.substr(8) + "=" + fmt(r.observed);
  return out;
}

// 6 ---------------------------------------------------------------------------
Outcome normal_approximation() {
  Outcome out;
  const auto reports = verify::check_normal_approx(kFlat, 100000, BitSource(606, 0));
  out.absorb(reports);
  out.summary = "E|W| = " + fmt(reports[0].observed) + " (bound +-" + fmt(reports[0].claimed_bound) +
                "), W1 = " + fmt(reports[1].observed) + " vs " + fmt(reports[1].claimed_bound) +
                " + 4*" + fmt(reports[1].std_err);
  return out;
}

// 7 ---------------------------------------------------------------------------
Outcome tail_domination() {
  Outcome out;
  std::vector<double> s_grid;
  for (int i = 1; i <= 10; ++i) s_grid.push_back(0.5 * i);
  const auto tails = verify::check_sparse_bernstein(kFlat, s_grid, 100000, BitSource(707, 0));
  out.absorb(tails);
  const EmbeddingPlan plan = make_manual_plan(4096, 64, 1024, 2, 0.05);
  const auto dev = verify::check_sum_deviation(plan, kFlat, 100000, BitSource(708, 0));
  out.absorb(dev);
  std::size_t ok = 0;
  for (const auto& r : tails) ok += r.passed;
  for (const auto& r : dev) ok += r.passed;
  out.summary = std::to_string(ok) + "/" + std::to_string(tails.size() + dev.size()) +
                " tail checks (W_i at s=0.5..5; sums at d=64, 1e5 trials)";
  return out;
}

// 8 ---------------------------------------------------------------------------
std::vector<RealVector> e2e_inputs(std::uint64_t n, std::vector<std::string>& names) {
  BitSource vs(808, n);
  std::vector<RealVector> us = {verify::unit_spike(n), verify::unit_flat(n)};
  names = {"e1", "flat"};
  for (int i = 0; i < 3; ++i) {
    us.push_back(verify::unit_random(n, vs));
    names.push_back("random" + std::to_string(i));
  }
  return us;
}

Outcome end_to_end() {
  Outcome out;
  const std::uint64_t seeds = 2000;
  std::vector<std::string> names;
  const auto us = e2e_inputs(1024, names);
  double worst = 0.0;
  auto run = [&](const EmbeddingPlan& plan, const std::string& tag, std::uint64_t stream,
                 const std::vector<RealVector>& inputs) {
    const auto reports = verify::check_end_to_end(plan, inputs, names, seeds, BitSource(800 + stream, 0));
    for (const auto& r : reports) {
      // criterion tolerance: 0.10 + 4 sigma per vector
      const bool ok = r.observed <= 0.10 + 4 * r.std_err;
      out.require(ok, tag + " " + verify::to_json_line(r));
      worst = std::max(worst, r.observed);
    }
  };

  // l2: the theorem gives d=102, k=725 at n=1024; k > n/3 so the planner
  // prefers the dense fallback. Run the sparse matrix at exactly (d, k) and the
  // fallback the planner would pick.
  PlanOptions force;
  force.force_sparse = true;
  const EmbeddingPlan l2 = plan_l2(1024, 0.5, 0.05, force);
  out.require(l2.d == 102 && l2.k == 725 && l2.mode == EmbeddingMode::sparse,
              "l2 plan d=" + std::to_string(l2.d) + " k=" + std::to_string(l2.k));
  run(l2, "l2 sparse", 1, us);
  const EmbeddingPlan l2_default = plan_l2(1024, 0.5, 0.05);
  out.require(l2_default.mode == EmbeddingMode::achlioptas_fallback, "l2 default plan is the dense fallback");
  run(l2_default, "l2 fallback", 2, us);

  // l1 at kappa = 1/2: d = 235, but k would be 3266 > n = 1024, so P can be at
  // best the full sign matrix (k = n). Run that, and the sparse construction
  // at n = 2^16 where the theorem's k fits.
  const EmbeddingPlan theorem_l1 = plan_l1(65536, 0.5, 0.05, 0.5);
  EmbeddingPlan l1 = make_manual_plan(1024, theorem_l1.d, 1024, 1, 0.05);
  l1.eps = 0.5;
  l1.kappa = 0.5;
  l1.mode = EmbeddingMode::dense_l1;
  run(l1, "l1 dense n=1024", 3, us);
  out.require(theorem_l1.mode == EmbeddingMode::sparse && theorem_l1.d == 235 && theorem_l1.k == 4544,
              "l1 plan at n=65536 d=" + std::to_string(theorem_l1.d) + " k=" + std::to_string(theorem_l1.k));
  std::vector<std::string> big_names;
  run(theorem_l1, "l1 sparse n=65536", 4, e2e_inputs(65536, big_names));

  out.summary = "2000 seeds x {e1, flat, 3 random}: l2 sparse (d=102,k=725), l2 fallback, l1 (d=235) at "
                "n=1024 and n=65536; worst failure rate " + fmt(worst) + " (allowed 0.10)";
  return out;
}

// 9 ---------------------------------------------------------------------------
Outcome bit_accounting() {
  Outcome out;
  PlanOptions force;
  force.force_sparse = true;
  const std::vector<EmbeddingPlan> plans = {
      make_manual_plan(4096, 64, 1024, 2, 0.05), plan_l2(1024, 0.5, 0.05, force), plan_l2(1 << 16, 0.5, 0.05),
      plan_l1(1 << 16, 0.5, 0.05, 0.5), plan_for_pointset(4096, 10, 0.5, 0.5, 2), make_manual_plan(64, 3, 64, 1, 0.1)};
  std::size_t runs = 0;
  for (const auto& plan : plans) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      BitSource src(900 + seed, 0);
      const Embedding emb = build_embedding(plan, src);
      const std::uint64_t expect = sign_seed_bits(plan.n, plan.l) + plan.d * plan.k +
                                   emb.total_iterations * log2_exact(plan.n);
      ++runs;
      out.require(emb.bits.total() == expect && src.bits_consumed() == emb.bits.get(BitReport::kSigns),
                  "n=" + std::to_string(plan.n) + " d=" + std::to_string(plan.d) + " k=" + std::to_string(plan.k) +
                      " seed " + std::to_string(seed) + ": reported " + std::to_string(emb.bits.total()) +
                      ", expected " + std::to_string(expect));
    }
  }

  // determinism: build, embed and write twice from the same seed
  const EmbeddingPlan plan = plan_for_pointset(4096, 20, 0.5, 0.5, 2);
  BitSource vs(999, 0);
  std::vector<RealVector> points;
  for (int i = 0; i < 20; ++i) points.push_back(gaussian_vector(4096, vs));
  std::string bytes[2];
  for (int pass = 0; pass < 2; ++pass) {
    BitSource src(31337, 0);
    const Embedding emb = build_embedding(plan, src);
    const std::string path = "acceptance_determinism_" + std::to_string(pass) + ".bin";
    write_vectors(path, apply_batch(emb, points), VectorFormat::binary);
    std::ifstream in(path, std::ios::binary);
    bytes[pass].assign(std::istreambuf_iterator<char>(in), {});
    std::remove(path.c_str());
  }
  out.require(!bytes[0].empty() && bytes[0] == bytes[1], "two runs from one seed give byte-identical files");
  out.summary = std::to_string(runs) + " embeddings: bits = seed bits + dk + T log2 n exactly; repeat run byte-identical";
  return out;
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) verbose = verbose || std::strcmp(argv[i], "--verbose") == 0;
  const std::vector<Criterion> criteria = {
      {1, "WHT correctness", 10, wht_correctness},
      {2, "exact l-wise independence", 30, exact_independence},
      {3, "negative correlation", 60, negative_correlation},
      {4, "subset-sampler statistics", 30, sampler_statistics},
      {5, "moment table", 60, moment_table},
      {6, "normal approximation", 60, normal_approximation},
      {7, "tail domination", 300, tail_domination},
      {8, "end-to-end l2/l1 guarantee", 300, end_to_end},
      {9, "bit accounting and determinism", 60, bit_accounting},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.summary = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool ok = o.passed && in_time;
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << ": " << o.summary << " ("
              << fmt(secs) << " s" << (in_time ? "" : ", over the " + fmt(c.budget_seconds) + " s budget")
              << ")" << std::endl;
    for (const auto& note : o.notes) std::cout << "    " << note << "\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
