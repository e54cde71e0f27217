// sjlt: plan, embed, verify and bench from the command line.
//
// Exit codes: 0 ok / all checks pass, 1 a check failed, 2 usage or
// validation error, 3 the planner refuses to reduce (mode no_reduction).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sjlt/error.hpp"
#include "sjlt/plan.hpp"
#include "sjlt/randbits.hpp"
#include "sjlt/stats.hpp"
#include "sjlt/transform.hpp"
#include "sjlt/vector_file.hpp"
#include "sjlt/verify.hpp"

namespace {

using namespace sjlt;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoReduction = 3;

struct PlanArgs {
  std::uint64_t n = 0;
  double eps = 0.0;
  std::optional<double> delta;
  bool l1 = false;
  double kappa = 0.5;
  std::optional<std::uint64_t> points;
  std::optional<double> fail;
  std::uint64_t seed = 0;
  bool force_sparse = false;
};

void add_plan_flags(CLI::App* cmd, PlanArgs& a, bool with_n) {
  if (with_n) cmd->add_option("--n", a.n, "Input dimension (power of 2)")->required();
  cmd->add_option("--eps", a.eps, "Distortion eps in (0,1)")->required();
  cmd->add_option("--delta", a.delta, "Failure probability per vector");
  cmd->add_flag("--l1", a.l1, "Plan the l1 embedding");
  cmd->add_option("--kappa", a.kappa, "l1 split parameter in (0,1)");
  cmd->add_option("--points", a.points, "Number of points N (union bound)");
  cmd->add_option("--fail", a.fail, "Failure probability for the whole point set");
  cmd->add_option("--seed", a.seed, "Seed");
  cmd->add_flag("--force-sparse", a.force_sparse, "Keep the sparse matrix whenever k <= n");
}

EmbeddingPlan make_plan(const PlanArgs& a, std::uint64_t n, std::uint64_t default_points = 0) {
  PlanOptions opts;
  opts.force_sparse = a.force_sparse;
  const unsigned q = a.l1 ? 1 : 2;
  EmbeddingPlan plan;
  if (a.fail || a.points) {
    if (a.delta) throw InvalidArgument("give either --delta or --points/--fail, not both");
    if (!a.fail) throw InvalidArgument("--points needs --fail");
    const std::uint64_t points = a.points.value_or(default_points);
    if (points < 2) throw InvalidArgument("--fail needs --points N >= 2");
    plan = plan_for_pointset(n, points, a.eps, *a.fail, q, a.kappa, opts);
  } else {
    if (!a.delta) throw InvalidArgument("one of --delta or --points/--fail is required");
    plan = a.l1 ? plan_l1(n, a.eps, *a.delta, a.kappa, opts) : plan_l2(n, a.eps, *a.delta, opts);
  }
  plan.seed = a.seed;
  return plan;
}

nlohmann::ordered_json plan_json(const EmbeddingPlan& p) {
  nlohmann::ordered_json j;
  j["n"] = p.n;
  j["d"] = p.d;
  j["k"] = p.k;
  j["l"] = p.l;
  j["q"] = p.q;
  j["eps"] = p.eps;
  j["delta"] = p.delta;
  if (p.q == 1) j["kappa"] = p.kappa;
  j["mode"] = to_string(p.mode);
  j["seed"] = p.seed;
  if (p.points) {
    j["points"] = p.points;
    j["fail"] = p.fail_prob;
  }
  j["provenance"] = p.provenance;
  return j;
}

int cmd_plan(const PlanArgs& a) {
  const EmbeddingPlan plan = make_plan(a, a.n);
  std::cout << "d=" << plan.d << " k=" << plan.k << " l=" << plan.l << " mode=" << to_string(plan.mode)
            << "\n";
  std::cout << "n=" << plan.n << " q=" << plan.q << " eps=" << plan.eps << " delta=" << plan.delta;
  if (plan.q == 1) std::cout << " kappa=" << plan.kappa;
  std::cout << "\n";
  if (plan.mode != EmbeddingMode::no_reduction) {
    const BitEstimate b = estimate_bits(plan);
    std::cout << "bits signs=" << b.signs << " rows=" << b.rows << " fallback=" << b.fallback
              << " total=" << b.total() << " (rough rows " << b.rows_rough << ")\n";
  }
  for (const auto& line : plan.provenance) std::cout << "# " << line << "\n";
  return 0;
}

struct EmbedArgs {
  PlanArgs plan;
  std::string input;
  std::string output;
  std::string target = "l2";
  std::string format;
};

int cmd_embed(EmbedArgs a) {
  if (a.target != "l2" && a.target != "l1") throw InvalidArgument("--target must be l2 or l1");
  a.plan.l1 = a.target == "l1";
  std::vector<RealVector> xs = read_vectors(a.input);
  if (xs.empty()) throw InvalidArgument("'" + a.input + "' holds no vectors");
  for (auto& x : xs) x = pad_pow2(x);
  const std::uint64_t n = xs.front().size();
  const EmbeddingPlan plan = make_plan(a.plan, n, xs.size());
  if (plan.mode == EmbeddingMode::no_reduction) {
    std::cerr << "sjlt: no reduction possible: the bound requires d >= n = " << n
              << " for these parameters; the guarantees only give a dimension reduction when "
                 "d and k stay well below n\n";
    for (const auto& line : plan.provenance) std::cerr << "  " << line << "\n";
    return kExitNoReduction;
  }
  BitSource src(a.plan.seed, 0);
  const Embedding emb = build_embedding(plan, src);
  const std::vector<RealVector> ys = apply_batch(emb, xs);
  const VectorFormat fmt = a.format.empty()  ? format_for_path(a.output)
                           : a.format == "csv" ? VectorFormat::csv
                                               : VectorFormat::binary;
  write_vectors(a.output, ys, fmt);

  nlohmann::ordered_json side = plan_json(plan);
  side["bits"] = {{"signs", emb.bits.get(BitReport::kSigns)},
                  {"rows", emb.bits.get(BitReport::kRows)},
                  {"fallback", emb.bits.get(BitReport::kFallback)},
                  {"total", emb.bits.total()}};
  const BitEstimate est = estimate_bits(plan);
  side["bits_expected"] = {{"signs", est.signs}, {"rows", est.rows}, {"fallback", est.fallback}, {"total", est.total()}};
  side["vectors"] = ys.size();
  std::ofstream(a.output + ".plan.json") << side.dump(2) << "\n";
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::uint64_t n = 1024;
  std::uint64_t k = 256;
  std::uint64_t d = 64;
  double alpha = 0.05;
  std::string shape = "spike-capped";
  double eps = 0.5;
  double delta = 0.05;
  std::uint64_t trials = 20000;
  std::uint64_t seed = 1;
  bool force_sparse = false;
};

int cmd_verify(const VerifyArgs& a) {
  static const std::vector<std::string> suites = {"linf",   "negcorr",   "bernstein", "moments",
                                                  "normal", "deviation", "endtoend",  "all"};
  if (std::find(suites.begin(), suites.end(), a.suite) == suites.end()) {
    throw InvalidArgument("unknown suite '" + a.suite + "'");
  }
  const bool all = a.suite == "all";
  const BitSource root(a.seed, 0);
  const verify::TestVectorSpec spec{a.n, a.k, a.alpha, verify::parse_shape(a.shape)};
  std::vector<verify::CheckReport> reports;
  auto run = [&](const char* name, std::uint64_t stream, auto&& fn) {
    if (!all && a.suite != name) return;
    auto got = fn(root.split(stream));
    reports.insert(reports.end(), got.begin(), got.end());
  };

  run("linf", 1, [&](const BitSource& s) { return verify::check_linf_flattening(a.n, a.delta, a.trials, s); });
  run("negcorr", 2, [&](const BitSource&) {
    // The CLI defaults suit the sampling suites; exhaustive enumeration needs
    // a small n unless one was asked for.
    const std::uint64_t n = a.n <= 20 ? a.n : 8;
    const std::uint64_t k = a.n <= 20 ? std::min(a.k, n) : 3;
    return verify::check_negative_correlation(n, k);
  });
  run("bernstein", 3, [&](const BitSource& s) {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(0.5 * i);
    return verify::check_sparse_bernstein(spec, grid, a.trials, s);
  });
  run("moments", 4, [&](const BitSource& s) { return verify::check_moment_table(spec, a.trials, s); });
  run("normal", 5, [&](const BitSource& s) { return verify::check_normal_approx(spec, a.trials, s); });
  run("deviation", 6, [&](const BitSource& s) {
    const EmbeddingPlan plan = make_manual_plan(a.n, a.d, a.k, 2, a.delta);
    return verify::check_sum_deviation(plan, spec, a.trials, s);
  });
  run("endtoend", 7, [&](const BitSource& s) {
    PlanOptions opts;
    opts.force_sparse = a.force_sparse;
    const EmbeddingPlan plan = plan_l2(a.n, a.eps, a.delta, opts);
    if (plan.mode == EmbeddingMode::no_reduction) throw PreconditionError("endtoend: plan gives no reduction");
    BitSource vs = s.derive(~std::uint64_t{0});
    const std::vector<RealVector> us = {verify::unit_spike(a.n), verify::unit_flat(a.n),
                                        verify::unit_random(a.n, vs)};
    return verify::check_end_to_end(plan, us, {"e1", "flat", "random-unit"}, a.trials, s);
  });

  for (const auto& r : reports) std::cout << verify::to_json_line(r) << "\n";
  return verify::all_passed(reports) ? 0 : kExitFail;
}

struct BenchArgs {
  std::vector<std::uint64_t> ns = {1024, 2048, 4096, 8192, 16384};
  std::vector<double> epss = {0.5};
  double delta = 0.05;
  std::uint64_t vectors = 32;
  std::uint64_t seed = 1;
  std::uint64_t d = 0;
  std::uint64_t k = 0;
  bool force_sparse = false;
};

int cmd_bench(const BenchArgs& a) {
  std::cout << "n,d,k,mode,time_us,bits\n";
  for (std::uint64_t n : a.ns) {
    for (double eps : a.epss) {
      EmbeddingPlan plan;
      if (a.d && a.k) {
        plan = make_manual_plan(n, a.d, std::min(a.k, n), 2, a.delta);
      } else {
        PlanOptions opts;
        opts.force_sparse = a.force_sparse;
        plan = plan_l2(n, eps, a.delta, opts);
      }
      if (plan.mode == EmbeddingMode::no_reduction) {
        std::cout << n << "," << plan.d << "," << plan.k << "," << to_string(plan.mode) << ",,\n";
        continue;
      }
      BitSource src(a.seed, n);
      const Embedding emb = build_embedding(plan, src);
      BitSource vs = src.derive(~std::uint64_t{0});
      std::vector<RealVector> us;
      for (std::uint64_t i = 0; i < a.vectors; ++i) us.push_back(verify::unit_random(n, vs));
      const auto start = std::chrono::steady_clock::now();
      volatile double sink = 0.0;
      for (const auto& u : us) sink = sink + sjlt::apply(emb, u).front();
      const double us_per = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count() /
                            static_cast<double>(std::max<std::uint64_t>(a.vectors, 1));
      std::cout << n << "," << plan.d << "," << plan.k << "," << to_string(plan.mode) << "," << us_per
                << "," << emb.bits.total() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse fast Johnson-Lindenstrauss embeddings with limited randomness"};
  app.require_subcommand(1);

  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "Print the parameters of an embedding");
  add_plan_flags(plan_cmd, plan_args, true);

  EmbedArgs embed_args;
  auto* embed_cmd = app.add_subcommand("embed", "Embed every vector of a file");
  embed_cmd->add_option("--input", embed_args.input, "Input vector file")->required();
  embed_cmd->add_option("--output", embed_args.output, "Output vector file")->required();
  embed_cmd->add_option("--target", embed_args.target, "l2 or l1");
  embed_cmd->add_option("--format", embed_args.format, "Output format: f64le or csv (default: by extension)")
      ->check(CLI::IsMember({"f64le", "csv"}));
  add_plan_flags(embed_cmd, embed_args.plan, false);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites, one JSON line per check");
  verify_cmd->add_option("suite", va.suite, "linf|negcorr|bernstein|moments|normal|deviation|endtoend|all")->required();
  verify_cmd->add_option("--n", va.n, "Dimension");
  verify_cmd->add_option("--k", va.k, "Nonzeros per row");
  verify_cmd->add_option("--d", va.d, "Rows (deviation suite)");
  verify_cmd->add_option("--alpha", va.alpha, "Cap on |v_j|; 0 means 1/sqrt(n)");
  verify_cmd->add_option("--shape", va.shape, "spike-capped|flat|random-unit|two-block");
  verify_cmd->add_option("--eps", va.eps, "Distortion (endtoend)");
  verify_cmd->add_option("--delta", va.delta, "Failure probability");
  verify_cmd->add_option("--trials", va.trials, "Monte-Carlo trials (seeds for endtoend)");
  verify_cmd->add_option("--seed", va.seed, "Seed");
  verify_cmd->add_flag("--force-sparse", va.force_sparse, "Keep the sparse matrix whenever k <= n");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Time embeddings over a grid; CSV to stdout");
  bench_cmd->add_option("--n", ba.ns, "Dimensions")->delimiter(',');
  bench_cmd->add_option("--eps", ba.epss, "Distortions")->delimiter(',');
  bench_cmd->add_option("--delta", ba.delta, "Failure probability");
  bench_cmd->add_option("--vectors", ba.vectors, "Vectors timed per row");
  bench_cmd->add_option("--seed", ba.seed, "Seed");
  bench_cmd->add_option("--d", ba.d, "Fix d (with --k) instead of planning");
  bench_cmd->add_option("--k", ba.k, "Fix k (with --d) instead of planning");
  bench_cmd->add_flag("--force-sparse", ba.force_sparse, "Keep the sparse matrix whenever k <= n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*plan_cmd) return cmd_plan(plan_args);
    if (*embed_cmd) return cmd_embed(embed_args);
    if (*verify_cmd) return cmd_verify(va);
    if (*bench_cmd) return cmd_bench(ba);
  } catch (const InvalidArgument& e) {
    std::cerr << "sjlt: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "sjlt: precondition: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "sjlt: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
