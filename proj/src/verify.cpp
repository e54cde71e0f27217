#include "sjlt/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "sjlt/error.hpp"
#include "sjlt/kwise.hpp"
#include "sjlt/parallel.hpp"
#include "sjlt/rowsampler.hpp"
#include "sjlt/stats.hpp"
#include "sjlt/transform.hpp"

namespace sjlt::verify {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kMaxNegCorrN = 20;
constexpr double kMaxNegCorrSubsets = 1e6;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void stamp(std::vector<CheckReport>& reports, Clock::time_point start) {
  const double elapsed = seconds_since(start);
  for (auto& r : reports) r.elapsed = elapsed;
}

std::string label(const std::string& base, const std::string& key, double value) {
  std::ostringstream os;
  os << base << '[' << key << '=' << value << ']';
  return os.str();
}

CheckReport frequency_report(std::string name, std::uint64_t hits, std::uint64_t trials,
                             double bound) {
  const auto f = stats::frequency(hits, trials);
  CheckReport r;
  r.name = std::move(name);
  r.kind = CheckKind::upper;
  r.claimed_bound = bound;
  r.observed = f.mean;
  r.std_err = f.stderr_of_mean;
  r.trials = trials;
  settle(r);
  return r;
}

CheckReport mean_report(std::string name, std::span<const double> xs, double bound,
                        CheckKind kind = CheckKind::upper, double target = 0.0) {
  const auto m = stats::mean_with_stderr(xs);
  CheckReport r;
  r.name = std::move(name);
  r.kind = kind;
  r.claimed_bound = bound;
  r.target = target;
  r.observed = m.mean;
  r.std_err = m.stderr_of_mean;
  r.trials = xs.size();
  settle(r);
  return r;
}

void require_flat_enough(const TestVectorSpec& v, const char* who) {
  if (v.flatness() > kFlatnessLimit) {
    std::ostringstream os;
    os << who << ": needs (n/k) alpha^2 <= 1/10, got " << v.flatness() << " (n=" << v.n
       << ", k=" << v.k << ", alpha=" << v.effective_alpha() << ")";
    throw PreconditionError(os.str());
  }
}

void check_spec(const TestVectorSpec& v) {
  detail::require(is_pow2(v.n), "test vector: n must be a power of 2");
  detail::require(v.k >= 1 && v.k <= v.n, "test vector: k must lie in [1, n]");
}

// One W value using the caller's scratch; signs are drawn 64 at a time after
// the subset.
double draw_w(std::span<const double> v, std::uint64_t k, double scale, BitSource& src,
              std::vector<std::uint64_t>& bitset, std::vector<std::uint32_t>& indices) {
  sample_subset_into(v.size(), k, src, bitset, indices);
  double acc = 0.0;
  std::size_t t = 0;
  while (t < indices.size()) {
    const unsigned width = static_cast<unsigned>(std::min<std::size_t>(64, indices.size() - t));
    std::uint64_t bits = src.draw_uint(width) << (64 - width);
    for (unsigned b = 0; b < width; ++b, ++t, bits <<= 1) {
      const double x = v[indices[t]];
      acc += (bits >> 63) ? -x : x;
    }
  }
  return acc * scale;
}

double dot_l2(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

}  // namespace

void settle(CheckReport& r) {
  const double slack = kSigmaMargin * r.std_err;
  switch (r.kind) {
    case CheckKind::upper: r.passed = r.observed <= r.claimed_bound + slack; break;
    case CheckKind::two_sided: r.passed = std::abs(r.observed - r.target) <= r.claimed_bound + slack; break;
    case CheckKind::exact: break;
  }
}

std::string to_json_line(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["bound"] = r.claimed_bound;
  j["observed"] = r.observed;
  j["stderr"] = r.std_err;
  j["passed"] = r.passed;
  j["trials"] = r.trials;
  j["elapsed"] = r.elapsed;
  j["kind"] = r.kind == CheckKind::upper ? "upper" : r.kind == CheckKind::two_sided ? "two_sided" : "exact";
  if (r.kind == CheckKind::two_sided) j["target"] = r.target;
  return j.dump();
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
}

const char* to_string(VectorShape shape) {
  switch (shape) {
    case VectorShape::spike_capped: return "spike-capped";
    case VectorShape::flat: return "flat";
    case VectorShape::random_unit: return "random-unit";
    case VectorShape::two_block: return "two-block";
  }
  return "unknown";
}

VectorShape parse_shape(const std::string& name) {
  if (name == "spike-capped" || name == "spike") return VectorShape::spike_capped;
  if (name == "flat") return VectorShape::flat;
  if (name == "random-unit" || name == "random") return VectorShape::random_unit;
  if (name == "two-block") return VectorShape::two_block;
  detail::fail_invalid("unknown vector shape '" + name + "'");
}

double TestVectorSpec::effective_alpha() const {
  return alpha > 0.0 ? alpha : 1.0 / std::sqrt(static_cast<double>(n));
}

double TestVectorSpec::flatness() const {
  const double a = effective_alpha();
  return static_cast<double>(n) / static_cast<double>(k) * a * a;
}

RealVector make_test_vector(const TestVectorSpec& spec, BitSource& src) {
  check_spec(spec);
  const std::uint64_t n = spec.n;
  const double nn = static_cast<double>(n);
  const double alpha = spec.effective_alpha();
  // Tiny relative tolerance: alpha = 1/sqrt(n) must admit the flat vector.
  detail::require(alpha * alpha * nn >= 1.0 - 1e-12,
                  "test vector: alpha below 1/sqrt(n) admits no unit vector");
  RealVector v(n, 0.0);
  switch (spec.shape) {
    case VectorShape::flat:
      std::fill(v.begin(), v.end(), 1.0 / std::sqrt(nn));
      break;
    case VectorShape::spike_capped: {
      auto m = static_cast<std::uint64_t>(std::floor(1.0 / (alpha * alpha) + 1e-9));
      m = std::min(m, n);
      const double rest = m < n ? std::max(0.0, 1.0 - static_cast<double>(m) * alpha * alpha) : 0.0;
      const double fill = m < n ? std::sqrt(rest / static_cast<double>(n - m)) : 0.0;
      for (std::uint64_t j = 0; j < n; ++j) {
        const double mag = j < m ? alpha : fill;
        v[j] = (j % 2 == 0) ? mag : -mag;
      }
      break;
    }
    case VectorShape::random_unit: {
      for (auto& x : v) x = stats::draw_gaussian(src);
      std::vector<bool> clipped(n, false);
      // Water-filling: pin entries above the cap, rescale the free ones.
      for (int iter = 0; iter < 64; ++iter) {
        double pinned = 0.0;
        double free_sq = 0.0;
        for (std::uint64_t j = 0; j < n; ++j) {
          if (clipped[j]) pinned += alpha * alpha;
          else free_sq += v[j] * v[j];
        }
        const double scale = free_sq > 0.0 ? std::sqrt(std::max(0.0, 1.0 - pinned) / free_sq) : 0.0;
        bool changed = false;
        for (std::uint64_t j = 0; j < n; ++j) {
          if (clipped[j]) continue;
          v[j] *= scale;
          if (std::abs(v[j]) > alpha) {
            v[j] = std::copysign(alpha, v[j]);
            clipped[j] = true;
            changed = true;
          }
        }
        if (!changed) break;
      }
      break;
    }
    case VectorShape::two_block: {
      detail::require(n >= 2, "test vector: two-block needs n >= 2");
      const double b = std::sqrt(2.0 / (5.0 * nn));
      detail::require(2.0 * b <= alpha * (1.0 + 1e-12), "test vector: two-block exceeds alpha");
      for (std::uint64_t j = 0; j < n; ++j) v[j] = j < n / 2 ? 2.0 * b : -b;
      break;
    }
  }
  return v;
}

RealVector unit_spike(std::uint64_t n) {
  RealVector v(n, 0.0);
  v.at(0) = 1.0;
  return v;
}

RealVector unit_flat(std::uint64_t n) {
  return RealVector(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

RealVector unit_random(std::uint64_t n, BitSource& src) {
  RealVector v(n);
  for (auto& x : v) x = stats::draw_gaussian(src);
  const double norm = dot_l2(v);
  for (auto& x : v) x /= norm;
  return v;
}

std::vector<double> sample_w(const RealVector& v, std::uint64_t k, std::uint64_t trials,
                             const BitSource& src) {
  const double scale = std::sqrt(static_cast<double>(v.size()) / static_cast<double>(k));
  std::vector<double> out(trials);
  const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::uint64_t>(trials, 1));
  parallel_for(workers, [&](std::size_t w) {
    std::vector<std::uint64_t> bitset;
    std::vector<std::uint32_t> indices;
    for (std::uint64_t t = trials * w / workers; t < trials * (w + 1) / workers; ++t) {
      BitSource s = src.derive(t);
      out[t] = draw_w(v, k, scale, s, bitset, indices);
    }
  });
  return out;
}

std::vector<CheckReport> check_linf_flattening(std::uint64_t n, double delta, std::uint64_t trials,
                                               const BitSource& src) {
  const auto start = Clock::now();
  detail::require(is_pow2(n), "linf check: n must be a power of 2");
  detail::require(trials >= 1, "linf check: need at least one trial");
  const unsigned l = required_independence(n, delta);
  const double nn = static_cast<double>(n);
  const double threshold = std::sqrt(2.0 * std::numbers::e * std::log(2.0 * nn / delta)) / std::sqrt(nn);

  BitSource vec_src = src.derive(~std::uint64_t{0});
  std::vector<std::pair<std::string, RealVector>> inputs;
  inputs.emplace_back("e1", unit_spike(n));
  inputs.emplace_back("flat", unit_flat(n));
  inputs.emplace_back("random-unit", unit_random(n, vec_src));
  if (n >= 2) {
    TestVectorSpec tb{n, n, 1.0, VectorShape::two_block};
    inputs.emplace_back("two-block", make_test_vector(tb, vec_src));
  }

  std::vector<std::vector<std::uint8_t>> exceed(inputs.size(), std::vector<std::uint8_t>(trials));
  parallel_for(trials, [&](std::size_t t) {
    BitSource s = src.derive(t);
    const SignFamily fam = build_sign_family(n, l, s);
    RealVector v(n);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const RealVector& u = inputs[i].second;
      for (std::uint64_t j = 0; j < n; ++j) v[j] = u[j] * fam.signs[j];
      wht_inplace(v);
      double inf = 0.0;
      for (double x : v) inf = std::max(inf, std::abs(x));
      exceed[i][t] = inf >= threshold;
    }
  });

  std::vector<CheckReport> out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto hits = static_cast<std::uint64_t>(std::count(exceed[i].begin(), exceed[i].end(), 1));
    out.push_back(frequency_report("linf." + inputs[i].first, hits, trials, delta));
  }
  stamp(out, start);
  return out;
}

std::vector<CheckReport> check_negative_correlation(std::uint64_t n, std::uint64_t k) {
  using u128 = unsigned __int128;
  const auto start = Clock::now();
  detail::require(n >= 1 && k >= 1 && k <= n, "negcorr: need 1 <= k <= n");
  if (n > kMaxNegCorrN) throw BudgetExceeded("negcorr: n must be at most 20 for exact enumeration");
  std::uint64_t subsets = 1;  // C(n, k)
  for (std::uint64_t i = 0; i < k; ++i) subsets = subsets * (n - i) / (i + 1);
  if (static_cast<double>(subsets) > kMaxNegCorrSubsets) {
    throw BudgetExceeded("negcorr: C(n,k) exceeds the 10^6 enumeration budget");
  }

  // count[A] = number of k-subsets S containing A, tallied by walking every
  // submask of every S.
  std::vector<std::uint32_t> count(std::size_t{1} << n, 0);
  std::uint64_t s = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t enumerated = 0;
  while (s < limit) {
    ++enumerated;
    for (std::uint64_t a = s;; a = (a - 1) & s) {
      ++count[a];
      if (a == 0) break;
    }
    // Gosper's hack: next mask with the same popcount.
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }

  std::vector<CheckReport> out;
  for (std::uint64_t size = 0; size <= n; ++size) {
    // E prod = falling(k, size) / falling(n, size).
    u128 fall_k = 1;
    u128 fall_n = 1;
    u128 pow_k = 1;
    u128 pow_n = 1;
    for (std::uint64_t i = 0; i < size; ++i) {
      fall_k *= (k > i ? k - i : 0);
      fall_n *= n - i;
      pow_k *= k;
      pow_n *= n;
    }
    bool ok = enumerated == subsets;
    std::uint64_t sets = 0;
    std::uint32_t seen = 0;
    for (std::uint64_t a = 0; a < limit; ++a) {
      if (static_cast<std::uint64_t>(std::popcount(a)) != size) continue;
      ++sets;
      seen = count[a];
      // count/C(n,k) == fall_k/fall_n and count/C(n,k) <= (k/n)^size.
      ok = ok && u128{count[a]} * fall_n == u128{subsets} * fall_k;
      ok = ok && u128{count[a]} * pow_n <= u128{subsets} * pow_k;
    }
    CheckReport r;
    r.name = "negcorr[n=" + std::to_string(n) + ",k=" + std::to_string(k) + ",|A|=" + std::to_string(size) + "]";
    r.kind = CheckKind::exact;
    r.observed = static_cast<double>(seen) / static_cast<double>(subsets);
    r.claimed_bound = std::pow(static_cast<double>(k) / static_cast<double>(n), static_cast<double>(size));
    r.target = static_cast<double>(fall_k) / static_cast<double>(fall_n);
    r.std_err = 0.0;
    r.passed = ok;
    r.trials = sets;
    out.push_back(r);
  }
  stamp(out, start);
  return out;
}

std::vector<CheckReport> check_sparse_bernstein(const TestVectorSpec& spec,
                                                const std::vector<double>& s_grid,
                                                std::uint64_t trials, const BitSource& src) {
  const auto start = Clock::now();
  check_spec(spec);
  detail::require(trials >= 2, "bernstein check: need at least 2 trials");
  BitSource vec_src = src.derive(~std::uint64_t{0});
  const RealVector v = make_test_vector(spec, vec_src);
  const std::vector<double> w = sample_w(v, spec.k, trials, src);
  const double ratio = std::sqrt(static_cast<double>(spec.n) / static_cast<double>(spec.k));
  const double alpha = spec.effective_alpha();

  std::vector<CheckReport> out;
  for (double s : s_grid) {
    const double one_sided = std::exp(-s * s / (2.0 + (2.0 / 3.0) * ratio * alpha * s));
    const auto upper = static_cast<std::uint64_t>(std::count_if(w.begin(), w.end(), [s](double x) { return x >= s; }));
    const auto both = static_cast<std::uint64_t>(std::count_if(w.begin(), w.end(), [s](double x) { return std::abs(x) >= s; }));
    out.push_back(frequency_report(label("bernstein.upper", "s", s), upper, trials, one_sided));
    out.push_back(frequency_report(label("bernstein.abs", "s", s), both, trials, 2.0 * one_sided));
  }
  stamp(out, start);
  return out;
}

std::vector<CheckReport> check_moment_table(const TestVectorSpec& spec, std::uint64_t trials,
                                            const BitSource& src) {
  const auto start = Clock::now();
  check_spec(spec);
  require_flat_enough(spec, "moment table");
  detail::require(trials >= 2, "moment table: need at least 2 trials");
  BitSource vec_src = src.derive(~std::uint64_t{0});
  const RealVector v = make_test_vector(spec, vec_src);
  const std::vector<double> w = sample_w(v, spec.k, trials, src);

  std::vector<CheckReport> out;
  std::vector<double> powers(trials);
  for (std::uint64_t t = 0; t < trials; ++t) powers[t] = w[t] * w[t];
  out.push_back(mean_report("moments.E[W^2]", powers, 0.0, CheckKind::two_sided, 1.0));
  constexpr double bounds[] = {3.1, 17.0, 127.0, 1283.0};
  for (int p = 0; p < 4; ++p) {
    for (std::uint64_t t = 0; t < trials; ++t) powers[t] *= w[t] * w[t];
    out.push_back(mean_report("moments.E[W^" + std::to_string(2 * p + 4) + "]", powers, bounds[p]));
  }
  stamp(out, start);
  return out;
}

std::vector<CheckReport> check_normal_approx(const TestVectorSpec& spec, std::uint64_t trials,
                                             const BitSource& src) {
  const auto start = Clock::now();
  check_spec(spec);
  detail::require(trials >= 2, "normal approximation: need at least 2 trials");
  BitSource vec_src = src.derive(~std::uint64_t{0});
  const RealVector v = make_test_vector(spec, vec_src);
  std::vector<double> w = sample_w(v, spec.k, trials, src);
  const double ratio = static_cast<double>(spec.n) / static_cast<double>(spec.k);

  std::vector<CheckReport> out;
  std::vector<double> absw(trials);
  for (std::uint64_t t = 0; t < trials; ++t) absw[t] = std::abs(w[t]);
  out.push_back(mean_report("normal.E|W|", absw, 1.5 * spec.effective_alpha() * std::sqrt(ratio),
                            CheckKind::two_sided, std::sqrt(2.0 / std::numbers::pi)));

  // 3 sum_j E|X_j|^3 with E|X_j|^3 = (k/n) (n/k)^{3/2} |v_j|^3.
  double third = 0.0;
  for (double x : v) third += std::pow(std::abs(x), 3.0);
  const double stein = 3.0 * std::sqrt(ratio) * third;
  std::sort(w.begin(), w.end());
  CheckReport r;
  r.name = "normal.wasserstein";
  r.kind = CheckKind::upper;
  r.claimed_bound = stein;
  r.observed = stats::wasserstein_to_normal(w);
  r.std_err = stats::wasserstein_sampling_scale(w);
  r.trials = trials;
  settle(r);
  out.push_back(r);
  stamp(out, start);
  return out;
}

std::vector<CheckReport> check_sum_deviation(const EmbeddingPlan& plan, const TestVectorSpec& spec,
                                             std::uint64_t trials, const BitSource& src,
                                             const std::vector<double>& t_multipliers) {
  const auto start = Clock::now();
  check_spec(spec);
  detail::require(plan.n == spec.n && plan.k == spec.k, "sum deviation: plan and vector disagree on n or k");
  detail::require(trials >= 2, "sum deviation: need at least 2 trials");
  require_flat_enough(spec, "sum deviation");
  BitSource vec_src = src.derive(~std::uint64_t{0});
  const RealVector v = make_test_vector(spec, vec_src);
  const std::uint64_t d = plan.d;
  const double dd = static_cast<double>(d);
  const double scale = std::sqrt(static_cast<double>(spec.n) / static_cast<double>(spec.k));

  std::vector<double> z2(trials);
  std::vector<double> z1(trials);
  const std::size_t workers = std::min<std::size_t>(worker_count(), trials);
  parallel_for(workers, [&](std::size_t w) {
    std::vector<std::uint64_t> bitset;
    std::vector<std::uint32_t> indices;
    for (std::uint64_t t = trials * w / workers; t < trials * (w + 1) / workers; ++t) {
      BitSource s = src.derive(t);
      double sq = 0.0;
      double ab = 0.0;
      for (std::uint64_t i = 0; i < d; ++i) {
        const double x = draw_w(v, spec.k, scale, s, bitset, indices);
        sq += x * x;
        ab += std::abs(x);
      }
      z2[t] = sq;
      z1[t] = ab;
    }
  });

  std::vector<double> ts;
  const std::vector<double> mult =
      t_multipliers.empty() ? std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0}
                            : t_multipliers;
  for (double c : mult) ts.push_back(c * std::sqrt(dd));
  ts.push_back(dd / 2.0);

  double mean1 = 0.0;
  for (double x : z1) mean1 += x;
  mean1 /= static_cast<double>(trials);

  const double alpha = spec.effective_alpha();
  const double truncation = std::exp(-3.0 * static_cast<double>(spec.k) /
                                         (4.0 * static_cast<double>(spec.n) * alpha * alpha) +
                                     std::log(2.0 * dd));
  std::vector<CheckReport> out;
  for (double t : ts) {
    const auto up = static_cast<std::uint64_t>(std::count_if(z2.begin(), z2.end(), [&](double z) { return z >= dd + t; }));
    const auto lo = static_cast<std::uint64_t>(std::count_if(z2.begin(), z2.end(), [&](double z) { return z <= dd - t; }));
    const auto l1 = static_cast<std::uint64_t>(std::count_if(z1.begin(), z1.end(), [&](double z) { return std::abs(z - mean1) >= t; }));
    out.push_back(frequency_report(label("deviation.l2.upper", "t", t), up, trials,
                                   std::exp(-t * t / (6.2 * dd + 12.0 * t)) + truncation));
    out.push_back(frequency_report(label("deviation.l2.lower", "t", t), lo, trials,
                                   t == 0.0 ? 1.0 : std::exp(-t * t / (6.0 * dd))));
    out.push_back(frequency_report(label("deviation.l1", "t", t), l1, trials,
                                   2.0 * std::exp(-t * t / (2.0 * dd + 8.0 * t / 3.0))));
  }
  stamp(out, start);
  return out;
}

std::vector<CheckReport> check_end_to_end(const EmbeddingPlan& plan,
                                          const std::vector<RealVector>& us,
                                          const std::vector<std::string>& names,
                                          std::uint64_t seeds, const BitSource& src) {
  const auto start = Clock::now();
  detail::require(names.size() == us.size(), "end-to-end: one name per vector");
  detail::require(seeds >= 1, "end-to-end: need at least one seed");
  std::vector<std::vector<std::uint8_t>> failed(us.size(), std::vector<std::uint8_t>(seeds));
  std::vector<double> norms;
  for (const auto& u : us) norms.push_back(dot_l2(u));
  parallel_for(seeds, [&](std::size_t s) {
    BitSource es = src.derive(s);
    const Embedding emb = build_embedding(plan, es);
    for (std::size_t i = 0; i < us.size(); ++i) {
      const RealVector y = sjlt::apply(emb, us[i]);
      failed[i][s] = !within_distortion(plan, norm_estimate(plan, y) / norms[i]);
    }
  });
  std::vector<CheckReport> out;
  const std::string base = plan.q == 1 ? "endtoend.l1." : "endtoend.l2.";
  for (std::size_t i = 0; i < us.size(); ++i) {
    const auto hits = static_cast<std::uint64_t>(std::count(failed[i].begin(), failed[i].end(), 1));
    out.push_back(frequency_report(base + names[i], hits, seeds, 2.0 * plan.delta));
  }
  stamp(out, start);
  return out;
}

CheckReport check_pointset_end_to_end(const EmbeddingPlan& plan,
                                      const std::vector<RealVector>& points, std::uint64_t seeds,
                                      const BitSource& src) {
  const auto start = Clock::now();
  detail::require(points.size() >= 2, "point-set check: need at least 2 points");
  detail::require(plan.fail_prob > 0.0, "point-set check: plan has no failure probability");
  std::vector<std::uint8_t> failed(seeds);
  parallel_for(seeds, [&](std::size_t s) {
    BitSource es = src.derive(s);
    const Embedding emb = build_embedding(plan, es);
    const std::vector<RealVector> images = apply_batch(emb, points);
    bool bad = false;
    for (std::size_t i = 0; i < points.size() && !bad; ++i) {
      for (std::size_t j = i + 1; j < points.size() && !bad; ++j) {
        RealVector diff(points[i].size());
        for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = points[i][c] - points[j][c];
        RealVector img(images[i].size());
        for (std::size_t c = 0; c < img.size(); ++c) img[c] = images[i][c] - images[j][c];
        bad = !within_distortion(plan, norm_estimate(plan, img) / dot_l2(diff));
      }
    }
    failed[s] = bad;
  });
  const auto hits = static_cast<std::uint64_t>(std::count(failed.begin(), failed.end(), 1));
  CheckReport r = frequency_report("endtoend.pointset[N=" + std::to_string(points.size()) + "]",
                                   hits, seeds, plan.fail_prob);
  r.elapsed = seconds_since(start);
  return r;
}

}  // namespace sjlt::verify
