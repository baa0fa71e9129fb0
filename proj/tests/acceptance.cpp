// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hilbert.hpp"
#include "kernels.hpp"
#include "lowrank.hpp"
#include "norming.hpp"
#include "rff.hpp"
#include "varieties.hpp"

using namespace varkernel;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failed;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failed += " [failed: " + what + "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const std::vector<std::string> kBuiltins{"full:d=3",     "sphere:d=3", "sparse:d=5,k=2", "rank1:m1=2,m2=3",
                                         "symrank1:m=3", "trig:d=6",   "so3"};

// 1. Closed form, standard monomials and Vandermonde rank agree.
void triple_agreement(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  int checks = 0;
  for (const auto& text : kBuiltins) {
    const VarietySpec s = parse_variety(text);
    for (int n = 0; n <= 5; ++n) {
      const BigInt closed = s.hf_closed_form(n);
      if (s.lt_generators) {
        const BigInt count = count_standard_monomials(*s.lt_generators, s.ambient_dim, n);
        o.require(count == closed, text + " n=" + std::to_string(n) + " monomials " + to_string(count));
      }
      const BigInt rank = hf_via_rank(s, n, 4, derive_seed(1, static_cast<std::uint64_t>(n)), 1e-8).value;
      o.require(rank == closed, text + " n=" + std::to_string(n) + " rank " + to_string(rank) + " vs " + to_string(closed));
      ++checks;
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs <= 60.0, "runtime over 60 s");
  o.detail << checks << " (variety, n) cells, " << secs << " s";
}

// 2. Exact ranks of R_2.
void example_ranks(Outcome& o) {
  const PolynomialKernel r2 = rotation_invariant_polynomial({1.0, 1.0, 0.5});
  const int full = exact_rank(builtin("full", {{"d", 2}}), r2, 2, 1);
  const int sparse = exact_rank(builtin("sparse", {{"d", 2}, {"k", 1}}), r2, 2, 1);
  const int circle = exact_rank(builtin("sphere", {{"d", 2}}), r2, 2, 1);
  o.require(full == 6 && sparse == 5 && circle == 5, "ranks");
  o.detail << "plane " << full << ", 1-sparse " << sparse << ", circle " << circle;
}

// 3. Sparse Hilbert function vs the degree-based bound.
void sparse_headline(Outcome& o) {
  const auto s = builtin("sparse", {{"d", 100}, {"k", 5}});
  const BigInt h = hf(s, 2).value;
  const BigInt prior = binomial(100, 5) * binomial(7, 5);
  const BigInt ratio = prior / h;
  o.require(h == 5151, "hf");
  o.require(prior == BigInt("1581037920"), "prior bound");
  o.require(ratio >= 100000, "ratio");
  o.detail << "hf " << to_string(h) << ", prior " << to_string(prior) << ", ratio " << to_string(ratio);
}

// 4. Hilbert functions of the trig curve and SO(3).
void trig_and_rotation_curves(Outcome& o) {
  const auto trig = builtin("trig", {{"d", 100}});
  const auto so3 = builtin("so3", {});
  for (int n = 0; n <= 8; ++n) {
    o.require(hf(trig, n).value == 100 * n + 1, "trig n=" + std::to_string(n));
    o.require(hf(so3, n).value == (2 * n + 3) * (2 * n + 1) * (n + 1) / 3, "so3 n=" + std::to_string(n));
  }
  std::ostringstream ranks;
  for (int n = 0; n <= 2; ++n) {
    const BigInt r = hf_via_rank(so3, n, 4, 7, 1e-8).value;
    ranks << (n ? "," : "") << to_string(r);
    o.require(r == (2 * n + 3) * (2 * n + 1) * (n + 1) / 3, "so3 rank n=" + std::to_string(n));
  }
  o.detail << "trig 1..801 and so3 formula for n <= 8; so3 rank oracle " << ranks.str();
}

// 5. Chebyshev pipeline on 1-sparse R^20.
void high_precision(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sp = builtin("sparse", {{"d", 20}, {"k", 1}});
  const auto g = gaussian(1.0, 20);
  const ApproximationResult r = approximate_on_variety(g, sp, 1e-6, 5, {100'000, 55});
  const int n = r.fit.degree;
  const BigInt cap = hf(sp, 2 * n).value;
  const double err = r.factorization.certificate.measured_sup_error;
  o.require(BigInt(r.factorization.rank) <= cap, "rank above hf(2n)");
  o.require(err <= 1e-6, "audited error above 1e-6");

  // Decay of the profile fit error with degree against the certificate rate.
  std::vector<double> xs, ys;
  for (int m = 1; m <= n; ++m) {
    xs.push_back(m);
    ys.push_back(std::log(cheb_fit(g, m).sup_error));
  }
  const double s = slope(xs, ys);
  const double log_beta = std::log(r.fit.certificate->beta);
  o.require(s <= log_beta + 0.05, "log-error slope");
  const double secs = seconds_since(t0);
  o.require(secs <= 300.0, "runtime over 5 min");
  o.detail << "n " << n << ", rank " << r.factorization.rank << " <= hf(2n) " << to_string(cap) << ", audited "
           << err << ", slope " << s << " vs log beta " << log_beta << ", " << secs << " s";
}

// 6. Taylor-on-variety vs Nystrom at rank 41.
void taylor_vs_nystrom(Outcome& o) {
  const auto sp = builtin("sparse", {{"d", 20}, {"k", 1}});
  const auto g = gaussian(1.0, 20);
  const AuditOptions audit{100'000, 66};
  const LowRankFactorization taylor = taylor_on_variety(sp, 2, 1.0, 6);
  const double taylor_err = audit_sup_error(taylor, g, sp, audit);
  double nys = 0.0;
  const int runs = 50;
  for (int run = 0; run < runs; ++run) {
    const PointSet landmarks = sp.sample(taylor.rank, derive_seed(6, 100 + static_cast<std::uint64_t>(run)));
    nys += audit_sup_error(nystrom(g, landmarks, 1e-10), g, sp, audit);
  }
  nys /= runs;
  const double ratio = nys / taylor_err;
  o.require(ratio >= 100.0, "ratio below 100");
  o.detail << "rank " << taylor.rank << ", taylor " << taylor_err << ", nystrom mean " << nys << ", ratio " << ratio;
}

// 7. RFF error scaling, dimension dependence and truncation.
void rff_scaling(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const double eps = 0.1;
  std::vector<int> grid;
  for (int p = 6; p <= 14; ++p) grid.push_back(1 << p);
  const auto s32 = builtin("sparse", {{"d", 32}, {"k", 1}});
  const auto g32 = gaussian(1.0, 32);
  const auto rows = sup_error_profile(g32, s32, grid, 100'000, eps, 7);
  std::vector<double> lx, ly;
  for (const auto& r : rows) {
    lx.push_back(std::log(r.rank));
    ly.push_back(std::log(r.max_err));
  }
  const double sl = slope(lx, ly);
  o.require(sl >= -0.65 && sl <= -0.35, "max-error slope");

  const auto s128 = builtin("sparse", {{"d", 128}, {"k", 1}});
  const auto m32 = sup_error_profile(g32, s32, {2048}, 100'000, eps, 70);
  const auto m128 = sup_error_profile(gaussian(1.0, 128), s128, {2048}, 100'000, eps, 71);
  const double med_ratio = m32[0].q50 / m128[0].q50;
  o.require(med_ratio >= 0.5 && med_ratio <= 2.0, "median ratio");

  bool inside = true;
  double worst_excess = -1.0;
  for (const auto& [kernel, label] : {std::pair{g32, 32}, std::pair{gaussian(1.0, 128), 128}}) {
    const RffModel m = build_rff(kernel, 16384, eps, 77 + static_cast<std::uint64_t>(label));
    for (int i = 0; i < m.rank(); ++i) inside = inside && m.frequencies.row(i).squaredNorm() <= m.truncation_threshold;
    const double p = m.truncation_mass_estimate;
    const double se = std::sqrt(std::max(p * (1 - p), 0.0) / static_cast<double>(m.draws));
    worst_excess = std::max(worst_excess, p - (eps / 2 + 3 * se));
  }
  o.require(inside, "stored frequency outside the ball");
  o.require(worst_excess <= 0.0, "rejection mass above eps/2 + 3 SE");
  const double secs = seconds_since(t0);
  o.require(secs <= 600.0, "runtime over 10 min");
  o.detail << "slope " << sl << ", median ratio d32/d128 " << med_ratio << ", max err r=64 " << rows.front().max_err
           << " r=16384 " << rows.back().max_err << ", " << secs << " s";
}

// 8. Pointwise tail against the Hoeffding bound.
void hoeffding(Outcome& o) {
  const auto sp = builtin("sparse", {{"d", 20}, {"k", 1}});
  const auto g = gaussian(1.0, 20);
  for (int r : {200, 800, 3200}) {
    const TailEstimate t = pointwise_error_tail(g, sp, r, 0.1, 100, 200, 8 + static_cast<std::uint64_t>(r));
    o.require(t.exceedance <= t.bound_design + 3 * t.standard_error, "r=" + std::to_string(r));
    o.detail << "r=" << r << ": " << t.exceedance << " <= " << t.bound_design << " (reference " << t.bound_reference
             << "); ";
  }
}

// 9. Empirical slack of Fekete and tensored norming sets.
void norming(Outcome& o) {
  double worst = 0.0;
  std::string worst_at;
  for (const auto& text : kBuiltins) {
    const VarietySpec s = parse_variety(text);
    for (int n = 1; n <= 4; ++n) {
      const NormingSet ns = norming_set(s, n, 1, 0, derive_seed(9, static_cast<std::uint64_t>(n)));
      const SlackAudit a = audit_slack(ns, s, n, 200, 20'000, derive_seed(90, static_cast<std::uint64_t>(n)));
      o.require(a.empirical <= a.certified, text + " n=" + std::to_string(n));
      if (a.empirical / a.certified > worst) {
        worst = a.empirical / a.certified;
        worst_at = text + " n=" + std::to_string(n);
      }
    }
  }
  const auto sph = builtin("sphere", {{"d", 3}});
  const NormingSet tens = norming_set(sph, 2, 4, 0, 99);
  const SlackAudit at = audit_slack(tens, sph, 2, 200, 20'000, 999);
  o.require(tens.certified_slack <= 3.0 + 1e-12, "tensored certificate");
  o.require(at.empirical <= 3.0, "tensored slack");
  o.detail << "largest slack/hf " << worst << " at " << worst_at << "; tensored sphere " << at.empirical
           << " <= " << tens.certified_slack << " with " << tens.size << " points";
}

// 10. Uniform cosine polynomial.
void cosine(Outcome& o) {
  const double eps = 1e-3;
  const CosinePolynomial p = cosine_polynomialize(4.0, eps);
  o.require(p.sup_error <= eps / 3, "uniform error");
  const double product_bound = std::pow(1 + eps / 3, 2) - 1;
  o.require(product_bound <= eps, "product inequality");
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-2.0, 2.0), th(0.0, 2 * M_PI);
  double worst = 0.0;
  for (int i = 0; i < 10'000; ++i) {
    const double u1 = u(rng), t1 = th(rng), u2 = u(rng), t2 = th(rng);
    worst = std::max(worst, std::abs(std::cos(u1 + t1) * std::cos(u2 + t2) - p(u1, t1) * p(u2, t2)));
  }
  o.require(worst <= product_bound, "product error");
  double factor = 0.0;
  int prev = p.degree;
  std::ostringstream degrees;
  degrees << prev;
  for (double r2 : {8.0, 16.0, 32.0, 64.0, 128.0}) {
    const int n = cosine_polynomialize(r2, eps).degree;
    factor = std::max(factor, static_cast<double>(n) / prev);
    degrees << "," << n;
    prev = n;
  }
  o.require(factor <= 2.5, "doubling factor");
  o.detail << "degree " << p.degree << ", sup " << p.sup_error << ", pair error " << worst << " <= " << product_bound
           << ", degrees " << degrees.str() << ", max factor " << factor;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"hilbert function triple agreement", triple_agreement},
      {"exact ranks of the degree-two exponential kernel", example_ranks},
      {"sparse hilbert function vs degree bound", sparse_headline},
      {"trig curve and SO(3) hilbert functions", trig_and_rotation_curves},
      {"chebyshev pipeline to 1e-6", high_precision},
      {"taylor on variety vs nystrom at equal rank", taylor_vs_nystrom},
      {"random feature error scaling", rff_scaling},
      {"pointwise hoeffding tail", hoeffding},
      {"norming set slack", norming},
      {"uniform cosine polynomial", cosine},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.failed += std::string(" [exception: ") + e.what() + "]";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu (%s): %s - %s%s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.str().c_str(), o.failed.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
