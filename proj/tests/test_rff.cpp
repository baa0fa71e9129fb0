#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rff.hpp"
#include "varieties.hpp"

using namespace varkernel;

namespace {

// P[chi^2 with 2m degrees of freedom > x] by the finite Poisson series.
double chi2_even_tail(int dof, double x) {
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < dof / 2; ++j) {
    term *= (x / 2.0) / j;
    sum += term;
  }
  return std::exp(-x / 2.0) * sum;
}

}  // namespace

TEST_CASE("truncation thresholds and chi-square tail") {
  const auto g10 = gaussian(1.0, 10);
  TruncatedSampler s(g10, 0.5);
  CHECK(s.threshold() == doctest::Approx(40.0));
  const double oracle = chi2_even_tail(10, 40.0);
  CHECK(oracle == doctest::Approx(1.69e-5).epsilon(0.01));
  CHECK(truncation_mass(g10, 0.5) == doctest::Approx(oracle).epsilon(1e-9));

  std::mt19937_64 rng(1);
  for (int i = 0; i < 100'000; ++i) CHECK_NOTHROW(s.next(rng));
  CHECK(s.rejection_fraction() <= 0.25);
  CHECK(s.rejection_fraction() <= oracle + 5.0 * std::sqrt(oracle / 1e5));

  CHECK(TruncatedSampler(gaussian(2.0, 4), 0.1).threshold() == doctest::Approx(20.0));
  TruncatedSampler near_one(g10, 0.999999);
  CHECK(near_one.threshold() == doctest::Approx(20.0).epsilon(1e-5));
  std::mt19937_64 rng2(2);
  for (int i = 0; i < 20'000; ++i) near_one.next(rng2);
  CHECK(near_one.rejection_fraction() <= 0.5);
  CHECK_THROWS_AS(TruncatedSampler(cauchy(1.0, 2), 0.1), CapabilityError);
}

TEST_CASE("rff model structure") {
  const auto g = gaussian(1.0, 5);
  const RffModel m = build_rff(g, 300, 0.1, 7);
  CHECK(m.rank() == 300);
  CHECK(m.scale == doctest::Approx(std::sqrt(2.0 / 300)));
  for (int i = 0; i < 300; ++i) CHECK(m.frequencies.row(i).squaredNorm() <= m.truncation_threshold);
  for (int i = 0; i < 300; ++i) CHECK((m.phases(i) >= 0.0 && m.phases(i) < 2 * M_PI));

  const auto sp = builtin("sparse", {{"d", 5}, {"k", 2}});
  const PointSet xs = sp.sample(50, 1), ys = sp.sample(50, 2);
  for (int j = 0; j < 50; ++j) {
    CHECK(m(xs.col(j), ys.col(j)) == m(ys.col(j), xs.col(j)));
    CHECK(std::abs(m(xs.col(j), ys.col(j))) <= 2.0 + 1e-12);
  }
}

TEST_CASE("models with one seed are nested") {
  const auto g = gaussian(1.0, 4);
  const RffModel big = build_rff(g, 64, 0.1, 3);
  const RffModel small = build_rff(g, 16, 0.1, 3);
  const RffModel pre = big.prefix(16);
  CHECK(pre.frequencies == small.frequencies);
  CHECK(pre.phases == small.phases);
  CHECK(pre.scale == small.scale);
}

TEST_CASE("single feature at zero frequency averages to one") {
  // K(x, x) = 2 cos^2(theta); average over uniform phases.
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> phase(0.0, 2 * M_PI);
  RffModel m;
  m.frequencies = Eigen::MatrixXd::Zero(1, 2);
  m.phases = Eigen::VectorXd(1);
  m.scale = std::sqrt(2.0);
  Eigen::Vector2d x(0.3, 0.4);
  double sum = 0.0;
  for (int i = 0; i < 100'000; ++i) {
    m.phases(0) = phase(rng);
    CHECK(m(x, x) == doctest::Approx(2.0 * std::pow(std::cos(m.phases(0)), 2)));
    sum += m(x, x);
  }
  CHECK(sum / 1e5 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("truncated kernel value matches Monte Carlo and the kernel") {
  const auto g = gaussian(1.0, 3);
  const double eps = 0.5;
  Eigen::Vector3d x(0.3, -0.1, 0.2), y(-0.4, 0.2, 0.1);
  const double tv = truncated_kernel_value(g, eps, x, y);
  CHECK(std::abs(tv - g(x, y)) <= eps);
  CHECK(std::abs(tv - g(x, y)) <= 2.0 * truncation_mass(g, eps) + 1e-12);

  // Independent rejection sampler with std::normal_distribution.
  std::mt19937_64 rng(10);
  std::normal_distribution<double> n01;
  const double t = 2.0 * g.curvature() / eps;
  double sum = 0.0, sumsq = 0.0;
  const int draws = 200'000;
  for (int i = 0; i < draws; ++i) {
    Eigen::Vector3d w;
    do {
      w << n01(rng), n01(rng), n01(rng);
    } while (w.squaredNorm() > t);
    const double c = std::cos(w.dot(x - y));
    sum += c;
    sumsq += c * c;
  }
  const double mean = sum / draws, se = std::sqrt((sumsq / draws - mean * mean) / draws);
  CHECK(std::abs(mean - tv) < 4.0 * se);

  // Large threshold: truncation is invisible.
  CHECK(truncated_kernel_value(g, 1e-3, x, y) == doctest::Approx(g(x, y)).epsilon(1e-10));
}

TEST_CASE("model average is unbiased for the truncated kernel") {
  const auto g = gaussian(1.0, 3);
  const double eps = 0.5;
  Eigen::Vector3d x(0.3, -0.1, 0.2), y(-0.4, 0.2, 0.1);
  const double tv = truncated_kernel_value(g, eps, x, y);
  double sum = 0.0, sumsq = 0.0;
  const int models = 100'000;
  for (int s = 0; s < models; ++s) {
    const double v = build_rff(g, 1, eps, static_cast<std::uint64_t>(s))(x, y);
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / models, se = std::sqrt((sumsq / models - mean * mean) / models);
  CHECK(std::abs(mean - tv) < 3.0 * se);
}

TEST_CASE("pointwise error tail") {
  const auto g = gaussian(1.0, 10);
  const auto sp = builtin("sparse", {{"d", 10}, {"k", 2}});
  const TailEstimate t = pointwise_error_tail(g, sp, 800, 0.1, 50, 100, 1);
  CHECK(t.bound_reference == doctest::Approx(std::exp(-4.0)));
  CHECK(t.bound_design == doctest::Approx(std::exp(-1.0)));
  CHECK(t.events == 5000);
  CHECK(t.exceedance <= t.bound_reference + 3.0 * t.standard_error + 1e-12);

  CHECK(pointwise_error_tail(g, sp, 1, 4.0, 20, 30, 2).exceedance == 0.0);
  CHECK(pointwise_error_tail(g, sp, 1, 0.01, 50, 100, 3).exceedance > 0.9);
  CHECK_THROWS_AS(pointwise_error_tail(g, sp, 10, 0.1, 10, 29, 1), InputError);
}

TEST_CASE("quantile interpolates linearly") {
  CHECK(quantile({4.0, 1.0, 3.0, 2.0}, 0.5) == doctest::Approx(2.5));
  CHECK(quantile({4.0, 1.0, 3.0, 2.0}, 0.0) == 1.0);
  CHECK(quantile({4.0, 1.0, 3.0, 2.0}, 1.0) == 4.0);
  CHECK(quantile({1.0, 2.0, 3.0, 4.0, 5.0}, 0.25) == doctest::Approx(2.0));
  CHECK_THROWS_AS(quantile({}, 0.5), InputError);
}

TEST_CASE("error profile shrinks with rank and is ordered") {
  const auto g = gaussian(1.0, 32);
  const auto sp = builtin("sparse", {{"d", 32}, {"k", 1}});
  const auto rows = sup_error_profile(g, sp, {64, 1024, 16384}, 3000, 0.1, 5);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.q25 <= r.q50);
    CHECK(r.q50 <= r.q75);
    CHECK(r.q75 <= r.max_err);
  }
  CHECK(rows[2].max_err < rows[0].max_err);
  // Same seed, same rows.
  const auto again = sup_error_profile(g, sp, {1024}, 3000, 0.1, 5);
  CHECK(again[0].max_err == rows[1].max_err);
  CHECK(again[0].q50 == rows[1].q50);
}

TEST_CASE("cosine polynomial") {
  const CosinePolynomial zero = cosine_polynomialize(0.0, 0.01);
  CHECK(zero.degree == 0);
  CHECK(zero(0.0, 0.7) == doctest::Approx(std::cos(0.7)));

  const double eps = 1e-3;
  const CosinePolynomial p = cosine_polynomialize(4.0, eps);
  CHECK(p.sup_error <= eps / 3.0);
  // Independent grid over u and theta.
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i)
    for (int j = 0; j < 64; ++j) {
      const double u = -2.0 + 4.0 * i / 400.0, th = 2 * M_PI * j / 64.0;
      worst = std::max(worst, std::abs(std::cos(u + th) - p(u, th)));
    }
  CHECK(worst <= eps / 3.0);
  CHECK(std::pow(1.0 + eps / 3.0, 2) - 1.0 <= eps);

  int prev = p.degree;
  for (double r2 : {8.0, 16.0, 32.0, 64.0}) {
    const int n = cosine_polynomialize(r2, eps).degree;
    CHECK(n >= prev);
    CHECK(n <= 2.5 * prev);
    prev = n;
  }
  CHECK_THROWS_AS(cosine_polynomialize(4.0, 1.0), InputError);
}
