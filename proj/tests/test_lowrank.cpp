#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "hilbert.hpp"
#include "lowrank.hpp"
#include "varieties.hpp"

using namespace varkernel;

namespace {

std::set<std::vector<int>> exponent_set(const MonomialBasis& b) {
  std::set<std::vector<int>> s;
  for (const auto& m : b.monomials) s.insert(m.exponents);
  return s;
}

// R_n(x, y) = sum_k <x, y>^k / k!.
PolynomialKernel exp_truncation(int n) {
  std::vector<double> c(static_cast<std::size_t>(n + 1));
  double f = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) f *= k;
    c[static_cast<std::size_t>(k)] = 1.0 / f;
  }
  return rotation_invariant_polynomial(c);
}

}  // namespace

TEST_CASE("standard monomial features") {
  CHECK(exponent_set(standard_monomial_features(builtin("sparse", {{"d", 2}, {"k", 1}}), 2)) ==
        std::set<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}});
  CHECK(exponent_set(standard_monomial_features(builtin("sphere", {{"d", 2}}), 2)) ==
        std::set<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}});
  CHECK(standard_monomial_features(builtin("full", {{"d", 3}}), 2).size() == 10);
  CHECK_THROWS_AS(standard_monomial_features(builtin("so3", {}), 1), CapabilityError);
}

TEST_CASE("unisolvent designs") {
  const auto circle = builtin("sphere", {{"d", 2}});
  const UnisolventDesign d1 = select_unisolvent(circle, 1, 40, 3);
  CHECK(d1.points.cols() == 3);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d1.vdm);
  const auto s = svd.singularValues();
  CHECK(s(s.size() - 1) >= 1e-10 * s(0));

  const UnisolventDesign so3 = select_unisolvent(builtin("so3", {}), 1, 40, 3);
  CHECK(so3.points.cols() == 10);
  CHECK(so3.basis.size() == 10);
  CHECK(std::isfinite(so3.condition_estimate));

  CHECK(select_unisolvent(builtin("trig", {{"d", 4}}), 2, 36, 3).points.cols() == 9);
  CHECK_THROWS_AS(select_unisolvent(circle, 2, 19, 3), InputError);
}

TEST_CASE("degenerate candidate sets are reported") {
  const auto circle = builtin("sphere", {{"d", 2}});
  PointSet same(2, 20);
  for (int j = 0; j < 20; ++j) same.col(j) << 1.0, 0.0;
  CHECK_THROWS_AS(select_unisolvent(circle, 1, same), DegenerateSamplingError);
}

TEST_CASE("exact ranks of the degree-two exponential truncation") {
  const PolynomialKernel r2 = exp_truncation(2);
  CHECK(exact_rank(builtin("full", {{"d", 2}}), r2, 2, 1) == 6);
  CHECK(exact_rank(builtin("sparse", {{"d", 2}, {"k", 1}}), r2, 2, 1) == 5);
  CHECK(exact_rank(builtin("sphere", {{"d", 2}}), r2, 2, 1) == 5);
  CHECK(exact_rank(builtin("trig", {{"d", 6}}), exp_truncation(3), 3, 1) == 19);
  CHECK_THROWS_AS(exact_rank(builtin("full", {{"d", 2}}), r2, 1, 1), InputError);
}

TEST_CASE("taylor features on a variety") {
  const auto sp = builtin("sparse", {{"d", 20}, {"k", 1}});
  const LowRankFactorization f = taylor_on_variety(sp, 2, 1.0, 1);
  CHECK(f.rank == 41);
  CHECK(taylor_on_variety(sp, 0, 1.0, 1).rank == 1);
  CHECK(taylor_on_variety(builtin("sphere", {{"d", 3}}), 2, 1.0, 1).rank == 9);
  CHECK(taylor_on_variety(builtin("so3", {}), 1, 1.0, 1).rank == 10);

  // Reconstruction matches the feature inner product and the truncated kernel on V.
  const PointSet xs = sp.sample(200, 5), ys = sp.sample(200, 6);
  const Eigen::MatrixXd L = f.left_features(xs), R = f.right_features(ys);
  CHECK(L.rows() == f.rank);
  const PolynomialKernel t2 = taylor_features_profile(2, 1.0);
  const Eigen::VectorXd pairs = f.evaluate_pairs(xs, ys);
  for (int j = 0; j < 200; ++j) {
    const double direct = L.col(j).dot(R.col(j));
    CHECK(pairs(j) == doctest::Approx(direct).epsilon(1e-12));
    const double truth = taylor_scaling(xs.col(j), 1.0) * taylor_scaling(ys.col(j), 1.0) * t2(xs.col(j), ys.col(j));
    CHECK(std::abs(pairs(j) - truth) < 1e-9);
    CHECK(std::abs(f(xs.col(j), ys.col(j)) - f(ys.col(j), xs.col(j))) < 1e-12);
  }
}

TEST_CASE("taylor audit is bounded by its certificate") {
  const auto sp = builtin("sparse", {{"d", 20}, {"k", 1}});
  const auto g = gaussian(1.0, 20);
  for (int n = 1; n <= 3; ++n) {
    const LowRankFactorization f = taylor_on_variety(sp, n, 1.0, 1);
    const double err = audit_sup_error(f, g, sp, {20'000, 9});
    CHECK(err <= f.certificate.certified + 1e-9);
    CHECK(err >= f.certificate.certified / 10.0);
  }
}

TEST_CASE("chebyshev pipeline on the plane") {
  const auto full = builtin("full", {{"d", 2}});
  const auto g = gaussian(1.0, 2);
  const ApproximationResult r = approximate_on_variety(g, full, 1e-6, 2, {20'000, 4});
  const int n = r.fit.degree;
  CHECK(r.design_degree == 2 * n);
  CHECK(BigInt(r.factorization.rank) <= binomial(2 * n + 2, 2));
  CHECK(r.factorization.certificate.measured_sup_error <= 1e-6);
  CHECK(r.factorization.certificate.audit_pairs == 20'000);
}

TEST_CASE("chebyshev pipeline at eps one is a constant") {
  const auto sp = builtin("sparse", {{"d", 5}, {"k", 1}});
  const ApproximationResult r = approximate_on_variety(gaussian(1.0, 5), sp, 1.0, 2, {5'000, 4});
  CHECK(r.factorization.rank == 1);
  CHECK(r.factorization.certificate.measured_sup_error <= 1.0);
}

TEST_CASE("audit is deterministic") {
  const auto sp = builtin("sparse", {{"d", 6}, {"k", 1}});
  const auto g = gaussian(1.0, 6);
  const LowRankFactorization f = taylor_on_variety(sp, 2, 1.0, 1);
  CHECK(audit_sup_error(f, g, sp, {5000, 3}) == audit_sup_error(f, g, sp, {5000, 3}));
  const Eigen::VectorXd errs = audit_errors(f, g, sp, {5000, 3});
  CHECK(errs.size() == 5000);
  CHECK(errs.maxCoeff() == audit_sup_error(f, g, sp, {5000, 3}));
}

TEST_CASE("nystrom reproduces its landmarks") {
  const auto sp = builtin("sparse", {{"d", 4}, {"k", 2}});
  const auto g = gaussian(1.0, 4);
  const PointSet pts = sp.sample(12, 8);
  const LowRankFactorization f = nystrom(g, pts, 1e-12);
  CHECK(f.rank <= 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) CHECK(std::abs(f(pts.col(i), pts.col(j)) - g(pts.col(i), pts.col(j))) < 1e-8);
}

TEST_CASE("nystrom with one landmark at the origin") {
  const auto g = gaussian(1.0, 3);
  const double jitter = 1e-3;
  const LowRankFactorization f = nystrom(g, PointSet::Zero(3, 1), jitter);
  Eigen::Vector3d x(0.2, -0.4, 0.1), y(0.5, 0.0, -0.3);
  const double expected = std::exp(-(x.squaredNorm() + y.squaredNorm()) / 2.0) / (1.0 + jitter);
  CHECK(f(x, y) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("nystrom input checks") {
  const auto g = gaussian(1.0, 2);
  PointSet dup(2, 2);
  dup << 0.1, 0.1, 0.2, 0.2;
  CHECK_THROWS_AS(nystrom(g, dup), InputError);
  CHECK_THROWS_AS(nystrom(g, PointSet::Zero(2, 1), -1.0), InputError);
  CHECK_THROWS_AS(nystrom(g, PointSet::Zero(3, 1)), InputError);
}

TEST_CASE("factorize_on_design recovers a polynomial kernel exactly") {
  const auto sph = builtin("sphere", {{"d", 3}});
  const PolynomialKernel r3 = exp_truncation(3);
  const UnisolventDesign design = select_unisolvent(sph, 3, 200, 4);
  const LowRankFactorization f = factorize_on_design(design, r3.gram(design.points, design.points), 1e-13, true);
  CHECK(BigInt(f.rank) <= hf(sph, 3).value);
  const PointSet xs = sph.sample(100, 1), ys = sph.sample(100, 2);
  for (int j = 0; j < 100; ++j) CHECK(std::abs(f(xs.col(j), ys.col(j)) - r3(xs.col(j), ys.col(j))) < 1e-9);
}
