#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "polybasis.hpp"

using namespace varkernel;

namespace {

// Counts exponent vectors with sum <= n by plain recursion.
long brute_count(int d, int n) {
  if (d == 0) return 1;
  long total = 0;
  for (int e = 0; e <= n; ++e) total += brute_count(d - 1, n - e);
  return total;
}

Monomial random_monomial(std::mt19937_64& rng, int d, int max_exp) {
  std::uniform_int_distribution<int> u(0, max_exp);
  std::vector<int> e(static_cast<std::size_t>(d));
  for (auto& x : e) x = u(rng);
  return Monomial(e);
}

}  // namespace

TEST_CASE("enumerate_monomials sizes") {
  CHECK(enumerate_monomials(2, 2).size() == 6);
  CHECK(enumerate_monomials(5, 0).size() == 1);
  CHECK(enumerate_monomials(3, 4).size() == 35);
  for (int d = 1; d <= 5; ++d)
    for (int n = 0; n <= 5; ++n) CHECK(enumerate_monomials(d, n).size() == static_cast<std::size_t>(brute_count(d, n)));
}

TEST_CASE("enumerated basis is sorted, graded and duplicate free") {
  for (auto order : {MonomialOrder::grevlex(3), MonomialOrder::grlex(3)}) {
    const MonomialBasis b = enumerate_monomials(3, 4, order);
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < b.size(); ++i) {
      CHECK(b.monomials[i].degree() <= 4);
      seen.insert(b.monomials[i].exponents);
      if (i > 0) {
        CHECK(order.less(b.monomials[i - 1], b.monomials[i]));
        CHECK(b.monomials[i - 1].degree() <= b.monomials[i].degree());
      }
    }
    CHECK(seen.size() == b.size());
  }
}

TEST_CASE("monomial orders are total and graded") {
  std::mt19937_64 rng(7);
  for (auto order : {MonomialOrder::grevlex(4), MonomialOrder::grlex(4)}) {
    for (int t = 0; t < 500; ++t) {
      const Monomial a = random_monomial(rng, 4, 3), b = random_monomial(rng, 4, 3), c = random_monomial(rng, 4, 3);
      CHECK(order.compare(a, b) == -order.compare(b, a));
      CHECK((order.compare(a, b) == 0) == (a == b));
      if (a.degree() < b.degree()) CHECK(order.less(a, b));
      if (order.less(a, b) && order.less(b, c)) CHECK(order.less(a, c));
    }
  }
}

TEST_CASE("grevlex and grlex differ in degree three") {
  // x1 x3^2 vs x2^3 is not decided the same way: grlex compares x1 first,
  // grevlex looks at the last variable.
  const Monomial a({1, 0, 2}), b({0, 3, 0}), c({1, 1, 1}), e({0, 2, 1});
  CHECK(MonomialOrder::grlex(3).less(b, a));
  CHECK(MonomialOrder::grevlex(3).less(a, b));
  CHECK(MonomialOrder::grevlex(3).less(e, c));
}

TEST_CASE("monomial evaluation and divisibility") {
  const Monomial m({2, 0, 3});
  const double x[3] = {-1.5, 4.0, 0.5};
  CHECK(m.evaluate(x) == doctest::Approx(std::pow(-1.5, 2) * std::pow(0.5, 3)).epsilon(1e-15));
  CHECK(ipow(-2.0, 5) == -32.0);
  CHECK(ipow(3.0, 0) == 1.0);
  CHECK(Monomial({1, 0, 1}).divides(m));
  CHECK_FALSE(Monomial({0, 1, 0}).divides(m));
  CHECK(Monomial::one(3).divides(m));
  CHECK(m.degree() == 5);
}

TEST_CASE("vandermonde of the affine basis at three points") {
  const MonomialBasis b = make_basis({Monomial({0, 0}), Monomial({1, 0}), Monomial({0, 1})}, MonomialOrder::grevlex(2));
  PointSet pts(2, 3);
  pts << 1, 0, 0, 0, 1, 0;
  const Eigen::MatrixXd v = vandermonde(pts, b);
  REQUIRE(v.rows() == 3);
  REQUIRE(v.cols() == 3);
  // Row order follows the basis; check by value.
  for (std::size_t i = 0; i < b.size(); ++i)
    for (int j = 0; j < 3; ++j) CHECK(v(static_cast<Eigen::Index>(i), j) == b.monomials[i].evaluate(pts.col(j).data()));
  CHECK(numerical_rank(v) == 3);
}

TEST_CASE("numerical_rank examples") {
  CHECK(numerical_rank(Eigen::MatrixXd::Identity(4, 4), 1e-8) == 4);
  Eigen::VectorXd u(5), w(3);
  u << 1, -2, 3, 0.5, 1;
  w << 2, 0.1, -1;
  CHECK(numerical_rank(u * w.transpose(), 1e-8) == 1);
  CHECK(numerical_rank(Eigen::MatrixXd::Zero(3, 3)) == 0);
  CHECK_THROWS_AS(numerical_rank(Eigen::MatrixXd::Identity(2, 2), 0.0), InputError);
}

TEST_CASE("degree-two vandermonde ranks on circle and sphere") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  PointSet circle(2, 40);
  for (int j = 0; j < 40; ++j) {
    const double t = angle(rng);
    circle.col(j) << std::cos(t), std::sin(t);
  }
  CHECK(numerical_rank(equilibrate_rows(vandermonde(circle, enumerate_monomials(2, 2))), 1e-8) == 5);

  std::normal_distribution<double> g;
  PointSet sphere(3, 50);
  for (int j = 0; j < 50; ++j) {
    Eigen::Vector3d v(g(rng), g(rng), g(rng));
    sphere.col(j) = v.normalized();
  }
  CHECK(numerical_rank(equilibrate_rows(vandermonde(sphere, enumerate_monomials(3, 2))), 1e-8) == 9);
}

TEST_CASE("equilibrate_rows gives unit rows and keeps rank") {
  Eigen::MatrixXd a(3, 4);
  a << 1e6, 2e6, 0, 1e6, 1e-4, 0, 3e-4, 0, 0, 0, 0, 0;
  const Eigen::MatrixXd e = equilibrate_rows(a);
  CHECK(e.row(0).norm() == doctest::Approx(1.0));
  CHECK(e.row(1).norm() == doctest::Approx(1.0));
  CHECK(e.row(2).norm() == 0.0);
  CHECK(numerical_rank(e) == 2);
}

TEST_CASE("singular values descend") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(6, 4);
  const Eigen::VectorXd s = singular_values(a);
  for (Eigen::Index i = 1; i < s.size(); ++i) CHECK(s(i - 1) >= s(i));
}

TEST_CASE("enumeration beyond the size cap is a capability error") {
  CHECK_THROWS_AS(enumerate_monomials(100, 10, MonomialOrder::grevlex(100), 1000), CapabilityError);
}
