#pragma once

// Multivariate monomials, graded monomial orders, basis enumeration and
// generalized Vandermonde assembly.

#include <string>
#include <vector>

#include "common.hpp"

namespace varkernel {

struct Monomial {
  std::vector<int> exponents;

  Monomial() = default;
  explicit Monomial(std::vector<int> e) : exponents(std::move(e)) {}
  static Monomial one(int d) { return Monomial(std::vector<int>(static_cast<std::size_t>(d), 0)); }

  int dim() const { return static_cast<int>(exponents.size()); }
  int degree() const;
  /// Every exponent of *this is <= the corresponding exponent of other.
  bool divides(const Monomial& other) const;
  /// x^alpha, each factor by repeated squaring.
  double evaluate(const double* x) const;
  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Integer power by repeated squaring.
double ipow(double x, int k);

enum class OrderKind { grevlex, grlex };

/// A graded order. priority[0] is the largest variable, priority[d-1] the smallest.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::vector<int> priority;

  static MonomialOrder grevlex(int d);
  static MonomialOrder grlex(int d);
  static MonomialOrder with_priority(OrderKind kind, std::vector<int> priority);

  /// -1, 0 or 1 as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

struct MonomialBasis {
  std::vector<Monomial> monomials;  // ascending in `order`, no duplicates
  int max_degree = 0;
  MonomialOrder order;

  std::size_t size() const { return monomials.size(); }
  int dim() const { return monomials.empty() ? 0 : monomials.front().dim(); }
  /// Column of basis values at x.
  Eigen::VectorXd evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/// All monomials of total degree <= n in d variables, sorted by `order`.
/// Throws CapabilityError when binom(n+d, d) exceeds `max_count`.
MonomialBasis enumerate_monomials(int d, int n, const MonomialOrder& order, std::size_t max_count = 50'000'000);
MonomialBasis enumerate_monomials(int d, int n);

/// Sorts and deduplicates an arbitrary monomial list into a basis.
MonomialBasis make_basis(std::vector<Monomial> monomials, const MonomialOrder& order);

/// |basis| x |points| matrix with entry (i, j) = monomial i at point j.
Eigen::MatrixXd vandermonde(const PointSet& points, const MonomialBasis& basis);

/// Number of singular values >= rel_tol * largest. 0 for the zero or empty matrix.
int numerical_rank(const Eigen::MatrixXd& a, double rel_tol = kDefaultRankTol);

/// Singular values in descending order.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);

/// Scales each row to unit Euclidean norm (zero rows left as is). Rank preserving.
Eigen::MatrixXd equilibrate_rows(const Eigen::MatrixXd& a);

}  // namespace varkernel
