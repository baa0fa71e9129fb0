#include "polybasis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace varkernel {

int Monomial::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

bool Monomial::divides(const Monomial& other) const {
  if (other.exponents.size() != exponents.size()) return false;
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (exponents[i] > other.exponents[i]) return false;
  return true;
}

double ipow(double x, int k) {
  double result = 1.0;
  while (k > 0) {
    if (k & 1) result *= x;
    x *= x;
    k >>= 1;
  }
  return result;
}

double Monomial::evaluate(const double* x) const {
  double v = 1.0;
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (exponents[i] != 0) v *= ipow(x[i], exponents[i]);
  return v;
}

std::string Monomial::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    if (any) os << '*';
    os << 'x' << (i + 1);
    if (exponents[i] > 1) os << '^' << exponents[i];
    any = true;
  }
  if (!any) os << '1';
  return os.str();
}

MonomialOrder MonomialOrder::grevlex(int d) {
  MonomialOrder o;
  o.kind = OrderKind::grevlex;
  o.priority.resize(static_cast<std::size_t>(d));
  std::iota(o.priority.begin(), o.priority.end(), 0);
  return o;
}

MonomialOrder MonomialOrder::grlex(int d) {
  MonomialOrder o = grevlex(d);
  o.kind = OrderKind::grlex;
  return o;
}

MonomialOrder MonomialOrder::with_priority(OrderKind kind, std::vector<int> priority) {
  std::vector<int> check = priority;
  std::sort(check.begin(), check.end());
  for (std::size_t i = 0; i < check.size(); ++i)
    if (check[i] != static_cast<int>(i)) throw InputError("variable priority must be a permutation of [d]");
  MonomialOrder o;
  o.kind = kind;
  o.priority = std::move(priority);
  return o;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  const std::size_t d = priority.size();
  if (kind == OrderKind::grlex) {
    for (std::size_t i = 0; i < d; ++i) {
      const int v = priority[i];
      if (a.exponents[v] != b.exponents[v]) return a.exponents[v] < b.exponents[v] ? -1 : 1;
    }
  } else {
    // Reverse lex tie-break: the smallest variable decides, a smaller exponent wins.
    for (std::size_t i = d; i-- > 0;) {
      const int v = priority[i];
      if (a.exponents[v] != b.exponents[v]) return a.exponents[v] > b.exponents[v] ? -1 : 1;
    }
  }
  return 0;
}

Eigen::VectorXd MonomialBasis::evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(monomials.size()));
  for (std::size_t i = 0; i < monomials.size(); ++i) out[static_cast<Eigen::Index>(i)] = monomials[i].evaluate(x.data());
  return out;
}

namespace {

void enumerate_rec(int var, int remaining, std::vector<int>& current, std::vector<Monomial>& out) {
  if (var == static_cast<int>(current.size())) {
    out.emplace_back(current);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    current[static_cast<std::size_t>(var)] = e;
    enumerate_rec(var + 1, remaining - e, current, out);
  }
  current[static_cast<std::size_t>(var)] = 0;
}

}  // namespace

MonomialBasis enumerate_monomials(int d, int n, const MonomialOrder& order, std::size_t max_count) {
  if (d < 1) throw InputError("enumerate_monomials: d must be >= 1");
  if (n < 0) throw InputError("enumerate_monomials: n must be >= 0");
  if (static_cast<int>(order.priority.size()) != d) throw InputError("enumerate_monomials: order dimension mismatch");
  const BigInt count = binomial(n + d, d);
  if (count > BigInt(max_count)) {
    throw CapabilityError("enumerate_monomials: binom(n+d, d) = " + count.str() + " monomials exceeds the size limit");
  }
  MonomialBasis basis;
  basis.max_degree = n;
  basis.order = order;
  basis.monomials.reserve(count.convert_to<std::size_t>());
  std::vector<int> current(static_cast<std::size_t>(d), 0);
  enumerate_rec(0, n, current, basis.monomials);
  std::sort(basis.monomials.begin(), basis.monomials.end(),
            [&](const Monomial& a, const Monomial& b) { return order.less(a, b); });
  return basis;
}

MonomialBasis enumerate_monomials(int d, int n) { return enumerate_monomials(d, n, MonomialOrder::grevlex(d)); }

MonomialBasis make_basis(std::vector<Monomial> monomials, const MonomialOrder& order) {
  std::sort(monomials.begin(), monomials.end(), [&](const Monomial& a, const Monomial& b) { return order.less(a, b); });
  monomials.erase(std::unique(monomials.begin(), monomials.end()), monomials.end());
  MonomialBasis basis;
  basis.order = order;
  for (const auto& m : monomials) basis.max_degree = std::max(basis.max_degree, m.degree());
  basis.monomials = std::move(monomials);
  return basis;
}

Eigen::MatrixXd vandermonde(const PointSet& points, const MonomialBasis& basis) {
  const Eigen::Index rows = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd v(rows, points.cols());
  if (rows == 0) return v;
  if (points.rows() != basis.dim()) {
    throw InputError("vandermonde: point dimension " + std::to_string(points.rows()) +
                     " does not match basis dimension " + std::to_string(basis.dim()));
  }
  // Per point: cache powers of each coordinate, then multiply out.
  const int d = basis.dim();
  const int nmax = std::max(basis.max_degree, 0);
  std::vector<double> powers(static_cast<std::size_t>(d) * (nmax + 1));
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    for (int i = 0; i < d; ++i) {
      const double x = points(i, j);
      for (int k = 0; k <= nmax; ++k) powers[static_cast<std::size_t>(i) * (nmax + 1) + k] = ipow(x, k);
    }
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& e = basis.monomials[static_cast<std::size_t>(r)].exponents;
      double val = 1.0;
      for (int i = 0; i < d; ++i)
        if (e[static_cast<std::size_t>(i)] != 0) val *= powers[static_cast<std::size_t>(i) * (nmax + 1) + e[static_cast<std::size_t>(i)]];
      v(r, j) = val;
    }
  }
  return v;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  if (!a.allFinite()) throw InputError("singular_values: matrix has non-finite entries");
  if (std::min(a.rows(), a.cols()) <= 64) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    return svd.singularValues();
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues();
}

int numerical_rank(const Eigen::MatrixXd& a, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InputError("numerical_rank: rel_tol must lie in (0, 1)");
  if (a.size() == 0) return 0;
  const Eigen::VectorXd s = singular_values(a);
  if (s.size() == 0 || s[0] == 0.0) return 0;
  const double cutoff = rel_tol * s[0];
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] >= cutoff) ++rank;
  return rank;
}

Eigen::MatrixXd equilibrate_rows(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd out = a;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double nrm = out.row(i).norm();
    if (nrm > 0.0) out.row(i) /= nrm;
  }
  return out;
}

}  // namespace varkernel
