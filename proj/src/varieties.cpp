#include "varieties.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace varkernel {

bool MonomialIdeal::contains(const Monomial& m) const {
  if (support_bound) {
    int support = 0;
    for (int e : m.exponents) support += (e > 0);
    if (support > *support_bound) return true;
  }
  for (const auto& g : generators)
    if (g.divides(m)) return true;
  return false;
}

BigInt MonomialIdeal::generator_count() const {
  BigInt count = generators.size();
  if (support_bound) count += binomial(dim, *support_bound + 1);
  return count;
}

double evaluate(const Polynomial& p, const double* x) {
  double v = 0.0;
  for (const auto& t : p) v += t.coefficient * t.monomial.evaluate(x);
  return v;
}

namespace {

constexpr double kPi = std::numbers::pi;

int require(const std::map<std::string, int>& params, const std::string& key, const std::string& variety) {
  auto it = params.find(key);
  if (it == params.end()) throw InputError("variety '" + variety + "' requires parameter '" + key + "'");
  return it->second;
}

void reject_unknown(const std::map<std::string, int>& params, std::initializer_list<const char*> allowed,
                    const std::string& variety) {
  for (const auto& [key, value] : params) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InputError("variety '" + variety + "' has no parameter '" + key + "'");
  }
}

Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

Eigen::VectorXd unit_vector(std::mt19937_64& rng, int n) {
  for (;;) {
    Eigen::VectorXd v = gaussian_vector(rng, n);
    const double nrm = v.norm();
    if (nrm > 1e-300) return v / nrm;
  }
}

double uniform_open_closed(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return 1.0 - u(rng);  // (0, 1]
}

Eigen::VectorXd uniform_ball(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return unit_vector(rng, n) * std::pow(u(rng), 1.0 / n);
}

Eigen::Matrix3d haar_rotation(std::mt19937_64& rng) {
  Eigen::Matrix3d g;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
  Eigen::Matrix3d q = qr.householderQ();
  const Eigen::Matrix3d r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

/// Index of x_j / y_j (1-based j) in the moment-curve coordinates.
struct TrigVars {
  int k;
  int x(int j) const { return j - 1; }
  int y(int j) const { return k + j - 1; }
};

Monomial var_monomial(int d, std::initializer_list<int> vars) {
  Monomial m = Monomial::one(d);
  for (int v : vars) ++m.exponents[static_cast<std::size_t>(v)];
  return m;
}

}  // namespace

namespace {

// cos(jθ) and sin(jθ) as polynomials in the curve coordinates, for 0 <= j < 2k
// (sin also for negative j). Out-of-range harmonics are reduced with
// cos(jθ) = cos((2k-j)θ) - 2 sin(kθ) sin((j-k)θ) and
// sin(jθ) = sin(kθ) cos((j-k)θ) + cos(kθ) sin((j-k)θ).
Polynomial cos_harmonic(int d, int j);
Polynomial sin_harmonic(int d, int j);

Polynomial cos_harmonic(int d, int j) {
  const TrigVars v{d / 2};
  if (j == 0) return {{1.0, Monomial::one(d)}};
  if (j <= v.k) return {{1.0, var_monomial(d, {v.x(j)})}};
  Polynomial p = cos_harmonic(d, 2 * v.k - j);
  for (Term t : sin_harmonic(d, j - v.k)) {
    ++t.monomial.exponents[static_cast<std::size_t>(v.y(v.k))];
    t.coefficient *= -2.0;
    p.push_back(t);
  }
  return p;
}

Polynomial sin_harmonic(int d, int j) {
  const TrigVars v{d / 2};
  if (j == 0) return {};
  if (j < 0) {
    Polynomial p = sin_harmonic(d, -j);
    for (auto& t : p) t.coefficient = -t.coefficient;
    return p;
  }
  if (j <= v.k) return {{1.0, var_monomial(d, {v.y(j)})}};
  Polynomial p;
  for (Term t : cos_harmonic(d, j - v.k)) {
    ++t.monomial.exponents[static_cast<std::size_t>(v.y(v.k))];
    p.push_back(t);
  }
  for (Term t : sin_harmonic(d, j - v.k)) {
    ++t.monomial.exponents[static_cast<std::size_t>(v.x(v.k))];
    p.push_back(t);
  }
  return p;
}

void append(Polynomial& p, const Polynomial& q, double scale) {
  for (Term t : q) {
    t.coefficient *= scale;
    p.push_back(t);
  }
}

}  // namespace

std::vector<std::vector<Polynomial>> trig_moment_generators(int d) {
  if (d < 2 || d % 2 != 0) throw InputError("trig_moment_generators: d must be even and >= 2");
  const TrigVars v{d / 2};
  const int k = v.k;
  const Monomial one = Monomial::one(d);
  std::vector<std::vector<Polynomial>> families(4);

  // (i) squares: 2x_i^2 - cos(2iθ) - 1, 2y_i^2 + cos(2iθ) - 1 for i < k; x_k^2 + y_k^2 - 1.
  for (int i = 1; i < k; ++i) {
    Polynomial px{{2.0, var_monomial(d, {v.x(i), v.x(i)})}, {-1.0, one}};
    append(px, cos_harmonic(d, 2 * i), -1.0);
    Polynomial py{{2.0, var_monomial(d, {v.y(i), v.y(i)})}, {-1.0, one}};
    append(py, cos_harmonic(d, 2 * i), 1.0);
    families[0].push_back(std::move(px));
    families[0].push_back(std::move(py));
  }
  families[0].push_back({{1.0, var_monomial(d, {v.x(k), v.x(k)})}, {1.0, var_monomial(d, {v.y(k), v.y(k)})}, {-1.0, one}});

  // (ii) 2x_i x_j - cos((i+j)θ) - cos((j-i)θ), i < j.
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      Polynomial p{{2.0, var_monomial(d, {v.x(i), v.x(j)})}};
      append(p, cos_harmonic(d, i + j), -1.0);
      append(p, cos_harmonic(d, j - i), -1.0);
      families[1].push_back(std::move(p));
    }

  // (iii) 2x_i y_j - sin((i+j)θ) + sin((i-j)θ), i in [k], j in [k-1].
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j < k; ++j) {
      Polynomial p{{2.0, var_monomial(d, {v.x(i), v.y(j)})}};
      append(p, sin_harmonic(d, i + j), -1.0);
      append(p, sin_harmonic(d, i - j), 1.0);
      families[2].push_back(std::move(p));
    }

  // (iv) 2y_i y_j - cos((j-i)θ) + cos((i+j)θ), i < j < k.
  for (int i = 1; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Polynomial p{{2.0, var_monomial(d, {v.y(i), v.y(j)})}};
      append(p, cos_harmonic(d, j - i), -1.0);
      append(p, cos_harmonic(d, i + j), 1.0);
      families[3].push_back(std::move(p));
    }
  return families;
}

Eigen::VectorXd trig_moment_point(int d, double theta) {
  const int k = d / 2;
  Eigen::VectorXd x(d);
  for (int j = 1; j <= k; ++j) {
    x[j - 1] = std::cos(j * theta);
    x[k + j - 1] = std::sin(j * theta);
  }
  return x;
}

BigInt VarietySpec::hf_closed_form(int n) const {
  if (n < 0) return 0;
  switch (kind) {
    case VarietyKind::full_space:
      return binomial(n + ambient_dim, ambient_dim);
    case VarietyKind::sphere: {
      const int d = ambient_dim;
      return binomial(n + d - 1, d - 1) + binomial(n + d - 2, d - 1);
    }
    case VarietyKind::sparse: {
      BigInt total = 0;
      const int d = param("d"), k = param("k");
      for (int j = 0; j <= k; ++j) total += binomial(d, j) * binomial(n, j);
      return total;
    }
    case VarietyKind::rank1: {
      BigInt total = 0;
      const int m1 = param("m1"), m2 = param("m2");
      for (int j = 0; j <= n; ++j) total += binomial(j + m1 - 1, m1 - 1) * binomial(j + m2 - 1, m2 - 1);
      return total;
    }
    case VarietyKind::sym_rank1: {
      BigInt total = 0;
      const int m = param("m");
      for (int j = 0; j <= n; ++j) total += binomial(2 * j + m - 1, m - 1);
      return total;
    }
    case VarietyKind::trig_moment:
      return BigInt(ambient_dim) * n + 1;
    case VarietyKind::so3:
      return BigInt(2 * n + 3) * (2 * n + 1) * (n + 1) / 3;
  }
  return 0;
}

double VarietySpec::ball_scale() const {
  switch (kind) {
    case VarietyKind::trig_moment:
      return 1.0 / std::sqrt(ambient_dim / 2.0);
    case VarietyKind::so3:
      return 1.0 / std::sqrt(3.0);
    default:
      return 1.0;
  }
}

PointSet VarietySpec::sample(int count, std::uint64_t seed) const {
  if (count < 1) throw InputError("sample: count must be >= 1");
  std::mt19937_64 rng(seed);
  const int d = ambient_dim;
  PointSet pts = PointSet::Zero(d, count);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 0; c < count; ++c) {
    auto col = pts.col(c);
    switch (kind) {
      case VarietyKind::full_space:
        col = uniform_ball(rng, d);
        break;
      case VarietyKind::sphere:
        col = unit_vector(rng, d);
        break;
      case VarietyKind::sparse: {
        const int k = param("k");
        // Support: first k entries of a partial Fisher-Yates shuffle.
        std::vector<int> idx(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < k; ++i) {
          std::uniform_int_distribution<int> pick(i, d - 1);
          std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
        }
        const Eigen::VectorXd vals = uniform_ball(rng, k);
        for (int i = 0; i < k; ++i) col[idx[static_cast<std::size_t>(i)]] = vals[i];
        break;
      }
      case VarietyKind::rank1: {
        const int m1 = param("m1"), m2 = param("m2");
        const Eigen::VectorXd u = unit_vector(rng, m1);
        const Eigen::VectorXd v = unit_vector(rng, m2);
        const double s = uniform_open_closed(rng);
        for (int i = 0; i < m1; ++i)
          for (int j = 0; j < m2; ++j) col[i * m2 + j] = s * u[i] * v[j];
        break;
      }
      case VarietyKind::sym_rank1: {
        const int m = param("m");
        const Eigen::VectorXd u = unit_vector(rng, m);
        const double s = uniform_open_closed(rng);
        int pos = 0;
        for (int i = 0; i < m; ++i)
          for (int j = i; j < m; ++j) col[pos++] = s * u[i] * u[j];
        break;
      }
      case VarietyKind::trig_moment: {
        const double theta = 2.0 * kPi * unit(rng);
        col = trig_moment_point(d, theta) * ball_scale();
        break;
      }
      case VarietyKind::so3: {
        const Eigen::Matrix3d r = haar_rotation(rng);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) col[3 * i + j] = r(i, j) * ball_scale();
        break;
      }
    }
  }
  return pts;
}

double VarietySpec::max_residual(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != ambient_dim) {
    throw InputError("contains: point dimension " + std::to_string(x.size()) + " != ambient dimension " +
                     std::to_string(ambient_dim));
  }
  switch (kind) {
    case VarietyKind::full_space:
      return 0.0;
    case VarietyKind::sphere:
      return std::abs(x.squaredNorm() - 1.0);
    case VarietyKind::sparse: {
      // Generators are products of k+1 distinct coordinates; the largest is the
      // product of the k+1 largest magnitudes.
      const int k = param("k");
      std::vector<double> mags(x.data(), x.data() + x.size());
      for (auto& m : mags) m = std::abs(m);
      std::partial_sort(mags.begin(), mags.begin() + (k + 1), mags.end(), std::greater<>());
      double prod = 1.0;
      for (int i = 0; i <= k; ++i) prod *= mags[static_cast<std::size_t>(i)];
      return prod;
    }
    case VarietyKind::rank1: {
      const int m1 = param("m1"), m2 = param("m2");
      double worst = 0.0;
      for (int i = 0; i < m1; ++i)
        for (int i2 = i + 1; i2 < m1; ++i2)
          for (int j = 0; j < m2; ++j)
            for (int j2 = j + 1; j2 < m2; ++j2) {
              const double minor = x[i * m2 + j] * x[i2 * m2 + j2] - x[i * m2 + j2] * x[i2 * m2 + j];
              worst = std::max(worst, std::abs(minor));
            }
      return worst;
    }
    case VarietyKind::sym_rank1: {
      const int m = param("m");
      Eigen::MatrixXd s(m, m);
      int pos = 0;
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) s(i, j) = s(j, i) = x[pos++];
      double worst = 0.0;
      for (int i = 0; i < m; ++i)
        for (int i2 = i + 1; i2 < m; ++i2)
          for (int j = 0; j < m; ++j)
            for (int j2 = j + 1; j2 < m; ++j2)
              worst = std::max(worst, std::abs(s(i, j) * s(i2, j2) - s(i, j2) * s(i2, j)));
      return worst;
    }
    case VarietyKind::trig_moment: {
      const Eigen::VectorXd z = x / ball_scale();
      double worst = 0.0;
      for (const auto& family : trig_moment_generators(ambient_dim))
        for (const auto& g : family) worst = std::max(worst, std::abs(evaluate(g, z.data())));
      return worst;
    }
    case VarietyKind::so3: {
      Eigen::Matrix3d r;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = x[3 * i + j] / ball_scale();
      const double orth = (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
      return std::max(orth, std::abs(r.determinant() - 1.0));
    }
  }
  return 0.0;
}

bool VarietySpec::contains(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const double res = max_residual(x);
  return res <= membership_tol && x.norm() <= 1.0 + membership_tol;
}

VarietySpec builtin(std::string_view name_view, const std::map<std::string, int>& params) {
  const std::string name(name_view);
  VarietySpec spec;
  spec.params = params;
  auto canonical = [&](const std::string& base, std::initializer_list<const char*> keys) {
    std::ostringstream os;
    os << base;
    bool first = true;
    for (const char* key : keys) {
      os << (first ? ':' : ',') << key << '=' << params.at(key);
      first = false;
    }
    return os.str();
  };

  if (name == "full" || name == "full_space") {
    reject_unknown(params, {"d"}, name);
    const int d = require(params, "d", name);
    if (d < 1) throw InputError("full: d must be >= 1");
    spec.kind = VarietyKind::full_space;
    spec.name = canonical("full", {"d"});
    spec.ambient_dim = spec.intrinsic_dim = d;
    spec.degree = 1;
    spec.order = MonomialOrder::grevlex(d);
    spec.lt_generators = MonomialIdeal{d, {}, std::nullopt};
  } else if (name == "sphere") {
    reject_unknown(params, {"d"}, name);
    const int d = require(params, "d", name);
    if (d < 2) throw InputError("sphere: d must be >= 2");
    spec.kind = VarietyKind::sphere;
    spec.name = canonical("sphere", {"d"});
    spec.ambient_dim = d;
    spec.intrinsic_dim = d - 1;
    spec.degree = 2;
    spec.order = MonomialOrder::grevlex(d);
    Monomial x1sq = Monomial::one(d);
    x1sq.exponents[0] = 2;
    spec.lt_generators = MonomialIdeal{d, {x1sq}, std::nullopt};
  } else if (name == "sparse") {
    reject_unknown(params, {"d", "k"}, name);
    const int d = require(params, "d", name), k = require(params, "k", name);
    if (k < 1 || k >= d) throw InputError("sparse: need 1 <= k < d");
    spec.kind = VarietyKind::sparse;
    spec.name = canonical("sparse", {"d", "k"});
    spec.ambient_dim = d;
    spec.intrinsic_dim = k;
    spec.degree = binomial(d, k);
    spec.order = MonomialOrder::grevlex(d);
    spec.lt_generators = MonomialIdeal{d, {}, k};
  } else if (name == "rank1") {
    reject_unknown(params, {"m1", "m2"}, name);
    const int m1 = require(params, "m1", name), m2 = require(params, "m2", name);
    if (m1 < 1 || m2 < 1) throw InputError("rank1: m1, m2 must be >= 1");
    spec.kind = VarietyKind::rank1;
    spec.name = canonical("rank1", {"m1", "m2"});
    spec.ambient_dim = m1 * m2;
    spec.intrinsic_dim = m1 + m2 - 1;
    spec.degree = binomial(m1 + m2 - 2, m1 - 1);
    spec.order = MonomialOrder::grevlex(spec.ambient_dim);
  } else if (name == "symrank1" || name == "sym_rank1") {
    reject_unknown(params, {"m"}, name);
    const int m = require(params, "m", name);
    if (m < 1) throw InputError("symrank1: m must be >= 1");
    spec.kind = VarietyKind::sym_rank1;
    spec.name = canonical("symrank1", {"m"});
    spec.ambient_dim = m * (m + 1) / 2;
    spec.intrinsic_dim = m;
    spec.degree = BigInt(1) << (m - 1);
    spec.order = MonomialOrder::grevlex(spec.ambient_dim);
  } else if (name == "trig" || name == "trig_moment") {
    reject_unknown(params, {"d"}, name);
    const int d = require(params, "d", name);
    if (d < 2 || d % 2 != 0) throw InputError("trig: d must be even and >= 2");
    spec.kind = VarietyKind::trig_moment;
    spec.name = canonical("trig", {"d"});
    spec.ambient_dim = d;
    spec.intrinsic_dim = 1;
    spec.degree = d;
    // grlex with x1 > ... > xk > y1 > ... > yk, which is the natural coordinate order.
    spec.order = MonomialOrder::grlex(d);
    // LT ideal: every quadratic monomial in {x1..xk, y1..y_{k-1}}.
    MonomialIdeal lt{d, {}, std::nullopt};
    for (int a = 0; a < d - 1; ++a)
      for (int b = a; b < d - 1; ++b) lt.generators.push_back(var_monomial(d, {a, b}));
    spec.lt_generators = std::move(lt);
  } else if (name == "so3") {
    reject_unknown(params, {}, name);
    spec.kind = VarietyKind::so3;
    spec.name = "so3";
    spec.ambient_dim = 9;
    spec.intrinsic_dim = 3;
    spec.degree = 8;
    spec.order = MonomialOrder::grevlex(9);
  } else {
    throw InputError("unknown variety '" + name + "'");
  }
  return spec;
}

VarietySpec parse_variety(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  std::map<std::string, int> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) throw InputError("malformed variety parameter '" + std::string(item) + "'");
      const std::string key(item.substr(0, eq));
      const std::string value(item.substr(eq + 1));
      std::size_t used = 0;
      int parsed = 0;
      try {
        parsed = std::stoi(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != value.size()) throw InputError("variety parameter '" + key + "' is not an integer");
      if (!params.emplace(key, parsed).second) throw InputError("duplicate variety parameter '" + key + "'");
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
      if (rest.empty()) throw InputError("trailing comma in variety specification");
    }
  }
  return builtin(head, params);
}

}  // namespace varkernel
