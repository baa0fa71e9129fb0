#include "rff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "parallel.hpp"

namespace varkernel {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double threshold_for(const IsotropicKernel& kernel, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InputError("rff: eps must be > 0");
  return 2.0 * kernel.curvature() / eps;
}

void require_gaussian(const IsotropicKernel& kernel) {
  if (!kernel.has_spectral_sampler()) throw CapabilityError("rff: kernel '" + kernel.name + "' has no spectral sampler");
}
}  // namespace

TruncatedSampler::TruncatedSampler(const IsotropicKernel& kernel, double eps)
    : kernel_(kernel), threshold_(threshold_for(kernel, eps)) {
  require_gaussian(kernel);
}

Eigen::VectorXd TruncatedSampler::next(std::mt19937_64& rng) {
  for (std::size_t streak = 0; streak < kMaxConsecutiveRejections; ++streak) {
    Eigen::VectorXd w = kernel_.sample_frequency(rng);
    ++draws_;
    if (w.squaredNorm() <= threshold_) return w;
    ++rejections_;
  }
  throw NumericalError("truncated sampler: " + std::to_string(kMaxConsecutiveRejections) +
                       " consecutive rejections; spectral measure does not match the threshold");
}

Eigen::MatrixXd RffModel::features(const PointSet& points) const {
  if (points.rows() != frequencies.cols()) throw InputError("rff features: point dimension mismatch");
  Eigen::MatrixXd z = frequencies * points;
  z.colwise() += phases;
  return scale * z.array().cos().matrix();
}

double RffModel::operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                            const Eigen::Ref<const Eigen::VectorXd>& y) const {
  const Eigen::ArrayXd a = (frequencies * x + phases).array().cos();
  const Eigen::ArrayXd b = (frequencies * y + phases).array().cos();
  return scale * scale * (a * b).sum();
}

RffModel RffModel::prefix(int r) const {
  if (r < 1 || r > rank()) throw InputError("rff prefix: rank out of range");
  RffModel m = *this;
  m.frequencies = frequencies.topRows(r);
  m.phases = phases.head(r);
  m.scale = std::sqrt(2.0 / r);
  return m;
}

RffModel build_rff(const IsotropicKernel& kernel, int r, double eps, std::uint64_t seed) {
  if (r < 1) throw InputError("build_rff: r must be >= 1");
  TruncatedSampler sampler(kernel, eps);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  RffModel m;
  m.frequencies.resize(r, kernel.dim);
  m.phases.resize(r);
  for (int i = 0; i < r; ++i) {
    m.frequencies.row(i) = sampler.next(rng).transpose();
    m.phases[i] = phase(rng);
  }
  m.truncation_threshold = sampler.threshold();
  m.truncation_mass_estimate = sampler.rejection_fraction();
  m.draws = sampler.draws();
  m.scale = std::sqrt(2.0 / r);
  m.seed = seed;
  return m;
}

double truncation_mass(const IsotropicKernel& kernel, double eps) {
  require_gaussian(kernel);
  const double t = threshold_for(kernel, eps);
  // |w|^2 sigma^2 is chi-square with d degrees of freedom.
  return boost::math::gamma_q(kernel.dim / 2.0, t * kernel.sigma * kernel.sigma / 2.0);
}

double truncated_kernel_value(const IsotropicKernel& kernel, double eps, const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y) {
  require_gaussian(kernel);
  const double s2 = kernel.sigma * kernel.sigma;
  const double big_t = threshold_for(kernel, eps) * s2;  // threshold for |g|^2, g standard normal
  const double c = (x - y).norm() / kernel.sigma;
  const int rest = kernel.dim - 1;
  // Component of g along x - y, times the probability that the others fit.
  const auto integrand = [&](double g) {
    const double room = big_t - g * g;
    if (room <= 0.0) return 0.0;
    const double inside = rest == 0 ? 1.0 : boost::math::gamma_p(rest / 2.0, room / 2.0);
    return std::exp(-0.5 * g * g) * std::cos(c * g) * inside;
  };
  const double upper = std::min(std::sqrt(big_t), 40.0);
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, upper, 15, 1e-14);
  const double mass = boost::math::gamma_p(kernel.dim / 2.0, big_t / 2.0);
  return 2.0 * integral / std::sqrt(kTwoPi) / mass;
}

TailEstimate pointwise_error_tail(const IsotropicKernel& kernel, const VarietySpec& spec, int r, double eps, int pairs,
                                  int trials, std::uint64_t seed) {
  if (trials < 30) throw InputError("pointwise_error_tail: trials must be >= 30");
  if (pairs < 1) throw InputError("pointwise_error_tail: pairs must be >= 1");
  if (kernel.dim != spec.ambient_dim) throw InputError("pointwise_error_tail: dimension mismatch");
  const PointSet xs = spec.sample(pairs, derive_seed(seed, 0));
  const PointSet ys = spec.sample(pairs, derive_seed(seed, 1));
  Eigen::VectorXd target(pairs);
  for (int i = 0; i < pairs; ++i) target[i] = truncated_kernel_value(kernel, eps, xs.col(i), ys.col(i));

  std::vector<std::size_t> hits(static_cast<std::size_t>(trials), 0);
  parallel_chunks(static_cast<std::size_t>(trials), 1, [&](std::size_t t, std::size_t, std::size_t) {
    const RffModel m = build_rff(kernel, r, eps, derive_seed(seed, 2 + t));
    const Eigen::VectorXd est = m.features(xs).cwiseProduct(m.features(ys)).colwise().sum().transpose();
    std::size_t h = 0;
    for (int i = 0; i < pairs; ++i) h += std::abs(est[i] - target[i]) > eps;
    hits[t] = h;
  });

  TailEstimate out;
  out.events = static_cast<std::size_t>(pairs) * static_cast<std::size_t>(trials);
  std::size_t total = 0;
  for (auto h : hits) total += h;
  out.exceedance = static_cast<double>(total) / out.events;
  out.standard_error = std::sqrt(out.exceedance * (1.0 - out.exceedance) / out.events);
  out.bound_design = std::exp(-r * eps * eps / 8.0);
  out.bound_reference = std::exp(-r * eps * eps / 2.0);
  return out;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InputError("quantile: empty sample");
  std::sort(values.begin(), values.end());
  const double h = (values.size() - 1) * std::clamp(q, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - lo) * (values[hi] - values[lo]);
}

std::vector<RffProfileRow> sup_error_profile(const IsotropicKernel& kernel, const VarietySpec& spec,
                                             std::vector<int> r_grid, std::size_t pairs, double eps,
                                             std::uint64_t seed) {
  if (r_grid.empty()) throw InputError("sup_error_profile: empty rank grid");
  if (pairs < 1 || pairs > 1'000'000) throw InputError("sup_error_profile: pairs must be in [1, 1e6]");
  if (kernel.dim != spec.ambient_dim) throw InputError("sup_error_profile: dimension mismatch");
  std::sort(r_grid.begin(), r_grid.end());
  r_grid.erase(std::unique(r_grid.begin(), r_grid.end()), r_grid.end());
  if (r_grid.front() < 1) throw InputError("sup_error_profile: ranks must be >= 1");

  const int r_max = r_grid.back();
  const RffModel model = build_rff(kernel, r_max, eps, derive_seed(seed, 0));
  const std::size_t g = r_grid.size();
  std::vector<std::vector<double>> errors(g, std::vector<double>(pairs));

  parallel_chunks(pairs, 1024, [&](std::size_t c, std::size_t begin, std::size_t end) {
    const int count = static_cast<int>(end - begin);
    const PointSet xs = spec.sample(count, derive_seed(seed, 1 + 2 * c));
    const PointSet ys = spec.sample(count, derive_seed(seed, 2 + 2 * c));
    Eigen::VectorXd a(r_max), b(r_max);
    Eigen::ArrayXd terms(r_max);
    for (int p = 0; p < count; ++p) {
      // Sparse-aware projections: only nonzero coordinates contribute.
      a = model.phases;
      b = model.phases;
      for (Eigen::Index j = 0; j < xs.rows(); ++j) {
        if (xs(j, p) != 0.0) a += xs(j, p) * model.frequencies.col(j);
        if (ys(j, p) != 0.0) b += ys(j, p) * model.frequencies.col(j);
      }
      terms = 2.0 * a.array().cos() * b.array().cos();
      const double truth = kernel(xs.col(p), ys.col(p));
      double sum = 0.0;
      int i = 0;
      for (std::size_t k = 0; k < g; ++k) {
        for (; i < r_grid[k]; ++i) sum += terms[i];
        errors[k][begin + static_cast<std::size_t>(p)] = std::abs(truth - sum / r_grid[k]);
      }
    }
  });

  std::vector<RffProfileRow> rows;
  for (std::size_t k = 0; k < g; ++k) {
    RffProfileRow row;
    row.rank = r_grid[k];
    row.max_err = *std::max_element(errors[k].begin(), errors[k].end());
    row.q25 = quantile(errors[k], 0.25);
    row.q50 = quantile(errors[k], 0.50);
    row.q75 = quantile(errors[k], 0.75);
    rows.push_back(row);
  }
  return rows;
}

double CosinePolynomial::operator()(double u, double theta) const {
  double c = 0.0, s = 0.0;
  for (std::size_t k = cos_coefficients.size(); k-- > 0;) {
    c = c * u + cos_coefficients[k];
    s = s * u + sin_coefficients[k];
  }
  return std::cos(theta) * c - std::sin(theta) * s;
}

CosinePolynomial cosine_polynomialize(double radius2, double eps) {
  if (!(radius2 >= 0.0) || radius2 > 400.0) throw InputError("cosine_polynomialize: radius2 must be in [0, 400]");
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("cosine_polynomialize: eps must be in (0, 1)");
  const double radius = std::sqrt(radius2);
  constexpr int kGrid = 2001;
  Eigen::ArrayXd u = Eigen::ArrayXd::LinSpaced(kGrid, -radius, radius);
  Eigen::ArrayXd power = Eigen::ArrayXd::Ones(kGrid);  // u^k / k!
  Eigen::ArrayXd cpart = Eigen::ArrayXd::Zero(kGrid), spart = Eigen::ArrayXd::Zero(kGrid);
  const Eigen::ArrayXd cu = u.cos(), su = u.sin();

  CosinePolynomial out;
  double factorial_inv = 1.0;
  for (int k = 0; k <= 1000; ++k) {
    // Coefficients of u^k in cos and sin.
    const double ck = (k % 2 == 0) ? ((k / 2) % 2 == 0 ? factorial_inv : -factorial_inv) : 0.0;
    const double sk = (k % 2 == 1) ? (((k - 1) / 2) % 2 == 0 ? factorial_inv : -factorial_inv) : 0.0;
    out.cos_coefficients.push_back(ck);
    out.sin_coefficients.push_back(sk);
    if (k % 2 == 0) cpart += (ck / factorial_inv) * power;
    else spart += (sk / factorial_inv) * power;
    // Worst case over theta of |cos(t) eC - sin(t) eS| is the Euclidean norm.
    const double err = ((cu - cpart).square() + (su - spart).square()).sqrt().maxCoeff();
    if (err <= eps / 3.0) {
      out.degree = k;
      out.sup_error = err;
      out.growth_constant = k / (radius2 + std::log(1.0 / eps));
      return out;
    }
    power *= u / (k + 1);
    factorial_inv /= (k + 1);
  }
  throw CapabilityError("cosine_polynomialize: degree exceeds 1000");
}

}  // namespace varkernel
