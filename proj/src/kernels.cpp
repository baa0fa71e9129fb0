#include "kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace varkernel {

namespace {
constexpr double kPi = std::numbers::pi;

double clenshaw(const Eigen::VectorXd& c, double s) {
  double b1 = 0.0, b2 = 0.0;
  for (Eigen::Index k = c.size() - 1; k >= 1; --k) {
    const double b0 = 2.0 * s * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return s * b1 - b2 + (c.size() > 0 ? c[0] : 0.0);
}
}  // namespace

double IsotropicKernel::profile(double t) const {
  const double s2 = sigma * sigma;
  switch (family) {
    case KernelFamily::gaussian:
      return std::exp(-t / (2.0 * s2));
    case KernelFamily::cauchy:
      return 1.0 / (1.0 + t / (2.0 * s2));
  }
  return 0.0;
}

std::complex<double> IsotropicKernel::profile(std::complex<double> t) const {
  const double s2 = sigma * sigma;
  switch (family) {
    case KernelFamily::gaussian:
      return std::exp(-t / (2.0 * s2));
    case KernelFamily::cauchy:
      return 1.0 / (1.0 + t / (2.0 * s2));
  }
  return 0.0;
}

double IsotropicKernel::operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const Eigen::Ref<const Eigen::VectorXd>& y) const {
  return profile((x - y).squaredNorm());
}

double IsotropicKernel::curvature() const {
  // Both profiles have f'(0) = -1 / (2 sigma^2).
  return dim / (sigma * sigma);
}

Eigen::VectorXd IsotropicKernel::sample_frequency(std::mt19937_64& rng) const {
  if (!has_spectral_sampler()) throw CapabilityError("kernel '" + name + "' has no spectral sampler");
  std::normal_distribution<double> normal(0.0, 1.0 / sigma);
  Eigen::VectorXd w(dim);
  for (int i = 0; i < dim; ++i) w[i] = normal(rng);
  return w;
}

std::optional<double> IsotropicKernel::pole() const {
  if (family == KernelFamily::cauchy) return -2.0 * sigma * sigma;
  return std::nullopt;
}

IsotropicKernel gaussian(double sigma, int d) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InputError("gaussian: sigma must be > 0");
  if (d < 1) throw InputError("gaussian: d must be >= 1");
  IsotropicKernel k;
  k.family = KernelFamily::gaussian;
  k.sigma = sigma;
  k.dim = d;
  k.name = "gaussian:sigma=" + std::to_string(sigma);
  return k;
}

IsotropicKernel cauchy(double sigma, int d) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InputError("cauchy: sigma must be > 0");
  if (d < 1) throw InputError("cauchy: d must be >= 1");
  IsotropicKernel k;
  k.family = KernelFamily::cauchy;
  k.sigma = sigma;
  k.dim = d;
  k.name = "cauchy:sigma=" + std::to_string(sigma);
  return k;
}

IsotropicKernel parse_kernel(std::string_view text, int d) {
  const auto colon = text.find(':');
  const std::string head(text.substr(0, colon));
  double sigma = 1.0;
  if (colon != std::string_view::npos) {
    const std::string rest(text.substr(colon + 1));
    if (rest.rfind("sigma=", 0) != 0) throw InputError("kernel parameters must be 'sigma=<value>'");
    const std::string value = rest.substr(6);
    std::size_t used = 0;
    try {
      sigma = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw InputError("kernel sigma '" + value + "' is not a number");
  }
  IsotropicKernel k;
  if (head == "gaussian") {
    k = gaussian(sigma, d);
  } else if (head == "cauchy") {
    k = cauchy(sigma, d);
  } else {
    throw InputError("unknown kernel '" + head + "'");
  }
  k.name = std::string(text);
  return k;
}

double BernsteinCertificate::bound(int n) const { return alpha * std::pow(beta, n); }

int BernsteinCertificate::predicted_degree(double eps) const {
  if (alpha <= eps) return 0;
  return static_cast<int>(std::ceil(std::log(alpha / eps) / std::log(1.0 / beta)));
}

double rho_max(const IsotropicKernel& kernel) {
  const auto p = kernel.pole();
  if (!p) return std::numeric_limits<double>::infinity();
  // Pole in s = t/2 - 1 coordinates; ellipse parameter through it.
  const double s = std::abs(*p / 2.0 - 1.0);
  return s + std::sqrt(s * s - 1.0);
}

double default_rho(const IsotropicKernel& kernel) { return kernel.family == KernelFamily::cauchy ? 3.0 : 8.0; }

BernsteinCertificate bernstein_certificate(const IsotropicKernel& kernel, double rho, int boundary_samples) {
  if (!(rho > 1.0)) throw InputError("bernstein_certificate: rho must be > 1");
  if (rho >= rho_max(kernel)) throw InputError("bernstein_certificate: rho reaches the profile's singularity");
  double sup = 0.0;
  for (int i = 0; i < boundary_samples; ++i) {
    const std::complex<double> z = std::polar(rho, 2.0 * kPi * i / boundary_samples);
    sup = std::max(sup, std::abs(kernel.profile(z + 1.0 / z + 2.0)));
  }
  BernsteinCertificate c;
  c.rho = rho;
  c.ellipse_sup = sup;
  c.alpha = 2.0 * sup / (rho - 1.0);
  c.beta = 1.0 / rho;
  return c;
}

double ChebFit::operator()(double t) const { return clenshaw(coefficients, t / 2.0 - 1.0); }

ChebFit cheb_fit(const std::function<double(double)>& f, int n) {
  if (n < 0) throw InputError("cheb_fit: n must be >= 0");
  ChebFit fit;
  fit.degree = n;
  fit.coefficients = Eigen::VectorXd::Zero(n + 1);
  if (n == 0) {
    fit.coefficients[0] = f(2.0);
  } else {
    std::vector<double> values(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) values[static_cast<std::size_t>(j)] = f(2.0 + 2.0 * std::cos(kPi * j / n));
    for (int k = 0; k <= n; ++k) {
      double acc = 0.0;
      for (int j = 0; j <= n; ++j) {
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        acc += w * values[static_cast<std::size_t>(j)] * std::cos(kPi * j * k / n);
      }
      acc *= 2.0 / n;
      if (k == 0 || k == n) acc *= 0.5;
      fit.coefficients[k] = acc;
    }
  }
  double err = 0.0;
  for (int i = 0; i < kSupGridPoints; ++i) {
    const double t = 4.0 * i / (kSupGridPoints - 1);
    err = std::max(err, std::abs(f(t) - fit(t)));
  }
  fit.sup_error = err;
  return fit;
}

ChebFit cheb_fit(const IsotropicKernel& kernel, int n) {
  ChebFit fit = cheb_fit([&](double t) { return kernel.profile(t); }, n);
  fit.certificate = bernstein_certificate(kernel, default_rho(kernel));
  return fit;
}

int degree_for_eps(const IsotropicKernel& kernel, double eps) {
  if (!(eps > 0.0)) throw InputError("degree_for_eps: eps must be > 0");
  const auto f = [&](double t) { return kernel.profile(t); };
  for (int n = 0; n <= 200; ++n)
    if (cheb_fit(f, n).sup_error <= eps) return n;
  throw CapabilityError("degree_for_eps: eps unreachable below degree 200");
}

double PolynomialKernel::operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                                    const Eigen::Ref<const Eigen::VectorXd>& y) const {
  if (kind == PolyKernelKind::isotropic) {
    const double t = (x - y).squaredNorm();
    return clenshaw(Eigen::Map<const Eigen::VectorXd>(coefficients.data(), static_cast<Eigen::Index>(coefficients.size())),
                    t / 2.0 - 1.0);
  }
  const double u = x.dot(y);
  double acc = 0.0;
  for (std::size_t k = coefficients.size(); k-- > 0;) acc = acc * u + coefficients[k];
  return acc;
}

Eigen::MatrixXd PolynomialKernel::gram(const PointSet& a, const PointSet& b) const {
  Eigen::MatrixXd g(a.cols(), b.cols());
  for (Eigen::Index i = 0; i < a.cols(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) g(i, j) = (*this)(a.col(i), b.col(j));
  return g;
}

PolynomialKernel isotropic_polynomial(const ChebFit& fit) {
  PolynomialKernel k;
  k.kind = PolyKernelKind::isotropic;
  k.coefficients.assign(fit.coefficients.data(), fit.coefficients.data() + fit.coefficients.size());
  k.degree = fit.degree;
  return k;
}

PolynomialKernel rotation_invariant_polynomial(std::vector<double> power_coefficients) {
  if (power_coefficients.empty()) throw InputError("rotation_invariant_polynomial: no coefficients");
  PolynomialKernel k;
  k.kind = PolyKernelKind::rotation_invariant;
  k.degree = static_cast<int>(power_coefficients.size()) - 1;
  k.coefficients = std::move(power_coefficients);
  return k;
}

PolynomialKernel taylor_features_profile(int n, double sigma) {
  if (n < 0) throw InputError("taylor_features_profile: n must be >= 0");
  if (!(sigma > 0.0)) throw InputError("taylor_features_profile: sigma must be > 0");
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  const double inv = 1.0 / (sigma * sigma);
  double term = 1.0;
  for (int k = 0; k <= n; ++k) {
    c[static_cast<std::size_t>(k)] = term;
    term *= inv / (k + 1);
  }
  return rotation_invariant_polynomial(std::move(c));
}

double taylor_scaling(const Eigen::Ref<const Eigen::VectorXd>& x, double sigma) {
  return std::exp(-x.squaredNorm() / (2.0 * sigma * sigma));
}

double taylor_sup_error_bound(int n, double sigma) {
  const double s = 1.0 / (sigma * sigma);
  double partial = 0.0, term = 1.0;
  for (int k = 0; k <= n; ++k) {
    partial += term;
    term *= s / (k + 1);
  }
  // Tail sum directly to avoid cancellation in 1 - e^{-s} * partial.
  double tail = 0.0;
  for (int k = n + 1; k < n + 200 && term > 0.0; ++k) {
    tail += term;
    term *= s / (k + 1);
  }
  return std::exp(-s) * tail;
}

}  // namespace varkernel
