#pragma once

// Isotropic kernel profiles K(x, y) = f(||x - y||^2), Chebyshev fits of f on
// [0, 4] with Bernstein-ellipse certificates, and polynomial kernels.

#include <complex>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"

namespace varkernel {

enum class KernelFamily { gaussian, cauchy };

class IsotropicKernel {
 public:
  KernelFamily family = KernelFamily::gaussian;
  std::string name;  // CLI grammar, e.g. "gaussian:sigma=1"
  double sigma = 1.0;
  int dim = 1;

  double profile(double t) const;
  std::complex<double> profile(std::complex<double> t) const;
  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) const;

  /// Trace of the Hessian magnitude of k(u) = f(||u||^2) at 0, equal to -2 d f'(0).
  double curvature() const;
  bool has_spectral_sampler() const { return family == KernelFamily::gaussian; }
  /// One draw from the Bochner measure. Throws CapabilityError if none is known.
  Eigen::VectorXd sample_frequency(std::mt19937_64& rng) const;
  /// Real singularity of f nearest to [0, 4], if any.
  std::optional<double> pole() const;
};

IsotropicKernel gaussian(double sigma, int d);
IsotropicKernel cauchy(double sigma, int d);
/// "gaussian:sigma=1" or "cauchy:sigma=0.5" for ambient dimension d.
IsotropicKernel parse_kernel(std::string_view text, int d);

/// Bernstein-ellipse certificate ||f - p_n||_[0,4] <= alpha * beta^n, with
/// alpha = 2 max_{E_rho} |f| / (rho - 1) and beta = 1 / rho.
struct BernsteinCertificate {
  double rho = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double ellipse_sup = 0.0;  // sampled estimate of max |f| on the ellipse boundary
  double bound(int n) const;
  /// Smallest n with bound(n) <= eps.
  int predicted_degree(double eps) const;
};

/// Largest admissible rho (pole-limited); +inf for entire profiles.
double rho_max(const IsotropicKernel& kernel);
/// Default rho: 3.0 for cauchy, 8.0 for gaussian.
double default_rho(const IsotropicKernel& kernel);
BernsteinCertificate bernstein_certificate(const IsotropicKernel& kernel, double rho, int boundary_samples = 4096);

struct ChebFit {
  Eigen::VectorXd coefficients;  // Chebyshev coefficients in s = t/2 - 1
  int degree = 0;
  double sup_error = 0.0;        // measured on the 10,001-point grid
  std::optional<BernsteinCertificate> certificate;

  double operator()(double t) const;
};

inline constexpr int kSupGridPoints = 10001;

/// Degree-n interpolant at second-kind Chebyshev nodes mapped to [0, 4].
ChebFit cheb_fit(const std::function<double(double)>& f, int n);
/// As above for a kernel profile, with the default Bernstein certificate attached.
ChebFit cheb_fit(const IsotropicKernel& kernel, int n);

/// Smallest n <= 200 whose measured sup error is <= eps.
int degree_for_eps(const IsotropicKernel& kernel, double eps);

enum class PolyKernelKind { isotropic, rotation_invariant };

/// Univariate-polynomial kernel. Isotropic kernels hold Chebyshev coefficients
/// on [0, 4] in ||x - y||^2; rotation-invariant ones hold power coefficients in <x, y>.
struct PolynomialKernel {
  PolyKernelKind kind = PolyKernelKind::rotation_invariant;
  std::vector<double> coefficients;
  int degree = 0;

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) const;
  /// Degree as a polynomial in x: 2n for isotropic, n for rotation-invariant.
  int x_degree() const { return kind == PolyKernelKind::isotropic ? 2 * degree : degree; }
  /// Kernel matrix K(a_i, b_j).
  Eigen::MatrixXd gram(const PointSet& a, const PointSet& b) const;
};

PolynomialKernel isotropic_polynomial(const ChebFit& fit);
PolynomialKernel rotation_invariant_polynomial(std::vector<double> power_coefficients);
/// Taylor Features: sum_k <x,y>^k / (sigma^{2k} k!). Scalings tracked separately.
PolynomialKernel taylor_features_profile(int n, double sigma);
/// exp(-||x||^2 / (2 sigma^2)), the per-point Taylor Features weight.
double taylor_scaling(const Eigen::Ref<const Eigen::VectorXd>& x, double sigma);
/// sup over the unit ball of |T_n - G| = 1 - e^{-s} sum_{k<=n} s^k / k!, s = 1/sigma^2.
double taylor_sup_error_bound(int n, double sigma);

}  // namespace varkernel
