#pragma once

// Random Fourier features with a norm-truncated spectral measure, exact
// truncated-kernel values, and Monte-Carlo error diagnostics.

#include <random>
#include <vector>

#include "common.hpp"
#include "kernels.hpp"
#include "varieties.hpp"

namespace varkernel {

/// Rejection sampler for the spectral measure restricted to |w|^2 <= t, t = 2 sigma_K^2 / eps.
class TruncatedSampler {
 public:
  TruncatedSampler(const IsotropicKernel& kernel, double eps);

  Eigen::VectorXd next(std::mt19937_64& rng);
  double threshold() const { return threshold_; }
  std::size_t draws() const { return draws_; }
  std::size_t rejections() const { return rejections_; }
  /// Empirical rejected fraction p_hat.
  double rejection_fraction() const { return draws_ ? static_cast<double>(rejections_) / draws_ : 0.0; }

  static constexpr std::size_t kMaxConsecutiveRejections = 10'000;

 private:
  IsotropicKernel kernel_;
  double threshold_;
  std::size_t draws_ = 0;
  std::size_t rejections_ = 0;
};

struct RffModel {
  Eigen::MatrixXd frequencies;  // r x d
  Eigen::VectorXd phases;       // r, in [0, 2 pi)
  double truncation_threshold = 0.0;
  double truncation_mass_estimate = 0.0;
  std::size_t draws = 0;
  double scale = 0.0;  // sqrt(2 / r)
  std::uint64_t seed = 0;

  int rank() const { return static_cast<int>(frequencies.rows()); }
  /// r x N matrix of scale * cos(<w_i, x> + theta_i).
  Eigen::MatrixXd features(const PointSet& points) const;
  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) const;
  /// The first r features, rescaled. Frequencies and phases match build_rff(kernel, r, eps, seed).
  RffModel prefix(int r) const;
};

/// Frequencies and phases are drawn interleaved from one stream, so models of
/// different rank with the same seed are nested.
RffModel build_rff(const IsotropicKernel& kernel, int r, double eps, std::uint64_t seed);

/// P[|w|^2 > t] under the spectral measure (chi-square tail for gaussian).
double truncation_mass(const IsotropicKernel& kernel, double eps);
/// E[cos <w, x - y>] under the truncated measure, by 1-D quadrature.
double truncated_kernel_value(const IsotropicKernel& kernel, double eps, const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y);

struct TailEstimate {
  double exceedance = 0.0;      // fraction of (trial, pair) events with |K_trunc - K_r| > eps
  double standard_error = 0.0;  // binomial SE of that fraction
  double bound_design = 0.0;    // exp(-r eps^2 / 8), per-term range [-2, 2]
  double bound_reference = 0.0; // exp(-r eps^2 / 2)
  std::size_t events = 0;
};

TailEstimate pointwise_error_tail(const IsotropicKernel& kernel, const VarietySpec& spec, int r, double eps, int pairs,
                                  int trials, std::uint64_t seed);

struct RffProfileRow {
  int rank = 0;
  double max_err = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
};

/// |K - K_r| over sampled pairs for each rank of a nested model sequence.
std::vector<RffProfileRow> sup_error_profile(const IsotropicKernel& kernel, const VarietySpec& spec,
                                             std::vector<int> r_grid, std::size_t pairs, double eps,
                                             std::uint64_t seed);

/// Linear-interpolation quantile (q in [0, 1]) of an unsorted sample.
double quantile(std::vector<double> values, double q);

struct CosinePolynomial {
  int degree = 0;
  std::vector<double> cos_coefficients;  // Taylor coefficients of cos(u)
  std::vector<double> sin_coefficients;  // Taylor coefficients of sin(u)
  double sup_error = 0.0;                // max over the (u, theta) grid
  double growth_constant = 0.0;          // degree / (radius2 + ln(1/eps))

  /// p(u; theta) = cos(theta) C(u) - sin(theta) S(u), approximating cos(u + theta).
  double operator()(double u, double theta) const;
};

/// Smallest Taylor degree with |cos(u + theta) - p(u; theta)| <= eps / 3 for |u| <= sqrt(radius2).
CosinePolynomial cosine_polynomialize(double radius2, double eps);

}  // namespace varkernel
