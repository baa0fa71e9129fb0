#pragma once

// Low-rank kernel factorizations over varieties: unisolvent designs, the
// interpolative factorization of polynomial kernels, exact ranks, and Nyström.

#include <functional>
#include <optional>

#include "common.hpp"
#include "kernels.hpp"
#include "polybasis.hpp"
#include "varieties.hpp"

namespace varkernel {

struct ErrorCertificate {
  double measured_sup_error = 0.0;  // max over the audit sample (an underestimate of the true sup)
  double certified = 0.0;           // a-priori value (profile fit error), if any
  std::size_t audit_pairs = 0;
  std::uint64_t audit_seed = 0;
};

/// K_hat(x, y) = w(x) w(y) <L frame(x), R frame(y)>, where frame(.) returns one
/// column of M frame values per point (monomials or landmark kernel columns).
class LowRankFactorization {
 public:
  int rank = 0;
  std::function<Eigen::MatrixXd(const PointSet&)> frame;
  Eigen::MatrixXd left;   // rank x M
  Eigen::MatrixXd right;  // rank x M
  std::optional<double> scaling_sigma;  // diagonal weight exp(-|x|^2 / (2 sigma^2))
  ErrorCertificate certificate;

  /// rank x N feature matrices, scalings folded in.
  Eigen::MatrixXd left_features(const PointSet& points) const;
  Eigen::MatrixXd right_features(const PointSet& points) const;
  /// K_hat(x_i, y_i) for paired columns.
  Eigen::VectorXd evaluate_pairs(const PointSet& xs, const PointSet& ys) const;
  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) const;
};

struct UnisolventDesign {
  PointSet points;         // d x M
  MonomialBasis basis;     // M functions
  Eigen::MatrixXd vdm;     // S(i, j) = basis_i(point_j)
  double condition_estimate = 0.0;
  double log_volume = 0.0;  // sum of log |R_ii| from the point-selection factorization
};

/// Standard monomials of degree <= n, a basis of the degree-<=n coordinate ring.
MonomialBasis standard_monomial_features(const VarietySpec& spec, int n);

/// Greedy design of hf(spec, n) points chosen from `candidates` sampled points.
UnisolventDesign select_unisolvent(const VarietySpec& spec, int n, int candidates, std::uint64_t seed);
/// Same selection over an explicit candidate set.
UnisolventDesign select_unisolvent(const VarietySpec& spec, int n, const PointSet& candidates);

/// Numerical rank of the kernel matrix on a unisolvent design of degree n_eff.
int exact_rank(const VarietySpec& spec, const PolynomialKernel& kernel, int n_eff, std::uint64_t seed,
               double rel_tol = kDefaultRankTol);

/// Factorizes an arbitrary degree-n polynomial kernel (given by its values on
/// design pairs) through the design's Lagrange frame; singular values below
/// rel_tol * largest are dropped.
LowRankFactorization factorize_on_design(const UnisolventDesign& design, const Eigen::MatrixXd& design_kernel,
                                         double rel_tol, bool symmetric);

struct AuditOptions {
  std::size_t pairs = 100'000;
  std::uint64_t seed = 0x5eed;
};

/// Sup of |truth(x_i, y_i) - K_hat(x_i, y_i)| over pairs sampled from V.
double audit_sup_error(const LowRankFactorization& f, const IsotropicKernel& truth, const VarietySpec& spec,
                       const AuditOptions& opts);
/// All pairwise errors (for quantiles), same sampling as audit_sup_error.
Eigen::VectorXd audit_errors(const LowRankFactorization& f, const IsotropicKernel& truth, const VarietySpec& spec,
                             const AuditOptions& opts);

struct ApproximationResult {
  LowRankFactorization factorization;
  ChebFit fit;
  int design_degree = 0;
};

/// Chebyshev route: p_n(|x-y|^2) with n = degree_for_eps, factored on a degree-2n design.
ApproximationResult approximate_on_variety(const IsotropicKernel& kernel, const VarietySpec& spec, double eps,
                                           std::uint64_t seed, const AuditOptions& audit = {});

/// Taylor Features kernel of degree n over V, exact rank hf(spec, n).
LowRankFactorization taylor_on_variety(const VarietySpec& spec, int n, double sigma, std::uint64_t seed);

/// K_hat(x, y) = k_x^T (K_LL + jitter I)^{-1} k_y.
LowRankFactorization nystrom(const IsotropicKernel& kernel, const PointSet& landmarks, double jitter = 1e-10);

}  // namespace varkernel
