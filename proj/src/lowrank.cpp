#include "lowrank.hpp"

#include <algorithm>
#include <cmath>

#include "hilbert.hpp"
#include "parallel.hpp"

namespace varkernel {

Eigen::MatrixXd LowRankFactorization::left_features(const PointSet& points) const {
  Eigen::MatrixXd out = left * frame(points);
  if (scaling_sigma)
    for (Eigen::Index j = 0; j < points.cols(); ++j) out.col(j) *= taylor_scaling(points.col(j), *scaling_sigma);
  return out;
}

Eigen::MatrixXd LowRankFactorization::right_features(const PointSet& points) const {
  Eigen::MatrixXd out = right * frame(points);
  if (scaling_sigma)
    for (Eigen::Index j = 0; j < points.cols(); ++j) out.col(j) *= taylor_scaling(points.col(j), *scaling_sigma);
  return out;
}

Eigen::VectorXd LowRankFactorization::evaluate_pairs(const PointSet& xs, const PointSet& ys) const {
  if (xs.cols() != ys.cols() || xs.rows() != ys.rows()) throw InputError("evaluate_pairs: shape mismatch");
  return left_features(xs).cwiseProduct(right_features(ys)).colwise().sum().transpose();
}

double LowRankFactorization::operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                                        const Eigen::Ref<const Eigen::VectorXd>& y) const {
  const PointSet px = x, py = y;
  return evaluate_pairs(px, py)[0];
}

MonomialBasis standard_monomial_features(const VarietySpec& spec, int n) {
  if (!spec.lt_generators) throw CapabilityError("standard_monomial_features: no leading-term ideal for " + spec.name);
  return standard_monomials(*spec.lt_generators, n, spec.order);
}

namespace {

struct PivotSelection {
  std::vector<Eigen::Index> columns;
  double log_volume = 0.0;
  double last_ratio = 0.0;  // |R_kk| / |R_00| at the last kept pivot
};

// Greedy column selection by column-pivoted Householder QR.
PivotSelection pivot_columns(const Eigen::MatrixXd& a, Eigen::Index count) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  const auto& perm = qr.colsPermutation().indices();
  const Eigen::MatrixXd& r = qr.matrixQR();
  PivotSelection sel;
  const Eigen::Index limit = std::min<Eigen::Index>({count, a.rows(), a.cols()});
  const double r0 = limit > 0 ? std::abs(r(0, 0)) : 0.0;
  for (Eigen::Index k = 0; k < limit; ++k) {
    sel.columns.push_back(perm[k]);
    const double rk = std::abs(r(k, k));
    sel.log_volume += std::log(rk);
    sel.last_ratio = r0 > 0.0 ? rk / r0 : 0.0;
  }
  return sel;
}

}  // namespace

UnisolventDesign select_unisolvent(const VarietySpec& spec, int n, const PointSet& candidates) {
  if (n < 0) throw InputError("select_unisolvent: n must be >= 0");
  if (candidates.rows() != spec.ambient_dim) throw InputError("select_unisolvent: candidate dimension mismatch");
  const std::int64_t m = to_int64(spec.hf_closed_form(n), "HF");
  if (candidates.cols() < m) throw InputError("select_unisolvent: fewer candidates than hf(n)");

  const bool symbolic = spec.lt_generators.has_value();
  const MonomialBasis ambient = symbolic ? standard_monomial_features(spec, n)
                                         : enumerate_monomials(spec.ambient_dim, n, spec.order);
  const Eigen::MatrixXd v = equilibrate_rows(vandermonde(candidates, ambient));
  const PivotSelection rows = pivot_columns(v, m);
  if (static_cast<std::int64_t>(rows.columns.size()) < m || rows.last_ratio < 1e-13) {
    throw DegenerateSamplingError("select_unisolvent: candidate Vandermonde rank below hf(n) = " + std::to_string(m) +
                                  "; retry with more candidates");
  }

  UnisolventDesign design;
  design.points.resize(spec.ambient_dim, m);
  for (std::int64_t j = 0; j < m; ++j) design.points.col(j) = candidates.col(rows.columns[static_cast<std::size_t>(j)]);
  design.log_volume = rows.log_volume;

  if (symbolic) {
    design.basis = ambient;
  } else {
    // Pick hf(n) monomials that stay independent on the chosen points.
    const Eigen::MatrixXd vt = equilibrate_rows(vandermonde(design.points, ambient).transpose());
    const PivotSelection cols = pivot_columns(vt, m);
    if (static_cast<std::int64_t>(cols.columns.size()) < m || cols.last_ratio < 1e-13)
      throw DegenerateSamplingError("select_unisolvent: monomial selection is rank deficient");
    std::vector<Monomial> chosen;
    for (Eigen::Index c : cols.columns) chosen.push_back(ambient.monomials[static_cast<std::size_t>(c)]);
    design.basis = make_basis(std::move(chosen), spec.order);
    design.basis.max_degree = n;
  }

  design.vdm = vandermonde(design.points, design.basis);
  const Eigen::VectorXd sv = singular_values(design.vdm);
  const double smax = sv.size() ? sv[0] : 0.0;
  const double smin = sv.size() ? sv[sv.size() - 1] : 0.0;
  if (!(smin >= 1e-10 * smax) || smax == 0.0)
    throw DegenerateSamplingError("select_unisolvent: design matrix is numerically singular; retry");
  design.condition_estimate = smax / smin;
  return design;
}

UnisolventDesign select_unisolvent(const VarietySpec& spec, int n, int candidates, std::uint64_t seed) {
  if (n < 0) throw InputError("select_unisolvent: n must be >= 0");
  const std::int64_t m = to_int64(spec.hf_closed_form(n), "HF");
  if (candidates < 4 * m) throw InputError("select_unisolvent: candidates must be >= 4 * hf(n)");
  return select_unisolvent(spec, n, spec.sample(candidates, seed));
}

int exact_rank(const VarietySpec& spec, const PolynomialKernel& kernel, int n_eff, std::uint64_t seed, double rel_tol) {
  if (n_eff < kernel.x_degree()) throw InputError("exact_rank: n_eff is below the kernel's degree in x");
  const std::int64_t m = to_int64(spec.hf_closed_form(n_eff), "HF");
  const UnisolventDesign design =
      select_unisolvent(spec, n_eff, static_cast<int>(std::max<std::int64_t>(10 * m, 64)), seed);
  return numerical_rank(kernel.gram(design.points, design.points), rel_tol);
}

LowRankFactorization factorize_on_design(const UnisolventDesign& design, const Eigen::MatrixXd& design_kernel,
                                         double rel_tol, bool symmetric) {
  const Eigen::Index m = design.vdm.rows();
  if (design_kernel.rows() != m || design_kernel.cols() != m)
    throw InputError("factorize_on_design: kernel matrix must be M x M");
  if (!design_kernel.allFinite()) throw NumericalError("factorize_on_design: non-finite kernel values");

  Eigen::MatrixXd lcore, rcore;  // rank x M, in terms of the Lagrange frame
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(design_kernel);
    if (eig.info() != Eigen::Success) throw NumericalError("factorize_on_design: eigendecomposition failed");
    const Eigen::VectorXd& lam = eig.eigenvalues();
    const double top = lam.cwiseAbs().maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = m - 1; i >= 0; --i)
      if (std::abs(lam[i]) > rel_tol * top) keep.push_back(i);
    std::stable_sort(keep.begin(), keep.end(), [&](auto a, auto b) { return std::abs(lam[a]) > std::abs(lam[b]); });
    lcore.resize(static_cast<Eigen::Index>(keep.size()), m);
    rcore.resize(lcore.rows(), m);
    for (std::size_t k = 0; k < keep.size(); ++k) {
      const double l = lam[keep[k]];
      const double s = std::sqrt(std::abs(l));
      lcore.row(static_cast<Eigen::Index>(k)) = s * eig.eigenvectors().col(keep[k]).transpose();
      rcore.row(static_cast<Eigen::Index>(k)) = (l < 0 ? -s : s) * eig.eigenvectors().col(keep[k]).transpose();
    }
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(design_kernel, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    Eigen::Index r = 0;
    while (r < sv.size() && sv[r] > rel_tol * sv[0]) ++r;
    const Eigen::VectorXd root = sv.head(r).cwiseSqrt();
    lcore = root.asDiagonal() * svd.matrixU().leftCols(r).transpose();
    rcore = root.asDiagonal() * svd.matrixV().leftCols(r).transpose();
  }

  // Lagrange frame l(x) = S^{-1} b(x); fold S^{-1} into the coefficients.
  const Eigen::PartialPivLU<Eigen::MatrixXd> lut(design.vdm.transpose());
  LowRankFactorization f;
  f.rank = static_cast<int>(lcore.rows());
  f.left = lut.solve(lcore.transpose()).transpose();
  f.right = lut.solve(rcore.transpose()).transpose();
  const MonomialBasis basis = design.basis;
  f.frame = [basis](const PointSet& pts) { return vandermonde(pts, basis); };
  return f;
}

Eigen::VectorXd audit_errors(const LowRankFactorization& f, const IsotropicKernel& truth, const VarietySpec& spec,
                             const AuditOptions& opts) {
  Eigen::VectorXd errors(static_cast<Eigen::Index>(opts.pairs));
  parallel_chunks(opts.pairs, 2048, [&](std::size_t c, std::size_t begin, std::size_t end) {
    const int count = static_cast<int>(end - begin);
    const PointSet xs = spec.sample(count, derive_seed(opts.seed, 2 * c));
    const PointSet ys = spec.sample(count, derive_seed(opts.seed, 2 * c + 1));
    const Eigen::VectorXd est = f.evaluate_pairs(xs, ys);
    for (int i = 0; i < count; ++i)
      errors[static_cast<Eigen::Index>(begin) + i] = std::abs(truth(xs.col(i), ys.col(i)) - est[i]);
  });
  return errors;
}

double audit_sup_error(const LowRankFactorization& f, const IsotropicKernel& truth, const VarietySpec& spec,
                       const AuditOptions& opts) {
  if (opts.pairs == 0) return 0.0;
  return audit_errors(f, truth, spec, opts).maxCoeff();
}

ApproximationResult approximate_on_variety(const IsotropicKernel& kernel, const VarietySpec& spec, double eps,
                                           std::uint64_t seed, const AuditOptions& audit) {
  if (!(eps > 0.0)) throw InputError("approximate_on_variety: eps must be > 0");
  if (kernel.dim != spec.ambient_dim) throw InputError("approximate_on_variety: kernel and variety dimensions differ");
  ApproximationResult out;
  const int n = degree_for_eps(kernel, eps);
  out.fit = cheb_fit(kernel, n);
  out.design_degree = 2 * n;
  const PolynomialKernel pk = isotropic_polynomial(out.fit);
  const std::int64_t m = to_int64(spec.hf_closed_form(out.design_degree), "HF");
  const UnisolventDesign design =
      select_unisolvent(spec, out.design_degree, static_cast<int>(std::max<std::int64_t>(10 * m, 64)), seed);
  out.factorization = factorize_on_design(design, pk.gram(design.points, design.points), 1e-14, true);
  out.factorization.certificate.certified = out.fit.sup_error;
  out.factorization.certificate.audit_pairs = audit.pairs;
  out.factorization.certificate.audit_seed = audit.seed;
  out.factorization.certificate.measured_sup_error = audit_sup_error(out.factorization, kernel, spec, audit);
  return out;
}

LowRankFactorization taylor_on_variety(const VarietySpec& spec, int n, double sigma, std::uint64_t seed) {
  const PolynomialKernel pk = taylor_features_profile(n, sigma);
  const std::int64_t m = to_int64(spec.hf_closed_form(n), "HF");
  const UnisolventDesign design =
      select_unisolvent(spec, n, static_cast<int>(std::max<std::int64_t>(10 * m, 64)), seed);
  LowRankFactorization f = factorize_on_design(design, pk.gram(design.points, design.points), 1e-13, true);
  f.scaling_sigma = sigma;
  f.certificate.certified = taylor_sup_error_bound(n, sigma);
  return f;
}

LowRankFactorization nystrom(const IsotropicKernel& kernel, const PointSet& landmarks, double jitter) {
  if (!(jitter >= 0.0)) throw InputError("nystrom: jitter must be >= 0");
  if (landmarks.cols() < 1) throw InputError("nystrom: at least one landmark is required");
  if (landmarks.rows() != kernel.dim) throw InputError("nystrom: landmark dimension mismatch");
  for (Eigen::Index i = 0; i < landmarks.cols(); ++i)
    for (Eigen::Index j = i + 1; j < landmarks.cols(); ++j)
      if (landmarks.col(i) == landmarks.col(j)) throw InputError("nystrom: landmarks must be distinct");

  const Eigen::Index l = landmarks.cols();
  Eigen::MatrixXd g(l, l);
  for (Eigen::Index i = 0; i < l; ++i)
    for (Eigen::Index j = 0; j < l; ++j) g(i, j) = kernel(landmarks.col(i), landmarks.col(j));
  g.diagonal().array() += jitter;
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw NumericalError("nystrom: regularized landmark matrix is not positive definite");
  const Eigen::MatrixXd lower = llt.matrixL();
  const Eigen::MatrixXd linv = lower.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(l, l));

  LowRankFactorization f;
  f.rank = static_cast<int>(l);
  f.left = linv;
  f.right = linv;
  f.frame = [kernel, landmarks](const PointSet& pts) {
    Eigen::MatrixXd k(landmarks.cols(), pts.cols());
    for (Eigen::Index j = 0; j < pts.cols(); ++j)
      for (Eigen::Index i = 0; i < landmarks.cols(); ++i) k(i, j) = kernel(landmarks.col(i), pts.col(j));
    return k;
  };
  return f;
}

}  // namespace varkernel
