#include "norming.hpp"

#include <cmath>
#include <mutex>
#include <random>

#include "parallel.hpp"

namespace varkernel {

FeketeSet approx_fekete(const VarietySpec& spec, int degree, int candidates, std::uint64_t seed) {
  if (degree < 0) throw InputError("approx_fekete: degree must be >= 0");
  const std::int64_t m = to_int64(spec.hf_closed_form(degree), "HF");
  if (candidates < 10 * m) throw InputError("approx_fekete: candidates must be >= 10 * hf(degree)");

  const PointSet cand = spec.sample(candidates, seed);
  const UnisolventDesign design = select_unisolvent(spec, degree, cand);

  FeketeSet out;
  out.degree = degree;
  out.basis = design.basis;
  out.points = design.points;
  Eigen::MatrixXd s = design.vdm;
  const Eigen::MatrixXd vc = vandermonde(cand, design.basis);

  // Lagrange values l_i(c_j) at every candidate; rank-one updates per swap,
  // refreshed from scratch periodically to contain drift.
  Eigen::MatrixXd lag = s.partialPivLu().solve(vc);
  const int max_swaps = static_cast<int>(20 * m);
  for (int swap = 0; swap < max_swaps; ++swap) {
    Eigen::Index i = 0, j = 0;
    const double peak = lag.cwiseAbs().maxCoeff(&i, &j);
    if (peak <= 1.0 + 1e-3) break;
    out.points.col(i) = cand.col(j);
    s.col(i) = vc.col(j);
    ++out.exchanges;
    if (out.exchanges % 25 == 0) {
      lag = s.partialPivLu().solve(vc);
    } else {
      const Eigen::RowVectorXd pivot_row = lag.row(i) / lag(i, j);
      const Eigen::VectorXd col = lag.col(j);
      lag -= col * pivot_row;
      lag.row(i) = pivot_row;
    }
  }
  lag = s.partialPivLu().solve(vc);
  out.max_lagrange = lag.cwiseAbs().maxCoeff();

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(s);
  double logdet = 0.0;
  for (Eigen::Index k = 0; k < s.rows(); ++k) logdet += std::log(std::abs(lu.matrixLU()(k, k)));
  if (!std::isfinite(logdet)) throw DegenerateSamplingError("approx_fekete: singular design after refinement");
  out.greedy_log_volume = logdet;
  return out;
}

NormingSet norming_set(const VarietySpec& spec, int n, int a, int candidates, std::uint64_t seed) {
  if (a < 1) throw InputError("norming_set: a must be >= 1");
  if (n < 0) throw InputError("norming_set: n must be >= 0");
  if (candidates < 0) throw InputError("norming_set: candidates must be >= 0");
  if (candidates == 0) candidates = static_cast<int>(10 * to_int64(spec.hf_closed_form(a * n), "hf(a n)"));
  const FeketeSet f = approx_fekete(spec, a * n, candidates, seed);
  NormingSet ns;
  ns.points = f.points;
  ns.target_degree = n;
  ns.tensoring_power = a;
  ns.size = static_cast<std::size_t>(f.points.cols());
  ns.certified_slack = std::pow(spec.hf_closed_form(a * n).convert_to<double>(), 1.0 / a);
  return ns;
}

SlackAudit audit_slack(const NormingSet& ns, const VarietySpec& spec, int n, int trials, int sup_sample,
                       std::uint64_t seed) {
  if (trials < 100) throw InputError("audit_slack: trials must be >= 100");
  if (sup_sample < 1) throw InputError("audit_slack: sup_sample must be >= 1");
  if (n < 0) throw InputError("audit_slack: n must be >= 0");
  if (ns.points.rows() != spec.ambient_dim) throw InputError("audit_slack: dimension mismatch");

  MonomialBasis basis;
  if (spec.lt_generators) {
    basis = standard_monomial_features(spec, n);
  } else {
    const std::int64_t m = to_int64(spec.hf_closed_form(n), "HF");
    basis = select_unisolvent(spec, n, static_cast<int>(std::max<std::int64_t>(10 * m, 64)), derive_seed(seed, 7)).basis;
  }
  const Eigen::Index m = static_cast<Eigen::Index>(basis.size());

  SlackAudit out;
  out.trials = trials;
  out.certified = ns.certified_slack;
  std::mt19937_64 rng(derive_seed(seed, 0));
  std::normal_distribution<double> normal;
  const Eigen::MatrixXd vset = vandermonde(ns.points, basis);
  Eigen::MatrixXd coeffs(trials, m);
  Eigen::VectorXd denom(trials);
  for (int t = 0; t < trials; ++t) {
    for (int attempt = 0;; ++attempt) {
      for (Eigen::Index k = 0; k < m; ++k) coeffs(t, k) = normal(rng);
      denom[t] = (coeffs.row(t) * vset).cwiseAbs().maxCoeff();
      if (denom[t] >= 1e-14) break;
      ++out.resampled;
      if (attempt > 100) throw DegenerateSamplingError("audit_slack: polynomials vanish on the norming set");
    }
  }

  Eigen::VectorXd numer = denom;  // the sup runs over fresh points and the set itself
  std::mutex merge;
  parallel_chunks(static_cast<std::size_t>(sup_sample), 4096, [&](std::size_t c, std::size_t begin, std::size_t end) {
    const PointSet fresh = spec.sample(static_cast<int>(end - begin), derive_seed(seed, 100 + c));
    const Eigen::VectorXd local = (coeffs * vandermonde(fresh, basis)).cwiseAbs().rowwise().maxCoeff();
    std::lock_guard<std::mutex> lock(merge);
    numer = numer.cwiseMax(local);
  });
  out.empirical = numer.cwiseQuotient(denom).maxCoeff();
  return out;
}

int tensoring_power_for_slack(int dstar, int n, double target) {
  if (dstar < 1) throw InputError("tensoring_power_for_slack: dstar must be >= 1");
  if (n < 1) throw InputError("tensoring_power_for_slack: n must be >= 1");
  if (!(target > 1.0)) throw InputError("tensoring_power_for_slack: target must be > 1");
  for (int a = 1; a <= 10'000'000; ++a)
    if (dstar * std::log(15.0 * a * n) / a <= std::log(target)) return a;
  throw CapabilityError("tensoring_power_for_slack: no power below 1e7");
}

}  // namespace varkernel
