#pragma once

// Approximate Fekete points and tensored norming sets with empirical slack audits.

#include "common.hpp"
#include "lowrank.hpp"
#include "varieties.hpp"

namespace varkernel {

struct FeketeSet {
  PointSet points;
  int degree = 0;
  MonomialBasis basis;
  double greedy_log_volume = 0.0;  // log |det S| after refinement
  int exchanges = 0;               // swaps made by the refinement pass
  /// Largest |l_i(c)| over the candidates after refinement (1 at a discrete optimum).
  double max_lagrange = 0.0;
};

/// Pivoted-QR greedy selection followed by a discrete exchange pass that swaps a
/// design point for a candidate while some Lagrange value exceeds 1 + 1e-3.
FeketeSet approx_fekete(const VarietySpec& spec, int degree, int candidates, std::uint64_t seed);

struct NormingSet {
  PointSet points;
  int target_degree = 0;
  int tensoring_power = 1;
  double certified_slack = 0.0;  // hf(a n)^{1/a}
  std::size_t size = 0;
};

/// candidates = 0 selects 10 * hf(a n).
NormingSet norming_set(const VarietySpec& spec, int n, int a, int candidates, std::uint64_t seed);

struct SlackAudit {
  double empirical = 0.0;  // max over trials of sup / max over the set
  double certified = 0.0;
  int trials = 0;
  int resampled = 0;       // degenerate polynomials skipped
};

/// Random degree-n polynomials with standard normal coefficients on a coordinate-ring basis.
SlackAudit audit_slack(const NormingSet& ns, const VarietySpec& spec, int n, int trials, int sup_sample,
                       std::uint64_t seed);

/// Smallest a with (15 a n)^{dstar / a} <= target.
int tensoring_power_for_slack(int dstar, int n, double target = 2.0);

}  // namespace varkernel
