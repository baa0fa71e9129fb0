#pragma once

// Built-in example varieties: algebraic invariants, leading-term ideals where
// known, seeded samplers into the unit ball, and membership tests.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"
#include "polybasis.hpp"

namespace varkernel {

/// Monomial ideal given by explicit generators plus, optionally, the implicit
/// family of every squarefree monomial of degree support_bound + 1 (i.e. any
/// monomial touching more than support_bound variables is a member). The
/// implicit family keeps sparse-data ideals usable when binom(d, k+1) is huge.
struct MonomialIdeal {
  int dim = 0;
  std::vector<Monomial> generators;
  std::optional<int> support_bound;

  bool contains(const Monomial& m) const;
  /// Total generator count, implicit family included.
  BigInt generator_count() const;
};

struct Term {
  double coefficient;
  Monomial monomial;
};
/// Sparse polynomial used only for evaluating known defining equations.
using Polynomial = std::vector<Term>;
double evaluate(const Polynomial& p, const double* x);

enum class VarietyKind { full_space, sphere, sparse, rank1, sym_rank1, trig_moment, so3 };

class VarietySpec {
 public:
  VarietyKind kind;
  std::string name;                    // canonical CLI grammar, e.g. "sparse:d=20,k=1"
  std::map<std::string, int> params;
  int ambient_dim = 0;
  int intrinsic_dim = 0;
  BigInt degree;
  std::optional<MonomialIdeal> lt_generators;
  MonomialOrder order;
  double membership_tol = 1e-10;

  /// Closed-form Hilbert function, exact.
  BigInt hf_closed_form(int n) const;
  /// `count` points of V inside the closed unit ball, deterministic in seed.
  PointSet sample(int count, std::uint64_t seed) const;
  /// Defining equations hold within membership_tol and the point lies in the ball.
  bool contains(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// Largest absolute defining-equation residual at x (0 for the full space).
  double max_residual(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// Factor applied by the sampler to land in the unit ball (1 unless noted).
  double ball_scale() const;

  int param(const std::string& key) const { return params.at(key); }
};

/// Builds one of: full(d), sphere(d), sparse(d,k), rank1(m1,m2), symrank1(m),
/// trig(d), so3. Names accept the CLI spellings and the long forms
/// (full_space, sym_rank1, trig_moment).
VarietySpec builtin(std::string_view name, const std::map<std::string, int>& params);

/// Parses the CLI grammar "name:key=value,key=value".
VarietySpec parse_variety(std::string_view text);

/// Gröbner generators of the trigonometric moment curve in R^d (d even), in
/// the unscaled coordinates (cos θ..cos kθ, sin θ..sin kθ), grouped by family:
/// [0] square terms, [1] x_i x_j cross terms, [2] x_i y_j cross terms,
/// [3] y_i y_j cross terms.
std::vector<std::vector<Polynomial>> trig_moment_generators(int d);

/// Unscaled trigonometric moment curve point at angle theta.
Eigen::VectorXd trig_moment_point(int d, double theta);

}  // namespace varkernel
