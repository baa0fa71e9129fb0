#pragma once

// Hilbert-function evaluation: closed forms, standard-monomial counting for
// monomial ideals, the Vandermonde-rank oracle, and the degree-based bound.

#include <utility>

#include "common.hpp"
#include "varieties.hpp"

namespace varkernel {

enum class HfMethod { closed_form, standard_monomials, vandermonde_rank };

const char* to_string(HfMethod m);

struct HilbertFunctionValue {
  int n = 0;
  BigInt value;
  HfMethod method = HfMethod::closed_form;
};

/// Thrown by hf_via_rank when the rank saturates the sample and cannot certify HF.
struct IndeterminateRankError : DegenerateSamplingError {
  using DegenerateSamplingError::DegenerateSamplingError;
};

/// Monomials of degree <= n in d variables that no generator divides.
BigInt count_standard_monomials(const MonomialIdeal& ideal, int d, int n);

/// The standard monomials themselves, ascending in `order`.
MonomialBasis standard_monomials(const MonomialIdeal& ideal, int n, const MonomialOrder& order);

HilbertFunctionValue hf(const VarietySpec& spec, int n);

/// Numerical rank of the ambient degree-<=n monomial Vandermonde at
/// oversample * hf(spec, n) sampled points (rows equilibrated first).
HilbertFunctionValue hf_via_rank(const VarietySpec& spec, int n, int oversample = 4, std::uint64_t seed = 0,
                                 double rel_tol = kDefaultRankTol);

/// (deg V * binom(n + d*, d*), binom(n + d, d)).
std::pair<BigInt, BigInt> ambient_bound(int d, int dstar, const BigInt& degv, int n);

}  // namespace varkernel
