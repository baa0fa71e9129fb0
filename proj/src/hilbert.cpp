#include "hilbert.hpp"

#include <algorithm>

namespace varkernel {

const char* to_string(HfMethod m) {
  switch (m) {
    case HfMethod::closed_form:
      return "closed_form";
    case HfMethod::standard_monomials:
      return "standard_monomials";
    case HfMethod::vandermonde_rank:
      return "vandermonde_rank";
  }
  return "?";
}

namespace {

// Depth-first walk over exponent vectors. Explicit generators are bucketed by
// their last nonzero variable: a partial monomial fixed up to variable v can
// only newly become divisible by generators whose support ends at v. Ideal
// membership is closed under raising exponents, so members prune their subtree.
class StandardMonomialWalker {
 public:
  StandardMonomialWalker(const MonomialIdeal& ideal, int d, int n) : ideal_(ideal), d_(d), n_(n) {
    by_last_.resize(static_cast<std::size_t>(d));
    for (const auto& g : ideal.generators) {
      if (g.dim() != d) throw InputError("count_standard_monomials: generator dimension mismatch");
      int last = -1;
      for (int i = 0; i < d; ++i)
        if (g.exponents[static_cast<std::size_t>(i)] > 0) last = i;
      if (last < 0) {
        unit_ideal_ = true;  // the constant 1 is a generator
        continue;
      }
      by_last_[static_cast<std::size_t>(last)].push_back(&g);
    }
    current_ = Monomial::one(d);
  }

  template <typename Visit>
  void walk(Visit&& visit) {
    if (unit_ideal_) return;
    rec(0, n_, 0, visit);
  }

 private:
  template <typename Visit>
  void rec(int var, int remaining, int support, Visit& visit) {
    if (var == d_) {
      visit(current_);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      current_.exponents[static_cast<std::size_t>(var)] = e;
      const int s = support + (e > 0);
      if (ideal_.support_bound && s > *ideal_.support_bound) break;
      if (e > 0 && hits(var)) break;  // larger e stays in the ideal
      rec(var + 1, remaining - e, s, visit);
    }
    current_.exponents[static_cast<std::size_t>(var)] = 0;
  }

  bool hits(int var) const {
    for (const Monomial* g : by_last_[static_cast<std::size_t>(var)]) {
      bool divides = true;
      for (int i = 0; i <= var && divides; ++i)
        divides = g->exponents[static_cast<std::size_t>(i)] <= current_.exponents[static_cast<std::size_t>(i)];
      if (divides) return true;
    }
    return false;
  }

  const MonomialIdeal& ideal_;
  int d_;
  int n_;
  bool unit_ideal_ = false;
  std::vector<std::vector<const Monomial*>> by_last_;
  Monomial current_;
};

}  // namespace

BigInt count_standard_monomials(const MonomialIdeal& ideal, int d, int n) {
  if (n < 0) throw InputError("count_standard_monomials: n must be >= 0");
  if (d < 1 || (ideal.dim != 0 && ideal.dim != d)) throw InputError("count_standard_monomials: dimension mismatch");
  BigInt count = 0;
  StandardMonomialWalker walker(ideal, d, n);
  walker.walk([&](const Monomial&) { ++count; });
  return count;
}

MonomialBasis standard_monomials(const MonomialIdeal& ideal, int n, const MonomialOrder& order) {
  const int d = static_cast<int>(order.priority.size());
  if (n < 0) throw InputError("standard_monomials: n must be >= 0");
  std::vector<Monomial> out;
  StandardMonomialWalker walker(ideal, d, n);
  walker.walk([&](const Monomial& m) {
    if (out.size() >= 50'000'000) throw CapabilityError("standard_monomials: basis too large");
    out.push_back(m);
  });
  MonomialBasis basis = make_basis(std::move(out), order);
  basis.max_degree = n;
  return basis;
}

HilbertFunctionValue hf(const VarietySpec& spec, int n) {
  if (n < 0) throw InputError("hf: n must be >= 0");
  return {n, spec.hf_closed_form(n), HfMethod::closed_form};
}

HilbertFunctionValue hf_via_rank(const VarietySpec& spec, int n, int oversample, std::uint64_t seed, double rel_tol) {
  if (n < 0) throw InputError("hf_via_rank: n must be >= 0");
  if (oversample < 2) throw InputError("hf_via_rank: oversample must be >= 2");
  const std::int64_t predicted = to_int64(spec.hf_closed_form(n), "HF");
  const BigInt monomials = binomial(n + spec.ambient_dim, spec.ambient_dim);
  const BigInt points = BigInt(predicted) * oversample;
  if (monomials * points > BigInt(200'000'000)) {
    throw CapabilityError("hf_via_rank: Vandermonde of " + monomials.str() + " x " + points.str() +
                          " exceeds the dense size limit");
  }
  const PointSet pts = spec.sample(static_cast<int>(points.convert_to<std::int64_t>()), seed);
  const MonomialBasis basis = enumerate_monomials(spec.ambient_dim, n, spec.order);
  const Eigen::MatrixXd v = equilibrate_rows(vandermonde(pts, basis));
  const int rank = numerical_rank(v, rel_tol);
  if (rank >= pts.cols()) {
    throw IndeterminateRankError("hf_via_rank: rank " + std::to_string(rank) + " saturates the " +
                                 std::to_string(pts.cols()) + " sampled points; more samples needed");
  }
  return {n, rank, HfMethod::vandermonde_rank};
}

std::pair<BigInt, BigInt> ambient_bound(int d, int dstar, const BigInt& degv, int n) {
  if (d < 1 || dstar < 1 || dstar > d) throw InputError("ambient_bound: need 1 <= dstar <= d");
  if (n < 0) throw InputError("ambient_bound: n must be >= 0");
  if (degv < 1) throw InputError("ambient_bound: degree must be >= 1");
  return {degv * binomial(n + dstar, dstar), binomial(n + d, d)};
}

}  // namespace varkernel
