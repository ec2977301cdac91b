#ifndef CANTORQ_TOWER_HPP
#define CANTORQ_TOWER_HPP

#include <functional>
#include <vector>

#include "cantorq/norms.hpp"

namespace cantorq {

/// One basic interval I_{j,s} of E_s. Intervals of a level are pairwise
/// disjoint except at the gamma = 1/4 limit, where neighbours may touch.
struct Interval {
  real left;
  real right;
  unsigned level = 0;
  std::size_t index = 0;  // 1-based, left to right

  real length() const { return right - left; }
};

/// The 2^s zeros of Q_{2^s} carrying uniform weight 2^-s: the discrete
/// measure nu_s whose weak-star limit is the equilibrium measure.
struct NodeSet {
  unsigned level = 0;
  std::vector<real> nodes;  // strictly increasing, symmetric about 1/2

  real weight() const;  // 2^-level
};

/// P_{2^s}(x) via the defining tower P_1 = x-1, P_{2^{s+1}} = P_{2^s}(P_{2^s} + r_s).
real eval_P(const NormTable& nt, unsigned s, const real& x);

/// Q_{2^s}(x) = P_{2^s}(x) + r_s/2 (the Chebyshev form of the monic OP).
real eval_Q_pow2(const NormTable& nt, unsigned s, const real& x);

/// All 2^s real solutions of P_{2^s}(x) = t, ascending. Defined whenever
/// every intermediate discriminant is nonnegative (guaranteed for
/// t in [-r_s, 0]). Tiny negative discriminants within the working
/// tolerance are clamped to zero (tangency at the gamma = 1/4 limit);
/// anything below that raises domain_error.
///
/// The order comes from the branch structure, not from a sort: each
/// level-m basic interval holds exactly one solution of each quadratic
/// branch, and the orientation of P_{2^m} alternates across intervals,
/// so the two branch solutions interleave deterministically. This keeps
/// the exact pairing x <-> 1-x.
std::vector<real> preimage(const NormTable& nt, unsigned s, const real& t);

/// The 2^s basic intervals of E_s; endpoints are the preimages of 0 and
/// -r_s under P_{2^s}.
std::vector<Interval> basic_intervals(const NormTable& nt, unsigned s);

/// Zeros of Q_{2^s} (that is, P_{2^s} = -r_s/2) with weight 2^-s; s >= 1.
NodeSet chebyshev_nodes(const NormTable& nt, unsigned s);

/// 2^-s sum_k f(x_k): the quadrature approximation of the integral of f
/// against the equilibrium measure. Summation is a pairwise tree, so the
/// result does not depend on evaluation chunking.
real integrate_nu(const NormTable& nt, unsigned s,
                  const std::function<real(const real&)>& f);

real integrate_nu(const NodeSet& ns, const std::function<real(const real&)>& f);

}  // namespace cantorq

#endif
