#include "cantorq/tower.hpp"

#include "cantorq/errors.hpp"

namespace cantorq {

real NodeSet::weight() const {
  return ldexp(real(1), -static_cast<long>(level));
}

real eval_P(const NormTable& nt, unsigned s, const real& x) {
  real p = x - 1;
  for (unsigned m = 0; m < s; ++m)
    p = p * (p + nt.r_linear(m));
  return p;
}

real eval_Q_pow2(const NormTable& nt, unsigned s, const real& x) {
  return eval_P(nt, s, x) + nt.r_linear(s) / 2;
}

namespace {

// Solutions of P_{2^m}(x) = t, ascending. Each step peels one squaring:
// y = P_{2^{m-1}} satisfies y^2 + r_{m-1} y - t = 0. The more negative
// root is computed directly (no cancellation: both terms of
// -(r + sqrt(disc))/2 have the same sign) and the other by the product
// of roots, y+ * y- = -t. The discriminant clamp is relative to r_{m-1}^2,
// the scale of the discriminant at this level.
std::vector<real> solve_level(const NormTable& nt, unsigned m, const real& t,
                              const real& rel_tol) {
  if (m == 0) return {1 + t};
  const real& rm = nt.r_linear(m - 1);
  real disc = rm * rm + 4 * t;
  if (disc < 0) {
    if (disc < -rel_tol * rm * rm)
      throw domain_error("preimage: negative discriminant at level " + std::to_string(m) +
                         " (target outside [-r_s, 0])");
    disc = 0;  // tangency at the gamma = 1/4 limit
  }
  real y_minus = -(rm + sqrt(disc)) / 2;
  real y_plus = -t / y_minus;

  std::vector<real> left = solve_level(nt, m - 1, y_minus, rel_tol);
  std::vector<real> right = solve_level(nt, m - 1, y_plus, rel_tol);

  std::vector<real> out;
  out.reserve(left.size() * 2);
  if (m == 1) {
    // Level 0 is the single interval [0,1] where P_1 = x-1 increases.
    out.push_back(std::move(left[0]));
    out.push_back(std::move(right[0]));
    return out;
  }
  // One solution of each branch per level-(m-1) interval. P_{2^{m-1}} runs
  // from 0 at the outer endpoint to -r_{m-1} at the inner one, so it
  // decreases on odd intervals and increases on even ones; with
  // y- < y+ that fixes the interleave.
  for (std::size_t j = 0; j < left.size(); ++j) {
    if (j % 2 == 0) {
      out.push_back(std::move(right[j]));
      out.push_back(std::move(left[j]));
    } else {
      out.push_back(std::move(left[j]));
      out.push_back(std::move(right[j]));
    }
  }
  return out;
}

}  // namespace

std::vector<real> preimage(const NormTable& nt, unsigned s, const real& t) {
  return solve_level(nt, s, t, default_tolerance());
}

std::vector<Interval> basic_intervals(const NormTable& nt, unsigned s) {
  std::vector<real> zeros = preimage(nt, s, real(0));
  std::vector<real> inner = preimage(nt, s, -nt.r_linear(s));
  std::vector<Interval> out;
  out.reserve(zeros.size());
  if (s == 0) {
    out.push_back({std::move(inner[0]), std::move(zeros[0]), 0, 1});
    return out;
  }
  // P_{2^s} = 0 at the outer endpoint of every interval and -r_s at the
  // inner one; orientation alternates starting with "decreasing".
  for (std::size_t j = 0; j < zeros.size(); ++j) {
    if (j % 2 == 0)
      out.push_back({std::move(zeros[j]), std::move(inner[j]), s, j + 1});
    else
      out.push_back({std::move(inner[j]), std::move(zeros[j]), s, j + 1});
  }
  return out;
}

NodeSet chebyshev_nodes(const NormTable& nt, unsigned s) {
  if (s == 0) throw domain_error("chebyshev_nodes: level must be >= 1");
  NodeSet ns;
  ns.level = s;
  ns.nodes = preimage(nt, s, -nt.r_linear(s) / 2);
  return ns;
}

namespace {
real pairwise_sum(std::vector<real>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return std::move(v[lo]);
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}
}  // namespace

real integrate_nu(const NodeSet& ns, const std::function<real(const real&)>& f) {
  std::vector<real> terms;
  terms.reserve(ns.nodes.size());
  for (const real& x : ns.nodes) terms.push_back(f(x));
  return pairwise_sum(terms, 0, terms.size()) * ns.weight();
}

real integrate_nu(const NormTable& nt, unsigned s,
                  const std::function<real(const real&)>& f) {
  return integrate_nu(chebyshev_nodes(nt, s), f);
}

}  // namespace cantorq
