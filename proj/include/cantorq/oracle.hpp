#ifndef CANTORQ_ORACLE_HPP
#define CANTORQ_ORACLE_HPP

#include <cstddef>
#include <vector>

#include "cantorq/jacobi.hpp"
#include "cantorq/tower.hpp"
#include "cantorq/words.hpp"

namespace cantorq {

/// A finite positive measure given by nodes and weights; the ground-truth
/// side of every closed-form check.
struct DiscreteMeasure {
  std::vector<real> nodes;
  std::vector<real> weights;

  static DiscreteMeasure nu(const NormTable& nt, unsigned s);
};

struct Recurrence {
  std::vector<real> a;  // a[j] = a_{j+1}
  std::vector<real> b;  // b[j] = b_{j+1}
};

/// Discretized Stieltjes procedure: Lanczos iteration on the diagonal
/// operator of the nodes with starting vector sqrt(weights), with full
/// reorthogonalization against all previous vectors at every step.
/// Requires M < node count; throws precision_error on breakdown
/// (a vanishing or nonpositive norm).
Recurrence stieltjes(const DiscreteMeasure& measure, std::size_t M);

/// Recursion-vs-oracle divergence for a_1..a_M, plus the oracle's own
/// s-2 -> s Cauchy difference so oracle error can be told apart from
/// recursion error.
struct JacobiComparison {
  unsigned level = 0;
  std::size_t M = 0;
  real max_deviation;
  std::vector<real> deviations;
  real oracle_cauchy;   // max |a^(nu_s) - a^(nu_{s-2})|
  real max_b_offset;    // max |b_j - 1/2| (symmetry check)
  bool pass = false;
};

JacobiComparison compare_jacobi(const GammaSpec& spec, unsigned s,
                                std::size_t M, const real& tol);

/// nu_t quadrature with the tower values Q_{2^m}(x_k) cached per level,
/// so batches of word integrals cost one pass per word.
class NuQuadrature {
 public:
  NuQuadrature(const NormTable& nt, unsigned level, unsigned max_word_level);

  unsigned level() const { return level_; }
  const NodeSet& node_set() const { return nodes_; }

  /// integral of the A-word against nu_level.
  real word_integral(const AWord& w) const;

 private:
  unsigned level_;
  NodeSet nodes_;
  std::vector<std::vector<real>> q_;  // q_[m][i] = Q_{2^m}(x_i)
};

}  // namespace cantorq

#endif
