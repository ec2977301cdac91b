#ifndef CANTORQ_EXPAND_HPP
#define CANTORQ_EXPAND_HPP

#include <cstddef>
#include <vector>

#include "cantorq/words.hpp"

namespace cantorq {

/// Q_n written in the B-polynomial basis of its dyadic class: for
/// n = 2^s (2k+1),
///
///   Q_n = c_0 B_{2^s} + c_1 B_{3*2^s} + ... + c_{k-1} B_{(2k-1)2^s} + B_{(2k+1)2^s}.
///
/// Every basis element shares the smallest factor Q_{2^s}.
struct QExpansion {
  unsigned long long n = 1;
  unsigned s = 0;
  unsigned long long k = 0;
  std::vector<real> coeffs;  // c_0..c_{k-1}; leading coefficient 1 implicit

  std::vector<unsigned long long> basis_degrees() const;  // (2j+1) 2^s, j = 0..k
};

inline constexpr std::size_t kDefaultGramLimit = 256;

/// Solves the k x k Gram system that makes the combination orthogonal to
/// B_{(2j+1)2^s}, j < k. Entries are assembled from the closed-form A-word
/// integrals; the system is solved in the linear domain after scaling each
/// row and column by its diagonal square root (the raw norms span hundreds
/// of orders of magnitude). Throws domain_error when k exceeds gram_limit
/// and precision_error if the scaled matrix loses positive definiteness.
QExpansion gram_expand_Q(const NormTable& nt, unsigned long long n,
                         std::size_t gram_limit = kDefaultGramLimit);

/// Evaluates Q_n(x) through the expansion; each B-word is a product of
/// tower evaluations.
real eval_Q(const NormTable& nt, unsigned long long n, const real& x,
            std::size_t gram_limit = kDefaultGramLimit);
real eval_Q(const NormTable& nt, const QExpansion& e, const real& x);

/// ||Q_n||^2 = integral of Q_n * B_n, computed from the expansion.
LogScalar q_norm_general(const NormTable& nt, unsigned long long n,
                         std::size_t gram_limit = kDefaultGramLimit);

}  // namespace cantorq

#endif
