#ifndef CANTORQ_JACOBI_HPP
#define CANTORQ_JACOBI_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "cantorq/norms.hpp"

namespace cantorq {

struct JacobiOptions {
  unsigned precision_bits = 0;      // 0 = take it from the spec
  unsigned max_precision_bits = kMaxPrecisionBits;  // retry ceiling
  double max_loss_bits = 0;         // 0 = precision/2
  std::string checkpoint_path;      // empty = no checkpointing
  std::size_t checkpoint_chunk = std::size_t{1} << 16;
};

/// Off-diagonal Jacobi parameters a_1..a_N of the equilibrium measure
/// (b_n = 1/2 identically, by the symmetry of the measure about x = 1/2,
/// and is not stored).
///
/// Built by the dyadic recursion: a_1 = ||Q_1||, a_2 = ||Q_2||/||Q_1||;
/// for n = 2^s a pure log-domain quotient of norms and earlier a_i; for
/// n = 2^s(2k+1), k >= 1, the block identity
///
///   a_n^2 = ( ||Q_{2^s}||^2 - a_{2^{s+1}k}^2 ... a_{2^{s+1}k-2^s+1}^2 )
///           / ( a_{n-1}^2 ... a_{2^{s+1}k+1}^2 )
///
/// whose numerator is the only subtraction of near-equal positives in the
/// whole pipeline. The canonical store is the prefix sum of log a_i^2,
/// giving O(1) window products without re-multiplication drift.
class JacobiTable {
 public:
  static JacobiTable compute(const GammaSpec& spec, std::size_t N,
                             const JacobiOptions& options = {});

  const GammaSpec& spec() const { return spec_; }
  std::size_t size() const { return size_; }
  unsigned precision_bits() const { return precision_bits_; }

  /// Worst cancellation observed in a recurrence numerator, in bits.
  double cancellation_loss_bits() const { return loss_bits_; }

  real a(std::size_t n) const;          // linear a_n, 1-based
  LogScalar a_log(std::size_t n) const;

  /// prod_{i<=n} a_i^2 (n = 0 gives 1).
  LogScalar prefix_product_sq(std::size_t n) const;

  /// prod a_i^2 over the window [n-2^s+1, n]; the dyadic recursion blocks.
  LogScalar block_product(std::size_t n, unsigned s) const;

 private:
  JacobiTable() = default;

  GammaSpec spec_ = GammaSpec::constant(rational(1, 4));
  std::size_t size_ = 0;
  unsigned precision_bits_ = 0;
  double loss_bits_ = 0;
  std::vector<real> log_a2_;    // log a_n^2, index 1..N
  std::vector<real> prefix2_;   // prefix2[n] = sum_{i<=n} log a_i^2
};

/// Block-product bracket constants for level s, valid when every
/// gamma <= 1/6:
///   c = 4 gamma_{s+1}^2 / (1-2 gamma_{s+1})^2,  C = 2/(1+sqrt(1-4c)),
/// odd-multiple blocks lie in [C^-1 ||Q_{2^s}||^2, ||Q_{2^s}||^2] and
/// even blocks are bounded by C ||Q_{2^{s+1}}||^2 / ||Q_{2^s}||^2.
struct Jac3Bounds {
  real c;
  real C;
  LogScalar odd_lower;
  LogScalar odd_upper;
  LogScalar even_upper;
};

Jac3Bounds jac3_bounds(const NormTable& nt, unsigned s);

/// Samples a_{j 2^s + n} over s in [s_min, s_max] together with the
/// deviation from the limit value a_n (a_0 := 0).
struct LimitProfileEntry {
  unsigned s = 0;
  std::size_t index = 0;
  real a_index;
  real a_limit;
  real deviation;
};

std::vector<LimitProfileEntry> limit_profile(const JacobiTable& table,
                                             std::size_t j, std::size_t n,
                                             unsigned s_min, unsigned s_max);

}  // namespace cantorq

#endif
