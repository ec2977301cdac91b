#ifndef CANTORQ_NORMS_HPP
#define CANTORQ_NORMS_HPP

#include <deque>
#include <mutex>

#include "cantorq/gamma_spec.hpp"
#include "cantorq/log_scalar.hpp"

namespace cantorq {

/// Scale sequence r_s, squared norms ||Q_{2^s}||^2 and the capacity of
/// K(gamma), all in closed form:
///
///   r_0 = 1,  r_s = gamma_s r_{s-1}^2
///   ||Q_{2^s}||^2 = (1 - 2 gamma_{s+1}) r_s^2 / 4
///   Cap(K(gamma)) = exp( sum_{k>=1} 2^-k log gamma_k )
///
/// Values are memoized; the fill is idempotent and guarded, so a table can
/// be shared across threads after construction.
class NormTable {
 public:
  explicit NormTable(GammaSpec spec);

  NormTable(const NormTable&) = delete;
  NormTable& operator=(const NormTable&) = delete;

  const GammaSpec& spec() const { return spec_; }

  LogScalar r(std::size_t s) const;
  const real& r_linear(std::size_t s) const;
  LogScalar q_norm_sq(std::size_t s) const;
  LogScalar capacity() const;

  real gamma_real(std::size_t k) const;   // 1-based
  real log_gamma(std::size_t k) const;    // 1-based

  /// sum_{k>=m} 2^-k log gamma_k, m >= 1, via the closed-form tail.
  real tail_log_sum(std::size_t m) const;

  /// Same sum truncated at depth d (for convergence checks).
  real tail_log_sum_truncated(std::size_t m, std::size_t depth) const;

 private:
  void ensure(std::size_t s) const;

  GammaSpec spec_;
  mutable std::mutex mu_;
  // deques: appends never invalidate references handed out earlier
  mutable std::deque<real> log_r_;      // log r_s
  mutable std::deque<real> r_linear_;   // r_s materialized
  mutable std::deque<real> log_norm_;   // log ||Q_{2^s}||^2
};

}  // namespace cantorq

#endif
