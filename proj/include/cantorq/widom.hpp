#ifndef CANTORQ_WIDOM_HPP
#define CANTORQ_WIDOM_HPP

#include "cantorq/jacobi.hpp"

namespace cantorq {

/// Widom factors W_n = a_1...a_n / Cap(K(gamma))^n, kept in the log domain.
/// W_{2^s} >= sqrt(2) always and >= sqrt(6) when every gamma <= 1/6.
/// A view over the Jacobi table, which must outlive it.
class WidomSeries {
 public:
  static WidomSeries compute(const JacobiTable& table);

  std::size_t size() const { return table_ ? table_->size() : 0; }
  LogScalar W(std::size_t n) const;
  LogScalar log_capacity() const { return capacity_; }
  static bool is_dyadic(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

 private:
  const JacobiTable* table_ = nullptr;
  LogScalar capacity_;
};

/// Closed form for the dyadic Widom factor,
///   W_{2^s} = sqrt(1-2 gamma_{s+1}) / (2 exp(sum_{k>s} 2^{s-k} log gamma_k)),
/// using the same closed-form tail machinery as the capacity.
LogScalar widom_dyadic_closed(const NormTable& nt, unsigned s);

/// Scan of one dyadic block [2^s, 2^{s+1}): where the minimum and maximum
/// of W_n are attained. Finite-horizon evidence only; no limit is claimed.
struct WidomBlockReport {
  unsigned s = 0;
  std::size_t argmin = 0;
  std::size_t argmax = 0;
  LogScalar min;
  LogScalar max;
  bool min_at_dyadic = false;
};

WidomBlockReport widom_min_check(const WidomSeries& series, unsigned s);

}  // namespace cantorq

#endif
