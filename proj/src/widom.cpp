#include "cantorq/widom.hpp"

#include "cantorq/errors.hpp"

namespace cantorq {

WidomSeries WidomSeries::compute(const JacobiTable& table) {
  WidomSeries w;
  w.table_ = &table;
  NormTable nt(table.spec());
  w.capacity_ = nt.capacity();
  return w;
}

LogScalar WidomSeries::W(std::size_t n) const {
  if (table_ == nullptr || n < 1 || n > table_->size())
    throw domain_error("Widom index out of range");
  // log W_n = sum_{i<=n} log a_i - n log Cap
  return LogScalar::from_log(table_->prefix_product_sq(n).log_value() / 2 -
                             static_cast<long>(n) * capacity_.log_value());
}

LogScalar widom_dyadic_closed(const NormTable& nt, unsigned s) {
  // W_{2^s} = sqrt(1-2 gamma_{s+1}) / (2 exp(sum_{k>s} 2^{s-k} log gamma_k))
  rational one_minus = 1 - 2 * nt.spec().gamma(s + 1);
  real tail = ldexp(nt.tail_log_sum(s + 1), static_cast<long>(s));
  return LogScalar::from_log(log(to_real(one_minus)) / 2 - log(real(2)) - tail);
}

WidomBlockReport widom_min_check(const WidomSeries& series, unsigned s) {
  std::size_t lo = std::size_t{1} << s;
  std::size_t hi = std::size_t{2} << s;  // exclusive
  if (hi - 1 > series.size())
    throw domain_error("widom_min_check needs the table through " + std::to_string(hi - 1));
  WidomBlockReport rep;
  rep.s = s;
  rep.argmin = rep.argmax = lo;
  rep.min = rep.max = series.W(lo);
  for (std::size_t n = lo + 1; n < hi; ++n) {
    LogScalar w = series.W(n);
    if (w < rep.min) {
      rep.min = w;
      rep.argmin = n;
    }
    if (w > rep.max) {
      rep.max = w;
      rep.argmax = n;
    }
  }
  rep.min_at_dyadic = (rep.argmin == lo);
  return rep;
}

}  // namespace cantorq
