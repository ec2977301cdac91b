#include "cantorq/log_scalar.hpp"

#include "cantorq/errors.hpp"

namespace cantorq {

LogScalar LogScalar::from_value(const real& value) {
  if (!(value > 0))
    throw domain_error("LogScalar requires a strictly positive value");
  return LogScalar(log(value));
}

real LogScalar::log2_value() const {
  return log_ / log(real(2));
}

real LogScalar::value() const {
  return exp(log_);
}

LogScalar log_sub(const LogScalar& a, const LogScalar& b, double* bits_lost) {
  // exp(d) with d = log b - log a; d >= 0 means b >= a and the difference
  // is not a positive quantity at this precision.
  real d = b.log_value() - a.log_value();
  if (d >= 0)
    throw precision_error("log_sub: minuend does not exceed subtrahend (cancellation exhausted the working precision)");
  real one_minus = -mp_expm1(d);  // 1 - exp(d), positive
  if (bits_lost != nullptr) {
    // log2(a / (a-b)) = -log2(1 - exp(d))
    *bits_lost = -static_cast<double>(log2(one_minus));
    if (*bits_lost < 0) *bits_lost = 0;
  }
  return LogScalar::from_log(a.log_value() + log(one_minus));
}

}  // namespace cantorq
