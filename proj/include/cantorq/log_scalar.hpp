#ifndef CANTORQ_LOG_SCALAR_HPP
#define CANTORQ_LOG_SCALAR_HPP

#include "cantorq/real.hpp"

namespace cantorq {

/// A strictly positive quantity stored as its natural logarithm.
///
/// The scale sequence r_s decays doubly exponentially, so products such as
/// a_1...a_n or ||Q_{2^s}||^2 are kept in the log domain where
/// multiplication, division and integer powers are exact additions at
/// working precision. Linear values are materialized only where a genuine
/// addition or subtraction is required.
class LogScalar {
 public:
  LogScalar() : log_(0) {}  // represents 1

  static LogScalar from_log(real log_value) { return LogScalar(std::move(log_value)); }
  static LogScalar from_value(const real& value);  // requires value > 0
  static LogScalar one() { return LogScalar(); }

  const real& log_value() const { return log_; }
  real log2_value() const;
  real value() const;  // exp(log_value)

  LogScalar& operator*=(const LogScalar& o) { log_ += o.log_; return *this; }
  LogScalar& operator/=(const LogScalar& o) { log_ -= o.log_; return *this; }
  friend LogScalar operator*(LogScalar a, const LogScalar& b) { a *= b; return a; }
  friend LogScalar operator/(LogScalar a, const LogScalar& b) { a /= b; return a; }

  LogScalar pow(long e) const { return LogScalar(log_ * e); }
  LogScalar sqrt() const { return LogScalar(log_ / 2); }

  friend bool operator==(const LogScalar& a, const LogScalar& b) { return a.log_ == b.log_; }
  friend bool operator<(const LogScalar& a, const LogScalar& b) { return a.log_ < b.log_; }
  friend bool operator<=(const LogScalar& a, const LogScalar& b) { return a.log_ <= b.log_; }
  friend bool operator>(const LogScalar& a, const LogScalar& b) { return a.log_ > b.log_; }
  friend bool operator>=(const LogScalar& a, const LogScalar& b) { return a.log_ >= b.log_; }

 private:
  explicit LogScalar(real log_value) : log_(std::move(log_value)) {}
  real log_;
};

/// a - b for positives with a > b, evaluated as
/// log(a-b) = log a + log1p(-exp(log b - log a)).
/// If bits_lost is non-null it receives log2(a / (a-b)), the number of
/// leading bits cancelled by the subtraction. Throws precision_error when
/// b >= a (the difference is not representable as a positive quantity).
LogScalar log_sub(const LogScalar& a, const LogScalar& b, double* bits_lost = nullptr);

}  // namespace cantorq

#endif
