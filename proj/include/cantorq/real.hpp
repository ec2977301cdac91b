#ifndef CANTORQ_REAL_HPP
#define CANTORQ_REAL_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace cantorq {

/// Extended-precision real. Mantissa size is set process-wide through
/// set_precision_bits(); values carry the precision they were created with.
using real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0, boost::multiprecision::allocate_dynamic>,
    boost::multiprecision::et_off>;

/// Exact rational, used for the gamma parameters so that every derived
/// quantity starts from an exact representation.
using rational = boost::multiprecision::mpq_rational;

inline constexpr unsigned kMinPrecisionBits = 64;
inline constexpr unsigned kMaxPrecisionBits = 8192;
inline constexpr unsigned kDefaultPrecisionBits = 256;

/// Sets the working mantissa size for newly created reals. The underlying
/// library rounds up to whole decimal digits, so the effective mantissa is
/// at least `bits`.
void set_precision_bits(unsigned bits);
unsigned precision_bits();

/// Default comparison tolerance, 2^-(precision_bits/2).
real default_tolerance();

/// Number of decimal digits that preserve `bits` of mantissa on re-parse.
unsigned decimal_digits_for_bits(unsigned bits);

/// Temporarily switches the working precision (used by the adaptive
/// precision-doubling retry in the Jacobi recursion).
class precision_scope {
 public:
  explicit precision_scope(unsigned bits);
  ~precision_scope();
  precision_scope(const precision_scope&) = delete;
  precision_scope& operator=(const precision_scope&) = delete;

 private:
  unsigned saved_bits_;
};

real to_real(const rational& q);

// mpfr functions that boost 1.74 does not forward.
real mp_log1p(const real& x);
real mp_expm1(const real& x);

}  // namespace cantorq

#endif
