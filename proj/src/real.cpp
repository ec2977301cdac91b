#include "cantorq/real.hpp"

#include <cmath>

#include "cantorq/errors.hpp"

namespace cantorq {

namespace {
unsigned g_precision_bits = kDefaultPrecisionBits;

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1;
}
}  // namespace

void set_precision_bits(unsigned bits) {
  if (bits < kMinPrecisionBits || bits > kMaxPrecisionBits)
    throw config_error("precision_bits must lie in [" + std::to_string(kMinPrecisionBits) +
                       ", " + std::to_string(kMaxPrecisionBits) + "], got " + std::to_string(bits));
  g_precision_bits = bits;
  real::default_precision(digits10_for_bits(bits));
}

unsigned precision_bits() { return g_precision_bits; }

real default_tolerance() {
  return ldexp(real(1), -static_cast<int>(g_precision_bits / 2));
}

unsigned decimal_digits_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.3011)) + 2;
}

precision_scope::precision_scope(unsigned bits) : saved_bits_(g_precision_bits) {
  set_precision_bits(bits);
}

precision_scope::~precision_scope() {
  g_precision_bits = saved_bits_;
  real::default_precision(digits10_for_bits(saved_bits_));
}

real to_real(const rational& q) {
  return real(numerator(q)) / real(denominator(q));
}

real mp_log1p(const real& x) {
  real out;
  mpfr_log1p(out.backend().data(), x.backend().data(), MPFR_RNDN);
  return out;
}

real mp_expm1(const real& x) {
  real out;
  mpfr_expm1(out.backend().data(), x.backend().data(), MPFR_RNDN);
  return out;
}

namespace {
// Sets the library default once at startup so translation units that run
// before main (tests constructing statics) see a sane precision.
struct PrecisionInit {
  PrecisionInit() { real::default_precision(digits10_for_bits(kDefaultPrecisionBits)); }
} g_precision_init;
}  // namespace

}  // namespace cantorq
