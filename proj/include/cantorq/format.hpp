#ifndef CANTORQ_FORMAT_HPP
#define CANTORQ_FORMAT_HPP

#include <string>

#include "cantorq/log_scalar.hpp"

namespace cantorq {

/// Decimal form with ceil(precision_bits * 0.3011) + 2 significant digits,
/// trailing zeros trimmed. Re-parsing at the same precision reproduces the
/// value; identical input gives byte-identical output.
std::string decimal_string(const real& x, unsigned bits);
std::string decimal_string(const real& x);  // current working precision

/// log2 of a positive quantity, as a short decimal (companion column).
std::string log2_string(const LogScalar& v);

}  // namespace cantorq

#endif
