#include "cantorq/format.hpp"

#include <cstdlib>

namespace cantorq {

namespace {

// Renders from the (mantissa digits, decimal exponent) pair the way %g
// does: positional for moderate exponents, scientific otherwise, trailing
// zeros trimmed. `exp` is the power of ten of the leading digit.
std::string render(bool negative, std::string digits, long exp, long digit_cap) {
  std::size_t last = digits.find_last_not_of('0');
  digits.erase(last == std::string::npos ? 1 : last + 1);

  std::string out = negative ? "-" : "";
  if (exp < -5 || exp >= digit_cap) {
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(exp);
    return out;
  }
  if (exp < 0) {
    out += "0.";
    out.append(static_cast<std::size_t>(-exp - 1), '0');
    out += digits;
    return out;
  }
  if (static_cast<std::size_t>(exp) + 1 >= digits.size()) {
    out += digits;
    out.append(static_cast<std::size_t>(exp) + 1 - digits.size(), '0');
    return out;
  }
  out += digits.substr(0, static_cast<std::size_t>(exp) + 1) + "." +
         digits.substr(static_cast<std::size_t>(exp) + 1);
  return out;
}

std::string format_with_digits(const real& x, unsigned digits10) {
  if (x == 0) return "0";
  // scientific form "d.ddd...e±XX" from boost, then re-render
  std::string s = x.str(digits10, std::ios_base::scientific);
  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '-') {
    negative = true;
    ++pos;
  } else if (s[pos] == '+') {
    ++pos;
  }
  std::string mant;
  long exp = 0;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '.') continue;
    if (c == 'e' || c == 'E') {
      exp = std::strtol(s.c_str() + pos + 1, nullptr, 10);
      break;
    }
    mant += c;
  }
  return render(negative, std::move(mant), exp, static_cast<long>(digits10));
}

}  // namespace

std::string decimal_string(const real& x, unsigned bits) {
  return format_with_digits(x, decimal_digits_for_bits(bits));
}

std::string decimal_string(const real& x) { return decimal_string(x, precision_bits()); }

std::string log2_string(const LogScalar& v) {
  return format_with_digits(v.log2_value(), 25);
}

}  // namespace cantorq
