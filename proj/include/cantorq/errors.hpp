#ifndef CANTORQ_ERRORS_HPP
#define CANTORQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cantorq {

/// Input outside the mathematical domain of an operation
/// (negative discriminant, window out of range, regime violation, ...).
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// The working precision cannot support the request (cancellation ate more
/// than the allowed bits, a Gram pivot went nonpositive, ...).
struct precision_error : std::runtime_error {
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed configuration: gamma values out of range, bad tail rule,
/// unparsable input.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cantorq

#endif
