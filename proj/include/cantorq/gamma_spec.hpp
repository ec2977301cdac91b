#ifndef CANTORQ_GAMMA_SPEC_HPP
#define CANTORQ_GAMMA_SPEC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cantorq/real.hpp"

namespace cantorq {

enum class TailKind { kConstant, kPeriodic };

/// The parameter sequence gamma = (gamma_s), given as a finite prefix plus a
/// constant or periodic tail rule so every infinite sum over the sequence
/// has a closed form. Each gamma_s must satisfy 0 < gamma_s <= 1/4; the
/// value 1/4 is admitted as the limit case (K(gamma) = [0,1] when all
/// gamma_s = 1/4).
class GammaSpec {
 public:
  GammaSpec(std::vector<rational> prefix, TailKind tail_kind,
            std::vector<rational> tail_values,
            unsigned precision_bits = kDefaultPrecisionBits);

  /// Constant sequence helper.
  static GammaSpec constant(const rational& value,
                            unsigned precision_bits = kDefaultPrecisionBits);

  /// Inline grammar: `const:<v>`, `periodic:<v1,v2,...>`,
  /// `list:<v1,...>;tail=const:<v>` or `list:<v1,...>;tail=periodic:<v1,...>`.
  /// Values are exact rationals `p/q` or exact decimal strings.
  static GammaSpec parse_inline(const std::string& text,
                                unsigned precision_bits = kDefaultPrecisionBits);

  /// JSON config with keys: prefix, tail.kind, tail.values, precision_bits.
  static GammaSpec from_config_text(const std::string& json_text);
  static GammaSpec from_config_file(const std::string& path);

  /// gamma_k, 1-based, defined for every k by the tail rule.
  const rational& gamma(std::size_t k) const;

  const std::vector<rational>& prefix() const { return prefix_; }
  TailKind tail_kind() const { return tail_kind_; }
  const std::vector<rational>& tail_values() const { return tail_values_; }
  unsigned precision_bits() const { return precision_bits_; }

  /// True iff every gamma_s <= 1/6; gates the block-product brackets and
  /// the limit results that rely on them.
  bool jac3_regime() const { return jac3_regime_; }

  /// Canonical text form, also the input of hash().
  std::string to_string() const;
  std::string to_config_text() const;
  std::uint64_t hash() const;

 private:
  std::vector<rational> prefix_;
  TailKind tail_kind_;
  std::vector<rational> tail_values_;
  unsigned precision_bits_;
  bool jac3_regime_;
};

/// Parses `p/q` or an exact decimal string (optionally with exponent) into
/// an exact rational. Throws config_error on malformed input.
rational parse_rational(const std::string& text);

std::string rational_to_string(const rational& q);

}  // namespace cantorq

#endif
