#ifndef CANTORQ_PRESETS_HPP
#define CANTORQ_PRESETS_HPP

#include <string>
#include <vector>

#include "cantorq/gamma_spec.hpp"

namespace cantorq {

/// A named gamma sequence. Sequences quoted with entries 1/k start below
/// the admissible range for small k, so those presets shift the index to
/// begin at k = 4 (the first k with 1/k <= 1/4); `note` records the shift
/// and is printed in output headers.
struct Preset {
  GammaSpec spec;
  std::string note;
};

/// Names: uniform-quarter, uniform-sixth,
/// example2-alternating[:depth]  (gamma alternating 1/6 with a slowly
///   decaying subsequence; depth = prefix length, default 64),
/// example4-sparse:<s1,s2,...>   (gamma = 1/6 except at the given sparse
///   positions). Throws config_error for unknown names.
Preset load_preset(const std::string& name,
                   unsigned precision_bits = kDefaultPrecisionBits);

std::vector<std::string> preset_names();

}  // namespace cantorq

#endif
