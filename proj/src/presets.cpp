#include "cantorq/presets.hpp"

#include <sstream>

#include "cantorq/errors.hpp"

namespace cantorq {

namespace {

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw config_error("bad index '" + item + "' in preset parameter");
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"uniform-quarter", "uniform-sixth", "example2-alternating",
          "example4-sparse"};
}

Preset load_preset(const std::string& name, unsigned precision_bits) {
  std::string base = name;
  std::string param;
  if (auto colon = name.find(':'); colon != std::string::npos) {
    base = name.substr(0, colon);
    param = name.substr(colon + 1);
  }

  if (base == "uniform-quarter")
    return {GammaSpec::constant(rational(1, 4), precision_bits), ""};
  if (base == "uniform-sixth")
    return {GammaSpec::constant(rational(1, 6), precision_bits), ""};

  if (base == "example2-alternating") {
    // gamma alternates between a slowly decaying subsequence 1/k on the odd
    // positions and 1/6 on the even ones. The quoted sequence starts at
    // k = 1 where 1/k > 1/4, so the subsequence is shifted to start at
    // k = 4, the first admissible index.
    std::size_t depth = 64;
    if (!param.empty()) {
      auto v = parse_index_list(param);
      if (v.size() != 1 || v[0] < 2) throw config_error("example2-alternating:<depth> needs depth >= 2");
      depth = v[0];
    }
    std::vector<rational> prefix;
    for (std::size_t j = 1; 2 * j - 1 <= depth; ++j) {
      prefix.push_back(rational(1, j + 3));  // odd position 2j-1: 1/(j+3)
      if (2 * j <= depth) prefix.push_back(rational(1, 6));
    }
    return {GammaSpec(std::move(prefix), TailKind::kConstant, {rational(1, 6)}, precision_bits),
            "decaying subsequence shifted to start at k=4 (1/k <= 1/4); prefix depth " +
                std::to_string(depth) + ", tail 1/6"};
  }

  if (base == "example4-sparse") {
    // gamma = 1/6 except gamma_{s_k} = 1/k at the given sparse positions,
    // with the same start-at-k=4 shift.
    if (param.empty())
      throw config_error("example4-sparse needs a position list, e.g. example4-sparse:10,20,40");
    auto positions = parse_index_list(param);
    for (std::size_t i = 1; i < positions.size(); ++i)
      if (positions[i] <= positions[i - 1])
        throw config_error("example4-sparse positions must be strictly increasing");
    if (positions.front() < 1) throw config_error("positions are 1-based");
    std::vector<rational> prefix(positions.back(), rational(1, 6));
    for (std::size_t k = 0; k < positions.size(); ++k)
      prefix[positions[k] - 1] = rational(1, k + 4);
    return {GammaSpec(std::move(prefix), TailKind::kConstant, {rational(1, 6)}, precision_bits),
            "sparse subsequence gamma_{s_k} = 1/(k+3) (shifted to start at k=4), tail 1/6"};
  }

  throw config_error("unknown preset '" + name + "'; available: uniform-quarter, uniform-sixth, "
                     "example2-alternating[:depth], example4-sparse:<s1,s2,...>");
}

}  // namespace cantorq
