#ifndef CANTORQ_WORDS_HPP
#define CANTORQ_WORDS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantorq/norms.hpp"

namespace cantorq {

struct AWordFactor {
  unsigned level = 0;  // the factor is Q_{2^level}
  int exponent = 1;    // 1 or 2

  friend bool operator==(const AWordFactor&, const AWordFactor&) = default;
};

/// Product of Q_{2^k} factors with exponents in {1,2}, levels strictly
/// increasing. Indexed bottom-up: factor(0) is the lowest level s_1.
class AWord {
 public:
  explicit AWord(std::vector<AWordFactor> factors);

  /// Text form "deg:exp,deg:exp,..." with degrees powers of two,
  /// e.g. "4:2,2:1" for Q_4^2 Q_2. Order of pairs is irrelevant.
  static AWord parse(const std::string& text);

  const std::vector<AWordFactor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  unsigned top_level() const { return factors_.back().level; }
  unsigned long long degree() const;
  std::string to_string() const;

 private:
  std::vector<AWordFactor> factors_;
};

/// B_n: the product of Q_{2^k} over the set bits of n (all exponents 1).
AWord b_word(unsigned long long n);

/// Product of two words; exponents add and must stay within {1,2}.
AWord word_product(const AWord& a, const AWord& b);

/// n = 2^s (2k+1); returns (s, k).
std::pair<unsigned, unsigned long long> decompose_index(unsigned long long n);

/// The integral of an A-word against the equilibrium measure is either
/// exactly zero or a product of squared norms ||Q_{2^l}||^2. Both
/// evaluation routes below first derive the list of contributing levels
/// and report zero structurally (never through a floating comparison).
/// nullopt = the integral is exactly zero.
///
/// Closed form: zero iff the bottom exponent is 1 or some higher
/// exponent-1 factor sits above a level gap; otherwise the product of
/// ||Q_{2^{s_k}}||^2 over positions whose successor exponent is 2
/// (sentinel i_{n+1} = 2), i.e. the top level of each maximal
/// consecutive run.
std::optional<std::vector<unsigned>> a_integral_levels_closed(const AWord& w);

/// Independent route: the four reduction procedures applied literally.
/// (a) strip a trailing square; (b) collapse a consecutive-level run
/// closed by a square; (c) exponent-1 factor above a gap => zero;
/// (d) exponent-1 bottom factor => zero.
std::optional<std::vector<unsigned>> a_integral_levels_reduce(const AWord& w);

std::optional<LogScalar> a_integral_closed(const NormTable& nt, const AWord& w);
std::optional<LogScalar> a_integral_reduce(const NormTable& nt, const AWord& w);

/// ||B_n||^2 = prod over set bits of ||Q_{2^k}||^2.
LogScalar b_norm_sq(const NormTable& nt, unsigned long long n);

}  // namespace cantorq

#endif
