#include "cantorq/words.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "cantorq/errors.hpp"

namespace cantorq {

AWord::AWord(std::vector<AWordFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw domain_error("A-word must have at least one factor");
  std::sort(factors_.begin(), factors_.end(),
            [](const AWordFactor& a, const AWordFactor& b) { return a.level < b.level; });
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].exponent != 1 && factors_[i].exponent != 2)
      throw domain_error("A-word exponents must be 1 or 2");
    if (i > 0 && factors_[i].level == factors_[i - 1].level)
      throw domain_error("A-word levels must be distinct");
  }
}

AWord AWord::parse(const std::string& text) {
  auto parse_uint = [](const std::string& s) -> unsigned long long {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw config_error("bad number '" + s + "' in A-word");
    try {
      return std::stoull(s);
    } catch (const std::out_of_range&) {
      throw config_error("number '" + s + "' out of range in A-word");
    }
  };
  std::vector<AWordFactor> factors;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw config_error("bad A-word factor '" + item + "' (want <degree>:<exponent>)");
    unsigned long long deg = parse_uint(item.substr(0, colon));
    int e = static_cast<int>(parse_uint(item.substr(colon + 1)));
    if (deg == 0 || (deg & (deg - 1)) != 0)
      throw config_error("A-word degree " + std::to_string(deg) + " is not a power of two");
    if (e != 1 && e != 2)
      throw config_error("A-word exponent must be 1 or 2");
    factors.push_back({static_cast<unsigned>(std::countr_zero(deg)), e});
  }
  if (factors.empty()) throw config_error("empty A-word");
  return AWord(std::move(factors));
}

unsigned long long AWord::degree() const {
  unsigned long long d = 0;
  for (const auto& f : factors_) d += (1ull << f.level) * static_cast<unsigned>(f.exponent);
  return d;
}

std::string AWord::to_string() const {
  std::ostringstream os;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    os << (1ull << factors_[i].level) << ':' << factors_[i].exponent;
    if (i != 0) os << ',';
  }
  return os.str();
}

AWord b_word(unsigned long long n) {
  if (n == 0) throw domain_error("B_0 is not a word");
  std::vector<AWordFactor> factors;
  for (unsigned k = 0; k < 64 && (n >> k); ++k)
    if ((n >> k) & 1) factors.push_back({k, 1});
  return AWord(std::move(factors));
}

AWord word_product(const AWord& a, const AWord& b) {
  std::map<unsigned, int> exps;
  for (const auto& f : a.factors()) exps[f.level] += f.exponent;
  for (const auto& f : b.factors()) exps[f.level] += f.exponent;
  std::vector<AWordFactor> factors;
  for (const auto& [lvl, e] : exps) {
    if (e > 2)
      throw domain_error("word product has exponent " + std::to_string(e) + " > 2");
    factors.push_back({lvl, e});
  }
  return AWord(std::move(factors));
}

std::pair<unsigned, unsigned long long> decompose_index(unsigned long long n) {
  if (n == 0) throw domain_error("decompose_index: n must be >= 1");
  unsigned s = static_cast<unsigned>(std::countr_zero(n));
  return {s, ((n >> s) - 1) / 2};
}

std::optional<std::vector<unsigned>> a_integral_levels_closed(const AWord& w) {
  const auto& f = w.factors();
  // c_k = (i_k - 1)^(s_k - s_{k-1} - 1): zero iff an exponent-1 factor sits
  // above a level gap. The bottom factor is special: exponent 1 there kills
  // the integral for every s_1 (for s_1 = 0 by the antisymmetry of Q_1,
  // for s_1 >= 1 by reduction (d)), so the test is structural on i_1.
  if (f[0].exponent == 1) return std::nullopt;
  for (std::size_t k = 1; k < f.size(); ++k)
    if (f[k].exponent == 1 && f[k].level >= f[k - 1].level + 2) return std::nullopt;
  // Nonzero: product over positions whose successor exponent is 2
  // (sentinel i_{n+1} = 2), i.e. the top of each maximal consecutive run.
  std::vector<unsigned> levels;
  for (std::size_t k = 0; k < f.size(); ++k) {
    int next_exp = (k + 1 < f.size()) ? f[k + 1].exponent : 2;
    if (next_exp == 2) levels.push_back(f[k].level);
  }
  return levels;
}

std::optional<std::vector<unsigned>> a_integral_levels_reduce(const AWord& w) {
  std::vector<AWordFactor> f = w.factors();  // ascending level; back() is the top
  std::vector<unsigned> levels;
  while (!f.empty()) {
    if (f.front().exponent == 1) return std::nullopt;  // (d)
    if (f.back().exponent == 2) {                      // (a)
      levels.push_back(f.back().level);
      f.pop_back();
      continue;
    }
    // Top exponent is 1: walk the run of 1s downward; levels must be
    // consecutive down to (and including) the first exponent-2 factor.
    const unsigned top = f.back().level;
    std::size_t j = f.size();
    bool closed = false;
    while (j-- > 0) {
      if (f[j].level != top - static_cast<unsigned>(f.size() - 1 - j))
        return std::nullopt;  // (c): gap under an exponent-1 factor
      if (f[j].exponent == 2) {
        closed = true;
        break;
      }
    }
    if (!closed) return std::nullopt;  // (d): the run reached the bottom
    levels.push_back(top);             // (b)
    f.resize(j);
  }
  std::reverse(levels.begin(), levels.end());  // ascending, to match closed
  return levels;
}

namespace {
std::optional<LogScalar> levels_to_value(const NormTable& nt,
                                         const std::optional<std::vector<unsigned>>& levels) {
  if (!levels) return std::nullopt;
  LogScalar v = LogScalar::one();
  for (unsigned l : *levels) v *= nt.q_norm_sq(l);
  return v;
}
}  // namespace

std::optional<LogScalar> a_integral_closed(const NormTable& nt, const AWord& w) {
  return levels_to_value(nt, a_integral_levels_closed(w));
}

std::optional<LogScalar> a_integral_reduce(const NormTable& nt, const AWord& w) {
  return levels_to_value(nt, a_integral_levels_reduce(w));
}

LogScalar b_norm_sq(const NormTable& nt, unsigned long long n) {
  LogScalar v = LogScalar::one();
  for (unsigned k = 0; k < 64 && (n >> k); ++k)
    if ((n >> k) & 1) v *= nt.q_norm_sq(k);
  return v;
}

}  // namespace cantorq
