#include "cantorq/expand.hpp"

#include <bit>

#include "cantorq/errors.hpp"
#include "cantorq/tower.hpp"

namespace cantorq {

std::vector<unsigned long long> QExpansion::basis_degrees() const {
  std::vector<unsigned long long> out;
  out.reserve(k + 1);
  for (unsigned long long j = 0; j <= k; ++j) out.push_back(((2 * j + 1) << s));
  return out;
}

namespace {

// Dense Cholesky solve of M c = rhs, M symmetric positive definite.
// M is overwritten by its lower factor.
std::vector<real> cholesky_solve(std::vector<std::vector<real>>& M, std::vector<real> rhs) {
  const std::size_t k = M.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      real sum = M[i][j];
      for (std::size_t l = 0; l < j; ++l) sum -= M[i][l] * M[j][l];
      M[i][j] = sum / M[j][j];
    }
    real diag = M[i][i];
    for (std::size_t l = 0; l < i; ++l) diag -= M[i][l] * M[i][l];
    if (!(diag > 0))
      throw precision_error(
          "Gram matrix lost positive definiteness at pivot " + std::to_string(i) +
          "; increase precision_bits");
    M[i][i] = sqrt(diag);
  }
  // forward then back substitution
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) rhs[i] -= M[i][j] * rhs[j];
    rhs[i] /= M[i][i];
  }
  for (std::size_t i = k; i-- > 0;) {
    for (std::size_t j = i + 1; j < k; ++j) rhs[i] -= M[j][i] * rhs[j];
    rhs[i] /= M[i][i];
  }
  return rhs;
}

struct GramSystem {
  unsigned s = 0;
  unsigned long long k = 0;
  std::vector<real> d;        // d_j = (1/2) log ||B_{(2j+1)2^s}||^2, j = 0..k
  std::vector<real> scaled_c; // solution of the scaled system, j = 0..k-1
  std::vector<real> rhs;      // scaled right-hand side (<= 0 entries)
};

// Builds and solves the scaled Gram system for n = 2^s(2k+1), k >= 1.
// Scaling each row/column by its diagonal square root keeps the system
// near unit diagonal; the raw entries span hundreds of orders of magnitude.
GramSystem solve_gram(const NormTable& nt, unsigned s, unsigned long long k) {
  GramSystem g;
  g.s = s;
  g.k = k;

  std::vector<AWord> basis;
  basis.reserve(k + 1);
  for (unsigned long long j = 0; j <= k; ++j) basis.push_back(b_word((2 * j + 1) << s));

  g.d.reserve(k + 1);
  for (unsigned long long j = 0; j <= k; ++j)
    g.d.push_back(b_norm_sq(nt, (2 * j + 1) << s).log_value() / 2);

  auto scaled_entry = [&](std::size_t i, std::size_t j) -> real {
    auto v = a_integral_closed(nt, word_product(basis[i], basis[j]));
    if (!v) return real(0);
    return exp(v->log_value() - g.d[i] - g.d[j]);
  };

  std::vector<std::vector<real>> M(k, std::vector<real>(k));
  for (std::size_t i = 0; i < k; ++i) {
    M[i][i] = real(1);
    for (std::size_t j = 0; j < i; ++j) M[i][j] = M[j][i] = scaled_entry(i, j);
  }
  g.rhs.reserve(k);
  for (std::size_t j = 0; j < k; ++j) g.rhs.push_back(-scaled_entry(j, k));

  g.scaled_c = cholesky_solve(M, g.rhs);
  return g;
}

}  // namespace

QExpansion gram_expand_Q(const NormTable& nt, unsigned long long n, std::size_t gram_limit) {
  if (n == 0) throw domain_error("Q_0 has no expansion");
  auto [s, k] = decompose_index(n);
  QExpansion e;
  e.n = n;
  e.s = s;
  e.k = k;
  if (k == 0) return e;  // Q_{2^s} = B_{2^s}
  if (k > gram_limit)
    throw domain_error("Gram system size " + std::to_string(k) + " exceeds the configured limit " +
                       std::to_string(gram_limit));
  GramSystem g = solve_gram(nt, s, k);
  e.coeffs.reserve(k);
  for (std::size_t j = 0; j < k; ++j)
    e.coeffs.push_back(g.scaled_c[j] * exp(g.d[k] - g.d[j]));
  return e;
}

real eval_Q(const NormTable& nt, const QExpansion& e, const real& x) {
  unsigned long long top_degree = (2 * e.k + 1) << e.s;
  unsigned top_level = 63 - static_cast<unsigned>(std::countl_zero(top_degree));

  std::vector<real> q(top_level + 1);
  real p = x - 1;
  for (unsigned m = 0;; ++m) {
    q[m] = p + nt.r_linear(m) / 2;
    if (m == top_level) break;
    p = p * (p + nt.r_linear(m));
  }

  auto eval_b = [&](unsigned long long deg) {
    real v(1);
    for (unsigned m = 0; m < 64 && (deg >> m); ++m)
      if ((deg >> m) & 1) v *= q[m];
    return v;
  };

  real sum = eval_b((2 * e.k + 1) << e.s);
  for (unsigned long long j = 0; j < e.k; ++j)
    sum += e.coeffs[j] * eval_b((2 * j + 1) << e.s);
  return sum;
}

real eval_Q(const NormTable& nt, unsigned long long n, const real& x, std::size_t gram_limit) {
  return eval_Q(nt, gram_expand_Q(nt, n, gram_limit), x);
}

LogScalar q_norm_general(const NormTable& nt, unsigned long long n, std::size_t gram_limit) {
  auto [s, k] = decompose_index(n);
  if (k == 0) return nt.q_norm_sq(s);
  if (k > gram_limit)
    throw domain_error("Gram system size " + std::to_string(k) + " exceeds the configured limit " +
                       std::to_string(gram_limit));
  GramSystem g = solve_gram(nt, s, k);
  // ||Q_n||^2 = ||B_n||^2 (1 - rhs^T M^-1 rhs) in the scaled variables.
  real x(0);
  for (std::size_t j = 0; j < k; ++j) x += g.rhs[j] * g.scaled_c[j];
  real one_minus = 1 - x;
  if (!(one_minus > 0))
    throw precision_error("||Q_n||^2 vanished at working precision; increase precision_bits");
  return LogScalar::from_log(2 * g.d[k] + log(one_minus));
}

}  // namespace cantorq
