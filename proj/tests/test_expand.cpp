#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantorq/errors.hpp"
#include "cantorq/expand.hpp"
#include "cantorq/jacobi.hpp"
#include "cantorq/oracle.hpp"
#include "cantorq/tower.hpp"
#include "test_util.hpp"

using namespace cantorq;
using namespace cantorq::testutil;

TEST_CASE("Q_3 coefficient closed form") {
  // Q_3 = Q_1 Q_2 + a_0 Q_1 with a_0 = -(1-2g_2) g_1^2 / (1-2g_1)
  for (const GammaSpec& spec : random_specs(5)) {
    NormTable nt(spec);
    QExpansion e = gram_expand_Q(nt, 3);
    CHECK(e.s == 0);
    CHECK(e.k == 1);
    REQUIRE(e.coeffs.size() == 1);
    rational g1 = spec.gamma(1), g2 = spec.gamma(2);
    real want = -to_real((1 - 2 * g2) * g1 * g1 / (1 - 2 * g1));
    CHECK(rel_err(e.coeffs[0], want) < default_tolerance());
  }
}

TEST_CASE("Q_{3 2^s} coefficient is -||Q_{2^{s+1}}||^2/||Q_{2^s}||^2") {
  GammaSpec mixed({rational(1, 5), rational(1, 7), rational(2, 9)}, TailKind::kConstant,
                  {rational(1, 6)});
  for (const GammaSpec& spec : {sixth(), mixed}) {
    NormTable nt(spec);
    for (unsigned s = 0; s <= 6; ++s) {
      QExpansion e = gram_expand_Q(nt, 3ull << s);
      REQUIRE(e.coeffs.size() == 1);
      real want = -(nt.q_norm_sq(s + 1) / nt.q_norm_sq(s)).value();
      CHECK(rel_err(e.coeffs[0], want) < default_tolerance());
    }
  }
}

TEST_CASE("Q_{5 2^s} coefficients: Gram solve vs printed closed form vs quadrature") {
  // a_0 = ||Q_{2^{s+2}}||^2 / (||Q_{2^s}||^4 - ||Q_{2^{s+1}}||^2),
  // a_1 = -a_0 ||Q_{2^s}||^2 / ||Q_{2^{s+1}}||^2. The mixed powers look odd
  // but are genuine: the basis elements have different degrees.
  NormTable nt(sixth());
  for (unsigned s = 0; s <= 3; ++s) {
    QExpansion e = gram_expand_Q(nt, 5ull << s);
    REQUIRE(e.coeffs.size() == 2);
    real n0 = nt.q_norm_sq(s).value();
    real n1 = nt.q_norm_sq(s + 1).value();
    real n2 = nt.q_norm_sq(s + 2).value();
    real a0 = n2 / (n0 * n0 - n1);
    real a1 = -a0 * n0 / n1;
    CHECK(rel_err(e.coeffs[0], a0) < default_tolerance());
    CHECK(rel_err(e.coeffs[1], a1) < default_tolerance());
  }

  // quadrature route for s = 0: solve the 2x2 system from nu_8 Gram entries
  NuQuadrature quad(nt, 8, 4);
  real g00 = quad.word_integral(word_product(b_word(1), b_word(1)));
  real g01 = quad.word_integral(word_product(b_word(1), b_word(3)));
  real g11 = quad.word_integral(word_product(b_word(3), b_word(3)));
  real r0 = -quad.word_integral(word_product(b_word(1), b_word(5)));
  real r1 = -quad.word_integral(word_product(b_word(3), b_word(5)));
  real det = g00 * g11 - g01 * g01;
  real qa0 = (r0 * g11 - g01 * r1) / det;
  real qa1 = (g00 * r1 - r0 * g01) / det;
  QExpansion e5 = gram_expand_Q(nt, 5);
  CHECK(rel_err(e5.coeffs[0], qa0) < default_tolerance());
  CHECK(rel_err(e5.coeffs[1], qa1) < default_tolerance());
}

TEST_CASE("basis structure: only odd multiples of 2^s appear") {
  NormTable nt(sixth());
  for (unsigned long long n : {6ull, 12ull, 20ull, 24ull, 36ull}) {
    QExpansion e = gram_expand_Q(nt, n);
    auto degrees = e.basis_degrees();
    CHECK(degrees.back() == n);
    for (std::size_t j = 0; j < degrees.size(); ++j) {
      CHECK(degrees[j] == ((2 * j + 1) << e.s));
      CHECK(((degrees[j] >> e.s) & 1) == 1);
    }
  }
}

TEST_CASE("eval_Q: antisymmetry, dyadic consistency, non-Chebyshev witness") {
  NormTable nt(sixth());
  // odd n: antisymmetric about 1/2
  CHECK(abs(eval_Q(nt, 3, real(1) / 2)) < default_tolerance());
  real x("0.8125");
  CHECK(abs(eval_Q(nt, 5, x) + eval_Q(nt, 5, 1 - x)) <
        default_tolerance() * abs(eval_Q(nt, 5, x)));

  // n = 4: expansion path equals the tower path
  CHECK(rel_err(eval_Q(nt, 4, x), eval_Q_pow2(nt, 2, x)) < default_tolerance());

  // small gamma_1: Q_3(l_{1,1}) != Q_3(1), so Q_3 is not Chebyshev
  // (the gap is genuine but small, about 2% here)
  NormTable small(GammaSpec::constant(rational(1, 100)));
  real l11 = (1 - sqrt(1 - 4 * to_real(rational(1, 100)))) / 2;
  real at_l = eval_Q(small, 3, l11);
  real at_1 = eval_Q(small, 3, real(1));
  CHECK(abs(at_l - at_1) > abs(at_1) / 1000);
}

TEST_CASE("q_norm_general: dyadic, n=1, and the product of a_i") {
  NormTable nt(sixth());
  for (unsigned s = 0; s <= 5; ++s)
    CHECK(rel_err(q_norm_general(nt, 1ull << s), nt.q_norm_sq(s)) == 0);

  CHECK(rel_err(q_norm_general(nt, 1).value(), to_real(rational(1, 6))) <
        default_tolerance());  // (1-2/6)/4

  JacobiTable table = JacobiTable::compute(sixth(), 24);
  for (unsigned long long n : {3ull, 5ull, 6ull, 7ull, 12ull, 20ull, 24ull}) {
    LogScalar from_table = table.prefix_product_sq(n);
    CHECK(rel_err(q_norm_general(nt, n), from_table) < default_tolerance());
  }
}

TEST_CASE("Gram SPD through k = 32 and the size guard") {
  NormTable nt(sixth());
  QExpansion e = gram_expand_Q(nt, 65);  // k = 32, s = 0
  CHECK(e.coeffs.size() == 32);
  CHECK_THROWS_AS(gram_expand_Q(nt, 65, 16), domain_error);

  // orthogonality witness: integral of Q_65 B_m over nu_9 vanishes for a few m
  NuQuadrature quad(nt, 9, 7);
  QExpansion q65 = gram_expand_Q(nt, 65);
  for (unsigned long long m : {1ull, 3ull, 9ull, 33ull}) {
    // assemble integral of (sum c_j B_{(2j+1)}) B_m via word integrals
    real acc = quad.word_integral(word_product(b_word(65), b_word(m)));
    for (std::size_t j = 0; j < q65.coeffs.size(); ++j)
      acc += q65.coeffs[j] *
             quad.word_integral(word_product(b_word(2 * j + 1), b_word(m)));
    real scale = sqrt(b_norm_sq(nt, 65).value() * b_norm_sq(nt, m).value());
    CHECK(abs(acc) < scale * default_tolerance());
  }
}

TEST_CASE("orthogonality of Q_n under nu quadrature, n,m <= 24") {
  GammaSpec spec({rational(1, 5), rational(1, 7)}, TailKind::kConstant, {rational(1, 6)});
  NormTable nt(spec);
  const unsigned t = 10;  // exact for integrands of degree < 2^11
  NodeSet ns = chebyshev_nodes(nt, t);
  const std::size_t N = ns.nodes.size();
  const unsigned long long top = 24;

  // cache Q_n at every node once
  std::vector<std::vector<real>> vals(top + 1, std::vector<real>(N));
  std::vector<real> scale(top + 1);
  for (unsigned long long n = 1; n <= top; ++n) {
    QExpansion e = gram_expand_Q(nt, n);
    for (std::size_t i = 0; i < N; ++i) vals[n][i] = eval_Q(nt, e, ns.nodes[i]);
    scale[n] = sqrt(q_norm_general(nt, n).value());
  }

  real w = ns.weight();
  for (unsigned long long n = 1; n <= top; ++n) {
    real self(0);
    for (std::size_t i = 0; i < N; ++i) self += vals[n][i];
    CHECK(abs(self * w) < scale[n] * default_tolerance());
    for (unsigned long long m = n + 1; m <= top; ++m) {
      real cross(0), tmp(0);
      for (std::size_t i = 0; i < N; ++i) {
        tmp = vals[n][i];
        tmp *= vals[m][i];
        cross += tmp;
      }
      CHECK(abs(cross * w) < scale[n] * scale[m] * default_tolerance());
    }
  }
}
