#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantorq/errors.hpp"
#include "cantorq/expand.hpp"
#include "cantorq/oracle.hpp"
#include "test_util.hpp"

using namespace cantorq;
using namespace cantorq::testutil;

TEST_CASE("two-point measure: a_1 is the standard deviation") {
  NormTable nt(quarter());
  DiscreteMeasure m = DiscreteMeasure::nu(nt, 1);
  REQUIRE(m.nodes.size() == 2);
  Recurrence rec = stieltjes(m, 1);
  // nodes (1 +- sqrt(1/2))/2, uniform: a_1 = sqrt(1/8) = ||Q_1||
  CHECK(rel_err(rec.a[0], 1 / sqrt(real(8))) < default_tolerance());
  CHECK(rel_err(rec.b[0], real(1) / 2) < default_tolerance());
}

TEST_CASE("quarter spec at depth 12: a_2..a_64 are 1/4") {
  NormTable nt(quarter());
  Recurrence rec = stieltjes(DiscreteMeasure::nu(nt, 12), 64);
  CHECK(rel_err(rec.a[0], 1 / sqrt(real(8))) < default_tolerance());
  for (std::size_t j = 1; j < 64; ++j)
    CHECK(rel_err(rec.a[j], to_real(rational(1, 4))) < default_tolerance());
}

TEST_CASE("nu_12 quadrature confirms ||Q_2||^2 = 1/216 at the sixth spec") {
  NormTable nt(sixth());
  NuQuadrature quad(nt, 12, 2);
  real v = quad.word_integral(AWord::parse("2:2"));
  CHECK(rel_err(v, to_real(rational(1, 216))) < default_tolerance());
}

TEST_CASE("b_j = 1/2 by symmetry; oracle self-consistency across levels") {
  GammaSpec spec({rational(1, 5), rational(1, 7)}, TailKind::kConstant, {rational(1, 6)});
  NormTable nt(spec);
  Recurrence fine = stieltjes(DiscreteMeasure::nu(nt, 10), 32);
  Recurrence coarse = stieltjes(DiscreteMeasure::nu(nt, 8), 32);
  for (std::size_t j = 0; j < 32; ++j) {
    CHECK(abs(fine.b[j] - real(1) / 2) < default_tolerance());
    CHECK(abs(fine.a[j] - coarse.a[j]) < default_tolerance());
  }
}

TEST_CASE("compare_jacobi: recursion matches the oracle") {
  JacobiComparison cmp = compare_jacobi(sixth(), 10, 48, real("1e-10"));
  CHECK(cmp.pass);
  CHECK(cmp.max_deviation < default_tolerance());  // far tighter in practice
  CHECK(cmp.oracle_cauchy < default_tolerance());
  CHECK(cmp.max_b_offset < default_tolerance());

  GammaSpec mixed({rational(1, 5), rational(1, 7)}, TailKind::kConstant, {rational(1, 6)});
  JacobiComparison cmp2 = compare_jacobi(mixed, 10, 32, real("1e-10"));
  CHECK(cmp2.pass);
}

TEST_CASE("oracle norm products match q_norm_general") {
  GammaSpec spec({rational(1, 5), rational(1, 7)}, TailKind::kConstant, {rational(1, 6)});
  NormTable nt(spec);
  Recurrence rec = stieltjes(DiscreteMeasure::nu(nt, 9), 24);
  real prod(1);
  for (unsigned long long n = 1; n <= 24; ++n) {
    prod *= rec.a[n - 1];
    CHECK(rel_err(prod * prod, q_norm_general(nt, n).value()) < default_tolerance());
  }
}

TEST_CASE("preconditions and breakdown") {
  NormTable nt(sixth());
  DiscreteMeasure m = DiscreteMeasure::nu(nt, 3);
  CHECK_THROWS_AS(stieltjes(m, 8), domain_error);   // M == node count
  CHECK_THROWS_AS(stieltjes(m, 20), domain_error);  // M beyond node count
  CHECK_NOTHROW(stieltjes(m, 7));

  CHECK_THROWS_AS(compare_jacobi(sixth(), 8, 128, real(1)), domain_error);  // M > 2^(s-2)
  CHECK_THROWS_AS(compare_jacobi(sixth(), 2, 1, real(1)), domain_error);    // s < 3

  DiscreteMeasure bad;
  bad.nodes = {real(1), real(2)};
  bad.weights = {real(1), real(-1)};
  CHECK_THROWS_AS(stieltjes(bad, 1), domain_error);
}

TEST_CASE("NuQuadrature word integrals agree with the closed form at depth") {
  GammaSpec spec({rational(1, 6), rational(1, 9)}, TailKind::kConstant, {rational(1, 7)});
  NormTable nt(spec);
  NuQuadrature quad(nt, 10, 6);
  AWord w = AWord::parse("16:2,8:1,4:2");
  auto closed = a_integral_closed(nt, w);
  REQUIRE(closed.has_value());
  CHECK(rel_err(quad.word_integral(w), closed->value()) < default_tolerance());
  CHECK_THROWS_AS(quad.word_integral(AWord::parse("4096:1")), domain_error);
}
