#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantorq/errors.hpp"
#include "cantorq/format.hpp"
#include <atomic>
#include <thread>

#include "cantorq/norms.hpp"
#include "test_util.hpp"

using namespace cantorq;
using namespace cantorq::testutil;

TEST_CASE("rational parsing: exact decimals and fractions") {
  CHECK(parse_rational("1/6") == rational(1, 6));
  CHECK(parse_rational("0.25") == rational(1, 4));
  CHECK(parse_rational("0.05") == rational(1, 20));
  CHECK(parse_rational("2.5e-1") == rational(1, 4));
  CHECK(parse_rational("0.1249") == rational(1249, 10000));
  CHECK_THROWS_AS(parse_rational("abc"), config_error);
  CHECK_THROWS_AS(parse_rational("1/0x"), config_error);
}

TEST_CASE("GammaSpec validation") {
  CHECK_NOTHROW(GammaSpec::constant(rational(1, 4)));  // limit case admitted
  CHECK_THROWS_AS(GammaSpec::constant(rational(1, 3)), config_error);
  CHECK_THROWS_AS(GammaSpec::constant(rational(0)), config_error);
  CHECK_THROWS_AS(GammaSpec::constant(rational(-1, 6)), config_error);
  CHECK_THROWS_AS(GammaSpec::constant(rational(1, 6), 32), config_error);
  CHECK_THROWS_AS(GammaSpec::constant(rational(1, 6), 10000), config_error);
  CHECK_THROWS_AS(GammaSpec({}, TailKind::kConstant, {}), config_error);

  GammaSpec mixed({rational(1, 5), rational(1, 7)}, TailKind::kPeriodic,
                  {rational(1, 6), rational(1, 8)});
  CHECK(mixed.gamma(1) == rational(1, 5));
  CHECK(mixed.gamma(2) == rational(1, 7));
  CHECK(mixed.gamma(3) == rational(1, 6));
  CHECK(mixed.gamma(4) == rational(1, 8));
  CHECK(mixed.gamma(5) == rational(1, 6));
  CHECK_FALSE(mixed.jac3_regime());  // 1/5 > 1/6

  CHECK(sixth().jac3_regime());
  CHECK_FALSE(quarter().jac3_regime());
}

TEST_CASE("inline grammar and config round trip") {
  GammaSpec a = GammaSpec::parse_inline("const:1/6");
  CHECK(a.tail_kind() == TailKind::kConstant);
  CHECK(a.gamma(10) == rational(1, 6));

  GammaSpec b = GammaSpec::parse_inline("list:1/5,0.2;tail=periodic:1/6,1/8");
  CHECK(b.prefix().size() == 2);
  CHECK(b.gamma(2) == rational(1, 5));
  CHECK(b.gamma(4) == rational(1, 8));

  CHECK_THROWS_AS(GammaSpec::parse_inline("nope:1/6"), config_error);
  CHECK_THROWS_AS(GammaSpec::parse_inline("list:1/5"), config_error);

  GammaSpec c = GammaSpec::from_config_text(b.to_config_text());
  CHECK(c.to_string() == b.to_string());
  CHECK(c.hash() == b.hash());
  CHECK(c.hash() != a.hash());
}

TEST_CASE("r_value: base case, quarter unrolling, direct substitution") {
  set_precision_bits(256);
  NormTable quarter_nt(quarter());
  CHECK(quarter_nt.r(0).value() == 1);
  // gamma = 1/4 for all k: r_s = 4^-(2^s - 1); s = 3 gives 4^-7
  CHECK(rel_err(quarter_nt.r(3).value(), to_real(rational(1, 16384))) < default_tolerance());

  NormTable mixed(GammaSpec({rational(1, 5)}, TailKind::kConstant, {rational(1, 6)}));
  CHECK(rel_err(mixed.r(2).value(), to_real(rational(1, 150))) < default_tolerance());
}

TEST_CASE("capacity: quarter, sixth, split prefix") {
  NormTable q(quarter());
  CHECK(rel_err(q.capacity().value(), to_real(rational(1, 4))) < default_tolerance());

  NormTable s6(sixth());
  CHECK(rel_err(s6.capacity().value(), to_real(rational(1, 6))) < default_tolerance());

  // gamma_1 = 1/5, then 1/4: Cap = exp(log(1/5)/2 + log(1/4)/2) = 1/sqrt(20)
  NormTable split(GammaSpec({rational(1, 5)}, TailKind::kConstant, {rational(1, 4)}));
  CHECK(rel_err(split.capacity().value(), 1 / sqrt(real(20))) < default_tolerance());

  // periodic tail: gamma alternating 1/6, 1/8
  NormTable per(GammaSpec({}, TailKind::kPeriodic, {rational(1, 6), rational(1, 8)}));
  real expected = exp((2 * log(to_real(rational(1, 6))) + log(to_real(rational(1, 8)))) / 3);
  CHECK(rel_err(per.capacity().value(), expected) < default_tolerance());
}

TEST_CASE("capacity tail truncation error bound") {
  // truncating at depth d changes log Cap by less than 2^-d |log min gamma|
  GammaSpec spec({rational(1, 5), rational(1, 7)}, TailKind::kConstant, {rational(1, 6)});
  NormTable nt(spec);
  real full = nt.capacity().log_value();
  for (std::size_t d : {8, 16, 32}) {
    real trunc = nt.tail_log_sum_truncated(1, d);
    real bound = ldexp(abs(log(to_real(rational(1, 7)))), -static_cast<long>(d));
    CHECK(abs(full - trunc) < bound);
    real trunc2 = nt.tail_log_sum_truncated(1, 2 * d);
    CHECK(abs(full - trunc2) <= abs(full - trunc));
  }
}

TEST_CASE("capacity monotone in each gamma_k") {
  GammaSpec base({rational(1, 5), rational(1, 7), rational(1, 6)}, TailKind::kConstant,
                 {rational(1, 6)});
  NormTable nt(base);
  for (std::size_t k = 1; k <= 3; ++k) {
    auto prefix = base.prefix();
    prefix[k - 1] += rational(1, 100);
    NormTable bumped(GammaSpec(prefix, TailKind::kConstant, base.tail_values()));
    CHECK(bumped.capacity() > nt.capacity());
  }
}

TEST_CASE("q_norm_sq closed form") {
  NormTable q(quarter());
  // s=0: (1 - 1/2)/4 = 1/8 (a_1 = sqrt(1-2 gamma_1)/2 squared)
  CHECK(rel_err(q.q_norm_sq(0).value(), to_real(rational(1, 8))) < default_tolerance());
  // s=1: (1/2)(1/16)/4 = 1/128
  CHECK(rel_err(q.q_norm_sq(1).value(), to_real(rational(1, 128))) < default_tolerance());

  NormTable s6(sixth());
  // s=1: (2/3) (1/36) / 4 = 1/216
  CHECK(rel_err(s6.q_norm_sq(1).value(), to_real(rational(1, 216))) < default_tolerance());
}

TEST_CASE("norm ratio identity and its bound in the small-gamma regime") {
  // q_norm_sq(s+1)/q_norm_sq(s)^2 = (1-2g_{s+2}) 4 g_{s+1}^2 / (1-2g_{s+1})^2
  for (const GammaSpec& spec : {sixth(), eighth(),
                                GammaSpec({rational(1, 8), rational(1, 10)},
                                          TailKind::kConstant, {rational(1, 7)})}) {
    NormTable nt(spec);
    for (unsigned s = 0; s <= 6; ++s) {
      LogScalar lhs = nt.q_norm_sq(s + 1) / (nt.q_norm_sq(s) * nt.q_norm_sq(s));
      rational g1 = spec.gamma(s + 1), g2 = spec.gamma(s + 2);
      rational want = (1 - 2 * g2) * 4 * g1 * g1 / ((1 - 2 * g1) * (1 - 2 * g1));
      CHECK(rel_err(lhs.value(), to_real(want)) < default_tolerance());
      CHECK(lhs.value() < to_real(rational(1, 4)));  // gamma <= 1/6 everywhere
    }
  }
}

TEST_CASE("LogScalar arithmetic is exact log addition") {
  LogScalar a = LogScalar::from_value(real(3));
  LogScalar b = LogScalar::from_value(real(7));
  CHECK((a * b).log_value() == a.log_value() + b.log_value());
  CHECK((a / b).log_value() == a.log_value() - b.log_value());
  CHECK(a.pow(5).log_value() == a.log_value() * 5);
  CHECK(rel_err((a * b).value(), real(21)) < default_tolerance());
  CHECK(rel_err(a.pow(3).sqrt().value(), pow(real(3), real(1.5))) < default_tolerance());
  CHECK_THROWS_AS(LogScalar::from_value(real(0)), domain_error);
  CHECK_THROWS_AS(LogScalar::from_value(real(-2)), domain_error);

  double lost = 0;
  LogScalar d = log_sub(b, a, &lost);
  CHECK(rel_err(d.value(), real(4)) < default_tolerance());
  CHECK(lost < 1.5);
  CHECK_THROWS_AS(log_sub(a, b), precision_error);
}

TEST_CASE("NormTable is safe to share across concurrent readers") {
  NormTable nt(GammaSpec({rational(1, 5)}, TailKind::kConstant, {rational(1, 6)}));
  real want_r10 = nt.r(10).value();
  real want_n12 = nt.q_norm_sq(12).value();
  std::vector<std::thread> workers;
  std::atomic<int> mismatches{0};
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&] {
      for (unsigned s = 0; s <= 14; ++s) {
        NormTable fresh(GammaSpec({rational(1, 5)}, TailKind::kConstant, {rational(1, 6)}));
        if (nt.r(10).value() != want_r10) ++mismatches;
        if (nt.q_norm_sq(12).value() != want_n12) ++mismatches;
        if (fresh.q_norm_sq(s).value() != nt.q_norm_sq(s).value()) ++mismatches;
      }
    });
  for (auto& t : workers) t.join();
  CHECK(mismatches == 0);
}

TEST_CASE("decimal emission round trip is idempotent") {
  set_precision_bits(256);
  std::mt19937_64 rng(42);
  for (int i = 0; i < 50; ++i) {
    real x = real(rng()) / real(rng() | 1);
    if (i % 3 == 0) x = 1 / x;
    if (i % 2 == 0) x = -x;
    std::string s1 = decimal_string(x);
    real back(s1);
    std::string s2 = decimal_string(back);
    CHECK(s1 == s2);
  }
  CHECK(decimal_string(to_real(rational(1, 4))) == "0.25");
  CHECK(decimal_string(real(0)) == "0");
}
