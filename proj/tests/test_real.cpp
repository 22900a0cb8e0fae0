#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "zeckpow/real.hpp"

using namespace zeckpow;

namespace {

bool inside(const BigReal& inner, const BigReal& outer) {
  return mpfr_cmp(outer.lower(), inner.lower()) <= 0 && mpfr_cmp(inner.upper(), outer.upper()) <= 0;
}

RealExpr constant(long v) {
  return [v](Precision p) { return BigReal::exact(v, p); };
}

}  // namespace

TEST_CASE("exact values are point intervals") {
  const BigReal one = BigReal::exact(1L, 64);
  CHECK(one.contains(1));
  CHECK(one.width_double() == 0);
  const BigReal third = BigReal::exact(BigRational(1, 3), 64);
  CHECK(third.contains(BigRational(1, 3)));
  CHECK(third.width_double() > 0);
  CHECK(third.width_double() < 1e-18);
}

TEST_CASE("arithmetic encloses exact results") {
  const Precision p = 64;
  const BigReal a = BigReal::exact(BigRational(1, 3), p);
  const BigReal b = BigReal::exact(BigRational(2, 7), p);
  CHECK((a + b).contains(BigRational(13, 21)));
  CHECK((a - b).contains(BigRational(1, 21)));
  CHECK((a * b).contains(BigRational(2, 21)));
  CHECK((a / b).contains(BigRational(7, 6)));
  CHECK(abs(b - a).contains(BigRational(1, 21)));
  CHECK_THROWS_AS(a / BigReal::exact(0L, p), std::domain_error);
  CHECK_THROWS_AS(log(BigReal::exact(-1L, p)), std::domain_error);
}

TEST_CASE("eval_log examples") {
  CHECK(eval_log(BigInt(1), 64).contains(0));
  const BigReal l5 = eval_log(BigInt(5), 128);
  CHECK(l5.width_double() <= std::ldexp(1.0, 4 - 128));
  const BigReal half = l5 * BigReal::exact(BigRational(1, 2), 128);
  CHECK(half.overlaps(log_sqrt5(128)));
  CHECK(std::fabs(half.midpoint_double() - 0.8047189562170502) < 1e-15);
  CHECK(std::fabs(log_golden_ratio(128).midpoint_double() - 0.48121182505960344) < 1e-15);
  CHECK_THROWS_AS(eval_log(BigInt(0), 64), std::domain_error);
  CHECK_THROWS_AS(eval_log(BigRational(-1, 2), 64), std::domain_error);
}

TEST_CASE("eval_log width contract") {
  for (Precision p : {64, 128, 256, 1024}) {
    for (const char* x : {"2", "3864", "14930496", "123456789012345678901234567890"}) {
      const BigReal l = eval_log(BigInt(x), p);
      CHECK(l.width_double() <= std::ldexp(1.0, 4 - static_cast<int>(p)));
    }
  }
}

TEST_CASE("log enclosures are sound and refine monotonically") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const long num = 1 + static_cast<long>(rng() % 10000000);
    const long den = 1 + static_cast<long>(rng() % 1000000);
    const BigRational x = make_rational(num, den);
    if (x > 10) continue;
    const BigReal lo = eval_log(x, 64);
    const BigReal hi = eval_log(x, 256);
    REQUIRE(inside(hi, lo));
    REQUIRE(eval_log(x, 128).width_double() <= lo.width_double());
  }
}

TEST_CASE("decide_leq") {
  CHECK(decide_leq(constant(0), constant(1)) == Decision::yes);
  const RealExpr log2 = [](Precision p) { return log(BigReal::exact(2L, p)); };
  const RealExpr log_alpha = [](Precision p) { return log_golden_ratio(p); };
  CHECK(decide_leq(log2, log_alpha) == Decision::no);
  CHECK(decide_leq(log_alpha, log2) == Decision::yes);
  const RealExpr sqrt2 = [](Precision p) { return sqrt(BigReal::exact(2L, p)); };
  CHECK(decide_leq(sqrt2, sqrt2, 512) == Decision::undecided);
  CHECK(decide_less(sqrt2, sqrt2, 512) == Decision::undecided);
  // separation needs more than 64 bits
  const RealExpr close = [](Precision p) {
    return log_golden_ratio(p) + BigReal::exact(BigRational(1, BigInt(1) << 100), p);
  };
  CHECK(decide_less(log_alpha, close) == Decision::yes);
  CHECK(decide_less(log_alpha, close, 64) == Decision::undecided);
}

TEST_CASE("log linearization") {
  const auto one = log_linearization_check(BigRational(1));
  CHECK(one.certified);
  CHECK(one.abs_log.contains(0));
  const auto up = log_linearization_check(BigRational(3, 2));
  CHECK(up.certified);
  CHECK(std::fabs(up.abs_log.midpoint_double() - 0.4054651081081644) < 1e-15);
  CHECK(up.bound.contains(1));
  const auto down = log_linearization_check(BigRational(1, 2));
  CHECK(down.certified);
  CHECK(std::fabs(down.abs_log.midpoint_double() - 0.6931471805599453) < 1e-15);
  CHECK_THROWS_AS(log_linearization_check(BigRational(2)), std::invalid_argument);
  CHECK_THROWS_AS(log_linearization_check(BigReal::exact(BigRational(1, 4), 64)), std::invalid_argument);
}

TEST_CASE("log linearization on a grid of 10^4 points") {
  for (long i = 0; i <= 10000; ++i) {
    const BigRational x = BigRational(1, 2) + make_rational(i, 10000);
    REQUIRE(log_linearization_check(x).certified);
  }
}

TEST_CASE("integer rounding of enclosures") {
  const BigReal x = BigReal::exact(BigRational(7, 2), 64);
  CHECK(x.ceil_upper() == 4);
  CHECK(x.floor_lower() == 3);
  const BigReal big = BigReal::exact(BigInt("123456789012345678901234567890"), 128);
  CHECK(big.ceil_upper() == BigInt("123456789012345678901234567890"));
}
