#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "zeckpow/bounds.hpp"

using namespace zeckpow;

namespace {

const BigRational kC = default_step_constant();

BigRational power(const BigRational& q, unsigned e) {
  BigRational out = 1;
  for (unsigned i = 0; i < e; ++i) out *= q;
  return out;
}

BigInt factorial(unsigned n) {
  BigInt out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

TEST_CASE("single steps") {
  const BoundExpr one;
  CHECK(step_a(1, one) == BoundExpr{kC, 1});
  CHECK(step_a(3, BoundExpr{5, 2}, 7) == BoundExpr{105, 3});
  CHECK(step_b(2, BoundExpr{3, 1}, BoundExpr{5, 4}, 7) == BoundExpr{210, 6});
  CHECK(step_b(1, BoundExpr{kC, 1}, BoundExpr{kC, 1}) == BoundExpr{kC * kC * kC, 3});
  CHECK_THROWS_AS(step_a(0, one), std::invalid_argument);
  CHECK_THROWS_AS(step_b(0, one, one), std::invalid_argument);
}

TEST_CASE("left-side walks") {
  const WalkOutcome w1 = walk_case1(1);
  CHECK(w1.final == BoundExpr{kC, 1});
  REQUIRE(w1.trace.size() == 1);
  CHECK(w1.trace[0].bounds == "n1");
  const WalkOutcome w3 = walk_case1(3);
  CHECK(w3.final == BoundExpr{6 * power(kC, 3), 3});
  REQUIRE(w3.trace.size() == 3);
  CHECK(w3.trace[0].step == "A1");
  CHECK(w3.trace[0].bounds == "n1-n2");
  CHECK(w3.trace[1].value == BoundExpr{2 * power(kC, 2), 2});
  CHECK_THROWS_AS(walk_case1(0), std::invalid_argument);
}

TEST_CASE("crossing walks by hand") {
  // k = 2, l0 = 1: S = C, T2 = C * C, T3 = 2 C S T2
  const WalkOutcome a = walk_case2(2, 1);
  CHECK(a.final == BoundExpr{2 * power(kC, 4), 4});
  REQUIRE(a.trace.size() == 3);
  CHECK(a.trace[0].bounds == "n-m");
  CHECK(a.trace[1].step == "B1");
  CHECK(a.trace[2].step == "B2");
  // k = 2, l0 = 2: R2 = C, S = 2 C^2, T = 2 C S R2
  const WalkOutcome b = walk_case2(2, 2);
  CHECK(b.final == BoundExpr{4 * power(kC, 4), 4});
  CHECK(b.trace.size() == 3);
  CHECK_THROWS_AS(walk_case2(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(walk_case2(2, 0), std::invalid_argument);
}

TEST_CASE("crossing walks match the closed form") {
  for (unsigned k = 1; k <= 10; ++k) {
    for (unsigned l0 = 1; l0 <= k; ++l0) {
      const BoundExpr walk = walk_case2(k, l0).final;
      CHECK(walk == case2_closed_form(k, l0));
      CHECK(walk.x == case2_exponent(k, l0));
      // an arbitrary constant exercises the same algebra
      CHECK(walk_case2(k, l0, 3).final == case2_closed_form(k, l0, 3));
    }
  }
}

TEST_CASE("maximum exponent over all walks") {
  CHECK(max_over_paths(1).max_exponent() == 2);
  CHECK(max_over_paths(2).max_exponent() == 4);
  for (unsigned k = 1; k <= 15; k += 2) {
    CHECK(4 * max_over_paths(k).max_exponent() == k * k + 6 * k + 1);
  }
  for (unsigned k = 2; k <= 14; k += 2) {
    CHECK(4 * max_over_paths(k).max_exponent() <= k * k + 6 * k + 1);
  }
  const PathMaximum p3 = max_over_paths(3);
  CHECK(p3.candidates.size() == 4);
  REQUIRE(p3.dominant.has_value());
  CHECK(p3.bound() == p3.envelope());
}

TEST_CASE("factorial estimate behind the simplified bound") {
  // k! (l0!)^(k - l0 + 1) <= k^k * k^((k^2 + 2k + 1)/4), compared after raising to the 4th power
  for (unsigned k = 1; k <= 12; ++k) {
    BigInt rhs = 1;
    for (unsigned i = 0; i < 4 * k + k * k + 2 * k + 1; ++i) rhs *= k;
    for (unsigned l0 = 1; l0 <= k; ++l0) {
      BigInt lhs = factorial(k);
      for (unsigned i = 0; i < k - l0 + 1; ++i) lhs *= factorial(l0);
      CHECK(lhs * lhs * lhs * lhs <= rhs);
    }
  }
}

TEST_CASE("simplified bound exponents") {
  const SimplifiedBound s1 = simplified_n1_bound(1);
  CHECK(s1.c_exponent == 2);
  CHECK(s1.log_exponent == 2);
  CHECK(s1.k_exponent_printed == 2);
  CHECK(s1.k_exponent_recomputed == 2);
  const SimplifiedBound s3 = simplified_n1_bound(3);
  CHECK(s3.c_exponent == 7);
  CHECK(s3.k_exponent_printed == 5);
  CHECK(s3.k_exponent_recomputed == 7);
  CHECK(s3.finish_c_exponent() == 30);
  CHECK(s3.finish_log_exponent() == 28);
  CHECK(simplified_n1_bound(2).c_exponent == BigRational(17, 4));
  CHECK_THROWS_AS(simplified_n1_bound(0), std::invalid_argument);
}

TEST_CASE("the simplified bound dominates every walk") {
  for (unsigned k = 1; k <= 8; ++k) {
    const PathMaximum paths = max_over_paths(k);
    const SimplifiedBound s = simplified_n1_bound(k);
    for (long log_n : {1L, 10L, 100L, 10000L}) {
      const BigReal ln = BigReal::exact(log_n, 256);
      // k = 1 is an equality, which intervals cannot certify as <=
      CHECK_FALSE(certainly_less(s.eval(ln, true), paths.eval(ln)));
      if (k >= 2) CHECK(certainly_less_equal(paths.eval(ln), s.eval(ln, true)));
    }
  }
}

TEST_CASE("closed-form implication examples") {
  const ClosedFormBranches b = closed_form_branches(1, 1, 1, 128);
  CHECK(std::fabs(b.log_max.midpoint_double() - std::exp(4.0)) < 1e-12);
  CHECK_FALSE(b.log_log_branch.has_value());
  CHECK(std::fabs(b.log_power_branch.midpoint_double() - 2 * std::log(2.0)) < 1e-15);

  // largest n with n <= 1e6 (log n)^3, by bisection on doubles
  double lo = std::exp(3.0), hi = 1e12;
  while (hi - lo > 1) {
    const double mid = std::floor((lo + hi) / 2);
    (mid <= 1e6 * std::pow(std::log(mid), 3) ? lo : hi) = mid;
  }
  const ClosedFormBranches big = closed_form_branches(1000000, 3, BigRational(1, 2), 128);
  REQUIRE(big.log_log_branch.has_value());
  CHECK(std::log(lo) <= big.log_max.lower_double());
  CHECK_THROWS_AS(closed_form_branches(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_branches(1, 1, 0), std::invalid_argument);
}

TEST_CASE("final bound for one Fibonacci term") {
  const FinalBound fb = finish(1, FinishMethod::iteration);
  CHECK(fb.certified);
  CHECK(fb.tight);
  CHECK(fb.method_used == "iteration");
  REQUIRE(fb.n_bound.has_value());
  CHECK(*fb.n_bound >= 36);
  // pinned regression value
  CHECK(std::fabs(fb.log10_n_bound.midpoint_double() - 173.161237) < 5e-7);
  CHECK(fb.log10_n_bound.midpoint_double() > 170);
  CHECK(fb.log10_n_bound.midpoint_double() < 176);

  // beyond the fixed point the right-hand side stays below n
  BigInt n = *fb.n_bound + 1;
  for (int i = 0; i < 20; ++i) {
    CHECK(certainly_less(finish_rhs(fb.paths, n, 1024), BigReal::exact(n, 1024)));
    n = n * 7 + 3;
  }
  // and just below it, it does not
  CHECK_FALSE(certainly_less(finish_rhs(fb.paths, *fb.n_bound - 1, 1024),
                             BigReal::exact(BigInt(*fb.n_bound - 1), 1024)));
}

TEST_CASE("final bounds grow with k and sit below the closed form") {
  double prev = 0;
  for (unsigned k = 1; k <= 5; ++k) {
    const FinalBound it = finish(k, FinishMethod::iteration);
    const FinalBound cf = finish(k, FinishMethod::closed_form);
    CHECK(it.certified);
    CHECK(it.tight);
    CHECK(it.log10_n_bound.midpoint_double() > prev);
    CHECK(certainly_less_equal(it.log10_n_bound, cf.log10_n_bound));
    prev = it.log10_n_bound.midpoint_double();
  }
  CHECK_THROWS_AS(finish(0, FinishMethod::iteration), std::invalid_argument);
  CHECK_THROWS_AS(finish(1, FinishMethod::closed_form, 1), std::invalid_argument);
}

TEST_CASE("asymptotic shape") {
  CHECK(asymptotic_shape_log10(1, 0).contains(0));
  CHECK(std::fabs(asymptotic_shape_log10(10, 0).midpoint_double() - 300) < 1e-9);
}
