#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "zeckpow/linforms.hpp"
#include "zeckpow/search.hpp"

using namespace zeckpow;

namespace {

Instance known() { return Instance(3864, zeckendorf(3864), 2, 36, 12); }

const LinearFormValue& find(const std::vector<LinearFormValue>& forms, const std::string& tag) {
  for (const auto& f : forms) {
    if (f.tag.to_string() == tag) return f;
  }
  throw std::out_of_range(tag);
}

// |value| <= factor * alpha^-X by a direct double computation of the form
// from the big integers themselves (valid while nothing cancels below 1e-12).
double direct_a_side(const BigInt& y, unsigned n1, double eta3) {
  const double alpha = (1 + std::sqrt(5.0)) / 2;
  return std::log(y.get_d()) + std::log(std::sqrt(5.0)) - n1 * std::log(alpha) - std::log(eta3);
}

}  // namespace

TEST_CASE("form tags round trip") {
  for (const char* text : {"A1", "A5", "B1", "B2", "A*3", "B*4"}) {
    CHECK(FormTag::parse(text).to_string() == text);
  }
  CHECK(FormTag::parse("A*3").eliminated());
  CHECK_FALSE(FormTag::parse("B2").eliminated());
  CHECK_THROWS_AS(FormTag::parse("C1"), std::invalid_argument);
  CHECK_THROWS_AS(FormTag::parse("A0"), std::invalid_argument);
}

TEST_CASE("instances validate both equations") {
  CHECK_NOTHROW(known());
  CHECK(known().reduced());
  CHECK_FALSE(known().parity_odd());
  CHECK_THROWS_AS(Instance(3865, zeckendorf(3864)), std::invalid_argument);
  CHECK_THROWS_AS(Instance(3864, zeckendorf(3864), 2, 36, 11), std::invalid_argument);
  CHECK_THROWS_AS(Instance(3864, zeckendorf(3864), 1, 36, 12), std::invalid_argument);
  // n = m solutions are accepted but are not reduced
  const Instance six(2, zeckendorf(2), 4, 6, 6);
  CHECK_FALSE(six.reduced());
}

TEST_CASE("basic forms of the known solution") {
  const auto forms = basic_forms(known());
  REQUIRE(forms.size() == 7);
  const auto& a1 = find(forms, "A1");
  CHECK(a1.exponent == 2);
  CHECK_FALSE(a1.applicable);
  const auto& b1 = find(forms, "B1");
  CHECK(b1.exponent == 24);
  CHECK(b1.applicable);
  CHECK(b1.verdict == Decision::yes);
  const auto& b2 = find(forms, "B2");
  CHECK(b2.exponent == 36);
  CHECK(b2.verdict == Decision::yes);
  const auto& a5 = find(forms, "A5");
  CHECK(a5.exponent == 18);
  CHECK(a5.verdict == Decision::yes);
  for (const auto& f : forms) {
    if (f.applicable) CHECK(f.verdict == Decision::yes);
  }
}

TEST_CASE("a single Fibonacci number has one A form") {
  const Instance inst = Instance::from_y(55);
  const auto forms = basic_forms(inst);
  REQUIRE(forms.size() == 1);
  CHECK(forms[0].tag.to_string() == "A1");
  CHECK(forms[0].exponent == 10);
  CHECK(forms[0].coefficients.log_eta3 == 0);
  CHECK(forms[0].verdict == Decision::yes);
  // log 55 + log sqrt5 - 10 log alpha, evaluated directly
  CHECK(std::fabs(forms[0].value.midpoint_double() - direct_a_side(55, 10, 1.0)) < 1e-12);
}

TEST_CASE("A forms match a direct evaluation") {
  const Instance inst = Instance::from_y(3864);
  const double alpha = (1 + std::sqrt(5.0)) / 2;
  const auto idx = inst.rep().indices();
  const auto forms = basic_forms(inst);
  for (unsigned ell = 1; ell <= inst.k(); ++ell) {
    double eta = 0;
    for (unsigned i = 0; i < ell; ++i) eta += std::pow(alpha, static_cast<double>(idx[i]) - idx[0]);
    CHECK(std::fabs(forms[ell - 1].value.midpoint_double() - direct_a_side(3864, idx[0], eta)) < 1e-12);
  }
}

TEST_CASE("eliminated forms of the known solution") {
  const auto forms = eliminated_forms(known());
  REQUIRE(forms.size() == 10);
  const auto& a1 = find(forms, "A*1");
  CHECK(a1.exponent == 2);
  CHECK_FALSE(a1.applicable);
  CHECK(a1.bound_factor == 36);
  CHECK(a1.coefficients.log_y == 0);
  CHECK(a1.coefficients.log_sqrt5 == 1);
  CHECK(a1.coefficients.log_alpha == 0);
  const auto& b5 = find(forms, "B*5");
  CHECK(b5.exponent == 18);
  CHECK(b5.verdict == Decision::yes);
  for (const auto& f : forms) {
    CHECK(f.coefficients.log_y == 0);
    if (f.applicable) CHECK(f.verdict == Decision::yes);
  }
}

TEST_CASE("elimination identity a * A_l - B_1 = A*_l") {
  const Instance inst = known();
  const auto basic = basic_forms(inst, 256);
  const auto elim = eliminated_forms(inst, 256);
  const BigReal a = BigReal::exact(inst.a(), 256);
  const auto& b1 = find(basic, "B1");
  const auto& b2 = find(basic, "B2");
  for (unsigned ell = 1; ell <= inst.k(); ++ell) {
    const auto& al = find(basic, "A" + std::to_string(ell));
    CHECK((a * al.value - b1.value).overlaps(find(elim, "A*" + std::to_string(ell)).value));
    CHECK((a * al.value - b2.value).overlaps(find(elim, "B*" + std::to_string(ell)).value));
  }
}

TEST_CASE("coefficients are bounded by n^2") {
  for (const Solution& s : enumerate(120)) {
    if (s.degenerate()) continue;
    const Instance inst = instance_of(s);
    if (!inst.reduced()) continue;
    const BigInt n2 = BigInt(s.n) * s.n;
    for (const auto& f : eliminated_forms(inst, 64)) {
      const auto& c = f.coefficients;
      for (const BigInt* v : {&c.log_sqrt5, &c.log_alpha, &c.log_eta3, &c.log_eta4}) {
        CHECK(abs(*v) <= n2);
      }
      CHECK(BigInt(s.a) <= n2);
    }
  }
}

TEST_CASE("nonvanishing evidence") {
  const Instance inst = known();
  const auto ev = verify_nonzero(inst, FormTag::parse("A*1"));
  // n - m = 24 is even: the parity branch applies, backed by a numeric witness
  CHECK(ev.certificate.kind == NonvanishingCertificate::Kind::valuation);
  const auto evb = verify_nonzero(inst, FormTag::parse("B*1"));
  CHECK(evb.certificate.kind == NonvanishingCertificate::Kind::parity_exception);
  REQUIRE(evb.witness.has_value());
  CHECK_FALSE(evb.witness->contains_zero());

  // F_16 + F_7 = 10^3 with n - m = 9 odd
  const Instance odd(10, zeckendorf(10), 3, 16, 7);
  REQUIRE(odd.parity_odd());
  for (unsigned ell = 1; ell <= odd.k(); ++ell) {
    const auto e = verify_nonzero(odd, {FormFamily::B_star, ell});
    CHECK(e.certificate.kind == NonvanishingCertificate::Kind::valuation);
  }
  CHECK_THROWS_AS(verify_nonzero(inst, FormTag::parse("A1")), std::invalid_argument);
}

TEST_CASE("A-side forms hold for 2 <= y <= 2000") {
  for (long y = 2; y <= 2000; ++y) {
    for (const auto& f : basic_forms(Instance::from_y(y))) {
      if (f.applicable) REQUIRE(f.verdict == Decision::yes);
    }
  }
}

TEST_CASE("alternating power sums stay below 3") {
  std::mt19937_64 rng(5);
  const BigReal three = BigReal::exact(3L, 128);
  for (int i = 0; i < 1000; ++i) {
    std::vector<unsigned> idx;
    unsigned v = static_cast<unsigned>(rng() % 5);
    const std::size_t k = 1 + rng() % 15;
    for (std::size_t j = 0; j < k; ++j) {
      idx.push_back(v);
      v += 1 + static_cast<unsigned>(rng() % 6);
    }
    std::reverse(idx.begin(), idx.end());
    REQUIRE(certainly_less(alpha_inverse_power_sum(idx, 128), three));
    REQUIRE(certainly_less(abs(beta_power_sum(idx, 128)), three));
  }
}

TEST_CASE("leading index and exponent stay below n on enumerated solutions") {
  for (const Solution& s : enumerate(200)) {
    if (s.degenerate()) continue;
    const Instance inst = instance_of(s);
    if (!inst.reduced()) continue;
    CHECK(inst.rep().leading() < s.n);
    CHECK(s.a < s.n);
  }
}
