#include "zeckpow/quad.hpp"

#include <stdexcept>

namespace zeckpow {

QuadInt& QuadInt::operator+=(const QuadInt& rhs) {
  p_ += rhs.p_;
  q_ += rhs.q_;
  return *this;
}

QuadInt& QuadInt::operator-=(const QuadInt& rhs) {
  p_ -= rhs.p_;
  q_ -= rhs.q_;
  return *this;
}

QuadInt& QuadInt::operator*=(const QuadInt& rhs) {
  // alpha^2 = alpha + 1
  BigInt qq = q_ * rhs.q_;
  BigInt p = p_ * rhs.p_ + qq;
  BigInt q = p_ * rhs.q_ + q_ * rhs.p_ + qq;
  p_ = std::move(p);
  q_ = std::move(q);
  return *this;
}

int QuadInt::sign() const {
  // p + q alpha = (u + v sqrt 5)/2 with u = 2p + q, v = q
  const BigInt u = 2 * p_ + q_;
  const int su = sgn(u);
  const int sv = sgn(q_);
  if (su == 0) return sv;
  if (sv == 0 || su == sv) return su;
  const BigInt lhs = u * u;
  const BigInt rhs = 5 * q_ * q_;
  if (lhs == rhs) return 0;
  return lhs > rhs ? su : sv;
}

BigReal QuadInt::embed(Precision prec) const {
  return BigReal::exact(p_, prec) + golden_ratio(prec) * BigReal::exact(q_, prec);
}

std::string QuadInt::to_string() const {
  return "(" + p_.get_str() + ", " + q_.get_str() + ")";
}

QuadInt pow(const QuadInt& base, unsigned long e) {
  QuadInt result(1);
  QuadInt b = base;
  while (e) {
    if (e & 1UL) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

QuadInt alpha_pow(unsigned long x) { return pow(QuadInt::alpha(), x); }

QuadInt alpha_pow_signed(long x) {
  if (x >= 0) return alpha_pow(static_cast<unsigned long>(x));
  return pow(QuadInt::alpha_inverse(), static_cast<unsigned long>(-x));
}

BigInt norm(const QuadInt& z) {
  const BigInt& p = z.rational_part();
  const BigInt& q = z.alpha_part();
  return p * p + p * q - q * q;
}

bool divisible_by_sqrt5(const QuadInt& z) {
  // z / sqrt5 = z sqrt5 / 5
  const QuadInt t = z * QuadInt::sqrt5();
  return mpz_divisible_ui_p(t.rational_part().get_mpz_t(), 5) &&
         mpz_divisible_ui_p(t.alpha_part().get_mpz_t(), 5);
}

QuadInt divide_by_sqrt5(const QuadInt& z) {
  const QuadInt t = z * QuadInt::sqrt5();
  BigInt p = t.rational_part(), q = t.alpha_part();
  if (!mpz_divisible_ui_p(p.get_mpz_t(), 5) || !mpz_divisible_ui_p(q.get_mpz_t(), 5)) {
    throw std::invalid_argument("divide_by_sqrt5: not divisible");
  }
  mpz_divexact_ui(p.get_mpz_t(), p.get_mpz_t(), 5);
  mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), 5);
  return {std::move(p), std::move(q)};
}

unsigned v_sqrt5(const QuadInt& z) {
  if (z.is_zero()) throw std::invalid_argument("v_sqrt5: zero has no valuation");
  // (sqrt 5) is the only prime above 5, so 5 | N(z) iff sqrt5 | z
  if (!mpz_divisible_ui_p(norm(z).get_mpz_t(), 5)) return 0;
  unsigned e = 0;
  QuadInt w = z;
  while (divisible_by_sqrt5(w)) {
    w = divide_by_sqrt5(w);
    ++e;
  }
  return e;
}

BigReal eval_log(const QuadInt& z, Precision p) {
  if (z.sign() <= 0) throw std::domain_error("eval_log: embedding must be positive");
  const auto coord_bits = std::max(mpz_sizeinbase(z.rational_part().get_mpz_t(), 2),
                                   mpz_sizeinbase(z.alpha_part().get_mpz_t(), 2));
  Precision w = p + 16 + static_cast<Precision>(coord_bits);
  for (;;) {
    const BigReal x = z.embed(w);
    if (x.is_positive()) {
      BigReal r = log(x);
      Mpfr width = r.width();
      if (mpfr_cmp_ui_2exp(width.get(), 1, 4 - p) <= 0) return r;
    }
    w *= 2;
  }
}

NonvanishingCertificate nonvanishing_certificate(unsigned ell, long a, bool parity_odd,
                                                 bool has_eta4) {
  if (a < 2) throw std::invalid_argument("nonvanishing_certificate: a must be >= 2");
  NonvanishingCertificate cert;
  cert.ell = ell;
  cert.a = a;
  cert.has_eta4 = has_eta4;
  cert.residue = (a - 1) % a;
  if (has_eta4 && !parity_odd) {
    cert.kind = NonvanishingCertificate::Kind::parity_exception;
    cert.reason =
        "n - m even: alpha^(n-m) + 1 may be divisible by sqrt 5; the even-parity "
        "classification (n <= 36) applies instead";
    return cert;
  }
  cert.kind = NonvanishingCertificate::Kind::valuation;
  cert.reason =
      "alpha is a unit" + std::string(has_eta4 ? ", v(alpha^(n-m) + 1) = 0 for odd n - m" : "") +
      "; cancelling (a-1) log sqrt5 needs (a-1) = a v(eta3), impossible since (a-1) mod a = " +
      std::to_string(cert.residue);
  return cert;
}

HeightBound height_bound_eta3(unsigned k, const BigRational& t_k) {
  if (k < 1) throw std::invalid_argument("height_bound_eta3: k must be >= 1");
  if (t_k < 1) throw std::invalid_argument("height_bound_eta3: T_k must be >= 1");
  BigRational v = t_k * k;
  return {v, 2 * v};
}

HeightBound height_bound_eta4(const BigRational& s) {
  if (sgn(s) < 0) throw std::invalid_argument("height_bound_eta4: S must be >= 0");
  return {s, 2 * s};
}

}  // namespace zeckpow
