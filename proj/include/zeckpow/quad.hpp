#pragma once

// Exact arithmetic in Z[alpha], alpha = (1 + sqrt 5)/2, the ring of integers
// of Q(sqrt 5). Elements are stored in the basis {1, alpha}.

#include <string>

#include "zeckpow/real.hpp"

namespace zeckpow {

class QuadInt {
 public:
  QuadInt() = default;
  QuadInt(BigInt p, BigInt q) : p_(std::move(p)), q_(std::move(q)) {}
  explicit QuadInt(long n) : p_(n), q_(0) {}

  static QuadInt alpha() { return {0, 1}; }
  // alpha^-1 = alpha - 1
  static QuadInt alpha_inverse() { return {-1, 1}; }
  // sqrt 5 = 2 alpha - 1
  static QuadInt sqrt5() { return {-1, 2}; }

  const BigInt& rational_part() const { return p_; }
  const BigInt& alpha_part() const { return q_; }
  bool is_zero() const { return sgn(p_) == 0 && sgn(q_) == 0; }

  QuadInt conjugate() const { return {p_ + q_, -q_}; }

  QuadInt& operator+=(const QuadInt& rhs);
  QuadInt& operator-=(const QuadInt& rhs);
  QuadInt& operator*=(const QuadInt& rhs);
  friend QuadInt operator+(QuadInt a, const QuadInt& b) { return a += b; }
  friend QuadInt operator-(QuadInt a, const QuadInt& b) { return a -= b; }
  friend QuadInt operator*(QuadInt a, const QuadInt& b) { return a *= b; }
  QuadInt operator-() const { return {-p_, -q_}; }
  friend bool operator==(const QuadInt& a, const QuadInt& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }

  // Exact sign of the real embedding alpha -> (1 + sqrt 5)/2.
  int sign() const;
  // Enclosure of the real embedding.
  BigReal embed(Precision prec) const;

  std::string to_string() const;

 private:
  BigInt p_{0};
  BigInt q_{0};
};

QuadInt pow(const QuadInt& base, unsigned long e);
// alpha^x for x >= 0.
QuadInt alpha_pow(unsigned long x);
// alpha^x for any integer x (alpha is a unit).
QuadInt alpha_pow_signed(long x);

// z * conjugate(z) as a rational integer.
BigInt norm(const QuadInt& z);

// Exact division by sqrt 5 when possible.
bool divisible_by_sqrt5(const QuadInt& z);
QuadInt divide_by_sqrt5(const QuadInt& z);
// Largest e with sqrt5^e | z. Throws std::invalid_argument for z = 0.
unsigned v_sqrt5(const QuadInt& z);

// log of the real embedding; width <= 2^(4-p). Throws std::domain_error if z <= 0.
BigReal eval_log(const QuadInt& z, Precision p);

// Why a linear form with a (a-1) log sqrt5 term cannot vanish.
struct NonvanishingCertificate {
  enum class Kind { valuation, parity_exception };
  Kind kind = Kind::valuation;
  unsigned ell = 1;
  long a = 2;
  bool has_eta4 = true;
  // (a - 1) mod a; nonzero means sqrt 5 cannot cancel.
  long residue = 1;
  std::string reason;
};

// parity_odd: whether n - m is odd. Forms without the log(alpha^(n-m) + 1)
// term are certified regardless of parity.
NonvanishingCertificate nonvanishing_certificate(unsigned ell, long a, bool parity_odd,
                                                 bool has_eta4 = true);

// A certified upper bound for an absolute logarithmic height.
struct HeightBound {
  BigRational value;       // >= h(eta)
  BigRational matveev_a;   // the A_i parameter derived from it (D = 2)
};

// h(1 + alpha^(n_2 - n_1) + ... + alpha^(n_k - n_1)) <= k T_k with A_3 = 2 k T_k.
HeightBound height_bound_eta3(unsigned k, const BigRational& t_k);
// h(alpha^(n-m) + 1) <= S with A_4 = 2 S.
HeightBound height_bound_eta4(const BigRational& s);

}  // namespace zeckpow
