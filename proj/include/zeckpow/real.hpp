#pragma once

// Rigorous real arithmetic: every BigReal is a closed interval [lo, hi]
// with MPFR endpoints rounded outward, so each operation returns an
// enclosure of the exact result.

#include <functional>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace zeckpow {

using BigInt = mpz_class;
using BigRational = mpq_class;
using Precision = mpfr_prec_t;

// num / den in canonical form (gmpxx does not reduce on construction).
inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline constexpr Precision kDefaultPrecision = 64;
inline constexpr Precision kPrecisionCap = Precision{1} << 16;

// Owning wrapper around mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(Precision prec = kDefaultPrecision);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  Precision precision() const { return mpfr_get_prec(value_); }

 private:
  mpfr_t value_;
};

class BigReal {
 public:
  explicit BigReal(Precision prec = kDefaultPrecision);

  static BigReal exact(const BigInt& value, Precision prec);
  static BigReal exact(const BigRational& value, Precision prec);
  static BigReal exact(long value, Precision prec);
  // Interval hull of two rationals.
  static BigReal hull(const BigRational& a, const BigRational& b, Precision prec);

  Precision precision() const { return lo_.precision(); }
  mpfr_srcptr lower() const { return lo_.get(); }
  mpfr_srcptr upper() const { return hi_.get(); }

  bool is_positive() const;  // lo > 0
  bool is_negative() const;  // hi < 0
  bool contains_zero() const;
  bool contains(const BigRational& q) const;
  bool overlaps(const BigReal& other) const;
  bool is_finite() const;

  double lower_double() const;
  double upper_double() const;
  double midpoint_double() const;
  // Upper bound on hi - lo.
  Mpfr width() const;
  double width_double() const;

  std::string midpoint_string(int digits = 20) const;
  std::string radius_string(int digits = 6) const;

  // Degenerate interval at the (rounded) midpoint; not an enclosure.
  BigReal midpoint() const;

  // Smallest integer >= hi, largest integer <= lo.
  BigInt ceil_upper() const;
  BigInt floor_lower() const;

  BigReal operator-() const;
  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);

  friend BigReal operator+(BigReal lhs, const BigReal& rhs) { return lhs += rhs; }
  friend BigReal operator-(BigReal lhs, const BigReal& rhs) { return lhs -= rhs; }
  friend BigReal operator*(BigReal lhs, const BigReal& rhs) { return lhs *= rhs; }
  friend BigReal operator/(BigReal lhs, const BigReal& rhs) { return lhs /= rhs; }

  BigReal scaled(const BigInt& factor) const;

  friend BigReal abs(const BigReal& x);
  friend BigReal log(const BigReal& x);
  friend BigReal exp(const BigReal& x);
  friend BigReal sqrt(const BigReal& x);
  friend BigReal pow(const BigReal& x, unsigned long e);
  // x^y for x > 0.
  friend BigReal pow(const BigReal& x, const BigReal& y);
  friend BigReal max(const BigReal& a, const BigReal& b);

 private:
  BigReal(Mpfr lo, Mpfr hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}
  Precision joint_precision(const BigReal& other) const;

  Mpfr lo_;
  Mpfr hi_;
};

// Certain comparisons: true only when the enclosures prove it.
bool certainly_less(const BigReal& a, const BigReal& b);
bool certainly_less_equal(const BigReal& a, const BigReal& b);

BigReal sqrt5(Precision prec);
BigReal golden_ratio(Precision prec);
BigReal log_golden_ratio(Precision prec);
BigReal log_sqrt5(Precision prec);

// Enclosure of log x with width <= 2^(4-p). Throws std::domain_error for x <= 0.
BigReal eval_log(const BigInt& x, Precision p);
BigReal eval_log(const BigRational& x, Precision p);

// An expression re-evaluable at any precision.
using RealExpr = std::function<BigReal(Precision)>;

enum class Decision { yes, no, undecided };

const char* to_string(Decision d);

// Decides a <= b by doubling precision from `start` until the enclosures
// separate. Returns undecided once `cap` has been tried.
Decision decide_leq(const RealExpr& a, const RealExpr& b, Precision cap = kPrecisionCap,
                    Precision start = kDefaultPrecision);
Decision decide_less(const RealExpr& a, const RealExpr& b, Precision cap = kPrecisionCap,
                     Precision start = kDefaultPrecision);

// Certified check of |log x| <= 2|x - 1| on |x - 1| <= 1/2, the step that
// turns |expr - 1| bounds into bounds on linear forms in logarithms.
struct LogLinearization {
  BigReal abs_log;
  BigReal bound;  // 2|x - 1|
  bool certified = false;
};

// Throws std::invalid_argument if |x - 1| <= 1/2 is not certified by the enclosure.
LogLinearization log_linearization_check(const BigReal& x);
// Escalates precision until the comparison separates (or the cap is reached).
LogLinearization log_linearization_check(const BigRational& x,
                                         Precision cap = kPrecisionCap);

}  // namespace zeckpow
