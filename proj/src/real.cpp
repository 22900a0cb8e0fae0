#include "zeckpow/real.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace zeckpow {

Mpfr::Mpfr(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(value_); }

namespace {

// NaN can only arise from inf - inf or 0 * inf; widen to the whole line.
void sanitize(Mpfr& lo, Mpfr& hi) {
  if (mpfr_nan_p(lo.get())) mpfr_set_inf(lo.get(), -1);
  if (mpfr_nan_p(hi.get())) mpfr_set_inf(hi.get(), 1);
}

Precision working_bits_for(const BigInt& x) {
  const auto bits = static_cast<unsigned long>(mpz_sizeinbase(x.get_mpz_t(), 2));
  return static_cast<Precision>(std::bit_width(bits));
}

bool width_at_most_pow2(const BigReal& r, long exponent) {
  Mpfr w = r.width();
  return mpfr_cmp_ui_2exp(w.get(), 1, exponent) <= 0;
}

}  // namespace

BigReal::BigReal(Precision prec) : lo_(prec), hi_(prec) {}

BigReal BigReal::exact(const BigInt& value, Precision prec) {
  Mpfr lo(prec), hi(prec);
  mpfr_set_z(lo.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), value.get_mpz_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

BigReal BigReal::exact(const BigRational& value, Precision prec) {
  Mpfr lo(prec), hi(prec);
  mpfr_set_q(lo.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), value.get_mpq_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

BigReal BigReal::exact(long value, Precision prec) {
  Mpfr lo(prec), hi(prec);
  mpfr_set_si(lo.get(), value, MPFR_RNDD);
  mpfr_set_si(hi.get(), value, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

BigReal BigReal::hull(const BigRational& a, const BigRational& b, Precision prec) {
  const BigRational& small = a < b ? a : b;
  const BigRational& large = a < b ? b : a;
  Mpfr lo(prec), hi(prec);
  mpfr_set_q(lo.get(), small.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), large.get_mpq_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

bool BigReal::is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool BigReal::is_negative() const { return mpfr_sgn(hi_.get()) < 0; }
bool BigReal::contains_zero() const { return !is_positive() && !is_negative(); }

bool BigReal::contains(const BigRational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool BigReal::overlaps(const BigReal& other) const {
  return mpfr_lessequal_p(lo_.get(), other.hi_.get()) &&
         mpfr_lessequal_p(other.lo_.get(), hi_.get());
}

bool BigReal::is_finite() const {
  return mpfr_number_p(lo_.get()) && mpfr_number_p(hi_.get());
}

double BigReal::lower_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
double BigReal::upper_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }

double BigReal::midpoint_double() const {
  Mpfr mid(precision() + 1);
  mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  return mpfr_get_d(mid.get(), MPFR_RNDN);
}

Mpfr BigReal::width() const {
  Mpfr w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

double BigReal::width_double() const { return mpfr_get_d(width().get(), MPFR_RNDU); }

std::string BigReal::midpoint_string(int digits) const {
  Mpfr mid(precision() + 1);
  mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits, mid.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string BigReal::radius_string(int digits) const {
  Mpfr rad = width();
  mpfr_div_2ui(rad.get(), rad.get(), 1, MPFR_RNDU);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RUe", digits, rad.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

BigReal BigReal::midpoint() const {
  Mpfr mid(precision());
  mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  Mpfr copy = mid;
  return {std::move(mid), std::move(copy)};
}

BigInt BigReal::ceil_upper() const {
  if (!mpfr_number_p(hi_.get())) throw std::overflow_error("ceil_upper: non-finite enclosure");
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), hi_.get(), MPFR_RNDU);
  return out;
}

BigInt BigReal::floor_lower() const {
  if (!mpfr_number_p(lo_.get())) throw std::overflow_error("floor_lower: non-finite enclosure");
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), lo_.get(), MPFR_RNDD);
  return out;
}

Precision BigReal::joint_precision(const BigReal& other) const {
  return std::max(precision(), other.precision());
}

BigReal BigReal::operator-() const {
  Mpfr lo(precision()), hi(precision());
  mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  const Precision p = joint_precision(rhs);
  Mpfr lo(p), hi(p);
  mpfr_add(lo.get(), lo_.get(), rhs.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi_.get(), rhs.hi_.get(), MPFR_RNDU);
  sanitize(lo, hi);
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) { return *this += -rhs; }

BigReal& BigReal::operator*=(const BigReal& rhs) {
  const Precision p = joint_precision(rhs);
  Mpfr lo(p), hi(p), t(p);
  mpfr_set_inf(lo.get(), 1);
  mpfr_set_inf(hi.get(), -1);
  for (mpfr_srcptr a : {lo_.get(), hi_.get()}) {
    for (mpfr_srcptr b : {rhs.lo_.get(), rhs.hi_.get()}) {
      mpfr_mul(t.get(), a, b, MPFR_RNDD);
      if (mpfr_nan_p(t.get())) mpfr_set_zero(t.get(), 1);
      mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), a, b, MPFR_RNDU);
      if (mpfr_nan_p(t.get())) mpfr_set_zero(t.get(), 1);
      mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  if (rhs.contains_zero()) throw std::domain_error("BigReal division by an enclosure of zero");
  const Precision p = joint_precision(rhs);
  Mpfr lo(p), hi(p), t(p);
  mpfr_set_inf(lo.get(), 1);
  mpfr_set_inf(hi.get(), -1);
  for (mpfr_srcptr a : {lo_.get(), hi_.get()}) {
    for (mpfr_srcptr b : {rhs.lo_.get(), rhs.hi_.get()}) {
      mpfr_div(t.get(), a, b, MPFR_RNDD);
      mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), a, b, MPFR_RNDU);
      mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    }
  }
  sanitize(lo, hi);
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

BigReal BigReal::scaled(const BigInt& factor) const {
  return *this * BigReal::exact(factor, precision());
}

BigReal abs(const BigReal& x) {
  if (!x.is_negative() && !x.contains_zero()) return x;
  if (x.is_negative()) return -x;
  const Precision p = x.precision();
  Mpfr lo(p), hi(p), neg_lo(p);
  mpfr_neg(neg_lo.get(), x.lo_.get(), MPFR_RNDU);
  mpfr_max(hi.get(), neg_lo.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

BigReal log(const BigReal& x) {
  if (!x.is_positive()) throw std::domain_error("log of an enclosure that is not positive");
  const Precision p = x.precision();
  Mpfr lo(p), hi(p);
  mpfr_log(lo.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_log(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

BigReal exp(const BigReal& x) {
  const Precision p = x.precision();
  Mpfr lo(p), hi(p);
  mpfr_exp(lo.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_exp(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

BigReal sqrt(const BigReal& x) {
  if (mpfr_sgn(x.lo_.get()) < 0) throw std::domain_error("sqrt of a possibly negative enclosure");
  const Precision p = x.precision();
  Mpfr lo(p), hi(p);
  mpfr_sqrt(lo.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

BigReal pow(const BigReal& x, unsigned long e) {
  const Precision p = x.precision();
  if (e == 0) return BigReal::exact(1L, p);
  Mpfr lo(p), hi(p);
  const bool even = e % 2 == 0;
  if (mpfr_sgn(x.lo_.get()) >= 0 || !even) {
    // monotone increasing on the enclosure
    mpfr_pow_ui(lo.get(), x.lo_.get(), e, MPFR_RNDD);
    mpfr_pow_ui(hi.get(), x.hi_.get(), e, MPFR_RNDU);
  } else if (mpfr_sgn(x.hi_.get()) <= 0) {
    mpfr_pow_ui(lo.get(), x.hi_.get(), e, MPFR_RNDD);
    mpfr_pow_ui(hi.get(), x.lo_.get(), e, MPFR_RNDU);
  } else {
    Mpfr m(p);
    mpfr_neg(m.get(), x.lo_.get(), MPFR_RNDU);
    mpfr_max(m.get(), m.get(), x.hi_.get(), MPFR_RNDU);
    mpfr_pow_ui(hi.get(), m.get(), e, MPFR_RNDU);
  }
  return {std::move(lo), std::move(hi)};
}

BigReal pow(const BigReal& x, const BigReal& y) { return exp(y * log(x)); }

BigReal max(const BigReal& a, const BigReal& b) {
  const Precision p = a.joint_precision(b);
  Mpfr lo(p), hi(p);
  mpfr_max(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

bool certainly_less(const BigReal& a, const BigReal& b) {
  return mpfr_less_p(a.upper(), b.lower());
}

bool certainly_less_equal(const BigReal& a, const BigReal& b) {
  return mpfr_lessequal_p(a.upper(), b.lower());
}

BigReal sqrt5(Precision prec) { return sqrt(BigReal::exact(5L, prec)); }

BigReal golden_ratio(Precision prec) {
  BigReal r = sqrt5(prec) + BigReal::exact(1L, prec);
  return r / BigReal::exact(2L, prec);
}

BigReal log_golden_ratio(Precision prec) { return log(golden_ratio(prec)); }

BigReal log_sqrt5(Precision prec) {
  return log(BigReal::exact(5L, prec)) / BigReal::exact(2L, prec);
}

BigReal eval_log(const BigInt& x, Precision p) {
  if (sgn(x) <= 0) throw std::domain_error("eval_log: argument must be positive");
  Precision w = p + 16 + working_bits_for(x);
  for (;;) {
    BigReal r = log(BigReal::exact(x, w));
    if (width_at_most_pow2(r, 4 - p)) return r;
    w *= 2;
  }
}

BigReal eval_log(const BigRational& x, Precision p) {
  if (sgn(x) <= 0) throw std::domain_error("eval_log: argument must be positive");
  Precision w = p + 16 + working_bits_for(x.get_num()) + working_bits_for(x.get_den());
  for (;;) {
    BigReal r = log(BigReal::exact(x, w));
    if (width_at_most_pow2(r, 4 - p)) return r;
    w *= 2;
  }
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::yes: return "true";
    case Decision::no: return "false";
    case Decision::undecided: return "undecided";
  }
  return "undecided";
}

namespace {

template <typename Separates>
Decision escalate(const RealExpr& a, const RealExpr& b, Precision cap, Precision start,
                  Separates&& separates) {
  Precision p = std::min(start, cap);
  for (;;) {
    const BigReal x = a(p);
    const BigReal y = b(p);
    if (const auto d = separates(x, y); d != Decision::undecided) return d;
    if (p >= cap) return Decision::undecided;
    p = std::min(p * 2, cap);
  }
}

}  // namespace

Decision decide_leq(const RealExpr& a, const RealExpr& b, Precision cap, Precision start) {
  return escalate(a, b, cap, start, [](const BigReal& x, const BigReal& y) {
    if (certainly_less_equal(x, y)) return Decision::yes;
    if (certainly_less(y, x)) return Decision::no;
    return Decision::undecided;
  });
}

Decision decide_less(const RealExpr& a, const RealExpr& b, Precision cap, Precision start) {
  return escalate(a, b, cap, start, [](const BigReal& x, const BigReal& y) {
    if (certainly_less(x, y)) return Decision::yes;
    if (certainly_less_equal(y, x)) return Decision::no;
    return Decision::undecided;
  });
}

LogLinearization log_linearization_check(const BigReal& x) {
  const Precision p = x.precision();
  const BigReal distance = abs(x - BigReal::exact(1L, p));
  if (!certainly_less_equal(distance, BigReal::exact(BigRational(1, 2), p))) {
    throw std::invalid_argument("log_linearization_check: |x - 1| <= 1/2 not certified");
  }
  LogLinearization out{abs(log(x)), distance * BigReal::exact(2L, p), false};
  out.certified = certainly_less_equal(out.abs_log, out.bound);
  return out;
}

LogLinearization log_linearization_check(const BigRational& x, Precision cap) {
  for (Precision p = kDefaultPrecision;; p = std::min(p * 2, cap)) {
    LogLinearization r = log_linearization_check(BigReal::exact(x, p));
    if (r.certified || p >= cap) return r;
  }
}

}  // namespace zeckpow
