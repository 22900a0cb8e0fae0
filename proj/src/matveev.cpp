#include "zeckpow/matveev.hpp"

#include <stdexcept>

namespace zeckpow {

RealConst RealConst::rational(const BigRational& q) {
  return {q.get_str(), q, [q](Precision p) { return BigReal::exact(q, p); }};
}

RealConst RealConst::log_rational(const BigRational& q) {
  return {"log(" + q.get_str() + ")", std::nullopt, [q](Precision p) { return eval_log(q, p); }};
}

RealConst RealConst::log_golden() {
  return {"log(alpha)", std::nullopt, [](Precision p) { return log_golden_ratio(p); }};
}

void validate(const MatveevParams& params) {
  if (params.t == 0) throw std::invalid_argument("matveev: t must be >= 1");
  if (params.degree == 0) throw std::invalid_argument("matveev: D must be >= 1");
  if (params.heights.size() != params.t) {
    throw std::invalid_argument("matveev: need exactly t height parameters");
  }
  if (params.coefficient_bound < 1) throw std::invalid_argument("matveev: B must be >= 1");
  const BigRational floor(kMatveevFloorNum, kMatveevFloorDen);
  for (const RealConst& a : params.heights) {
    const bool below = a.exact ? *a.exact < floor
                               : certainly_less(a.eval(kDefaultPrecision),
                                                BigReal::exact(floor, kDefaultPrecision));
    if (below) throw std::invalid_argument("matveev: A_i below 0.16 (" + a.label + ")");
  }
}

BigReal matveev_lower(const MatveevParams& params, Precision p) {
  validate(params);
  const BigReal one = BigReal::exact(1L, p);
  BigInt thirty_power;
  mpz_ui_pow_ui(thirty_power.get_mpz_t(), 30, params.t + 3);

  const BigReal t = BigReal::exact(static_cast<long>(params.t), p);
  const BigReal d = BigReal::exact(static_cast<long>(params.degree), p);
  BigReal product = BigReal::exact(BigRational(7, 5), p);
  product *= BigReal::exact(thirty_power, p);
  product *= pow(t, 4) * sqrt(t);
  product *= pow(d, 2);
  product *= one + log(d);
  product *= one + log(BigReal::exact(params.coefficient_bound, p));
  for (const RealConst& a : params.heights) product *= a.eval(p);
  return -product;
}

MatveevParams four_log_params(const BigInt& n, unsigned k, const BigRational& t_k,
                              const BigRational& s) {
  MatveevParams params;
  params.t = 4;
  params.degree = 2;
  params.coefficient_bound = BigRational(n * n);
  params.heights = {RealConst::log_rational(5), RealConst::log_golden(),
                    RealConst::rational(2 * k * t_k), RealConst::rational(2 * s)};
  return params;
}

BigInt step_constant_value() { return BigInt(21) * BigInt("100000000000000"); }

BigReal step_constant_product(unsigned t, Precision p) {
  const BigReal one = BigReal::exact(1L, p);
  const BigReal tt = BigReal::exact(static_cast<long>(t), p);
  BigInt thirty_power;
  mpz_ui_pow_ui(thirty_power.get_mpz_t(), 30, t + 3);
  BigReal product = BigReal::exact(BigRational(7, 5), p);
  product *= BigReal::exact(thirty_power, p);
  product *= pow(tt, 4) * sqrt(tt);
  product *= BigReal::exact(4L, p);  // D^2
  product *= one + log(BigReal::exact(2L, p));
  product *= BigReal::exact(3L, p);  // 1 + log n^2 <= 3 log n
  product *= log(BigReal::exact(5L, p));
  product *= BigReal::exact(4L, p);  // the 2 from A_3 = 2kT and from A_4 = 2S
  return product;
}

StepConstantCertificate check_step_constant(const BigRational& candidate, unsigned t,
                                            Precision p) {
  StepConstantCertificate cert{candidate, step_constant_product(t, p), false};
  cert.certified = certainly_less_equal(cert.product, BigReal::exact(candidate, p));
  return cert;
}

StepConstantCertificate step_constant(Precision p) {
  StepConstantCertificate cert = check_step_constant(BigRational(step_constant_value()), 4, p);
  if (!cert.certified) throw std::logic_error("step constant does not dominate its product");
  return cert;
}

BigReal simplified_step_lower(const BigInt& n, unsigned k, const BigRational& t_k,
                              const BigRational& s, Precision p) {
  BigReal v = BigReal::exact(step_constant_value(), p);
  v *= eval_log(n, p);
  v *= log_golden_ratio(p);
  v *= BigReal::exact(BigRational(t_k * s * k), p);
  return -v;
}

}  // namespace zeckpow
