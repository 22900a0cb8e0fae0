#include "zeckpow/linforms.hpp"

#include <algorithm>
#include <stdexcept>

namespace zeckpow {

Instance::Instance(BigInt y, ZeckendorfRep rep) : y_(std::move(y)), rep_(std::move(rep)) {
  if (rep_.decode() != y_) {
    throw std::invalid_argument("Instance: y differs from the sum of its Fibonacci terms");
  }
}

Instance::Instance(BigInt y, ZeckendorfRep rep, long a, unsigned n, unsigned m)
    : Instance(std::move(y), std::move(rep)) {
  if (a < 2) throw std::invalid_argument("Instance: a must be >= 2");
  if (n < m) throw std::invalid_argument("Instance: need n >= m");
  BigInt power;
  mpz_pow_ui(power.get_mpz_t(), y_.get_mpz_t(), static_cast<unsigned long>(a));
  if (power != fib(n) + fib(m)) throw std::invalid_argument("Instance: y^a != F_n + F_m");
  a_ = a;
  n_ = n;
  m_ = m;
}

std::string FormTag::to_string() const {
  switch (family) {
    case FormFamily::A: return "A" + std::to_string(index);
    case FormFamily::B: return "B" + std::to_string(index);
    case FormFamily::A_star: return "A*" + std::to_string(index);
    case FormFamily::B_star: return "B*" + std::to_string(index);
  }
  return "?";
}

FormTag FormTag::parse(const std::string& text) {
  if (text.size() < 2) throw std::invalid_argument("FormTag: bad tag '" + text + "'");
  FormTag tag;
  std::size_t pos = 1;
  const bool star = text[1] == '*';
  if (star) pos = 2;
  if (text[0] == 'A') {
    tag.family = star ? FormFamily::A_star : FormFamily::A;
  } else if (text[0] == 'B') {
    tag.family = star ? FormFamily::B_star : FormFamily::B;
  } else {
    throw std::invalid_argument("FormTag: bad tag '" + text + "'");
  }
  try {
    tag.index = static_cast<unsigned>(std::stoul(text.substr(pos)));
  } catch (const std::exception&) {
    throw std::invalid_argument("FormTag: bad tag '" + text + "'");
  }
  if (tag.index == 0) throw std::invalid_argument("FormTag: index must be >= 1");
  return tag;
}

QuadInt eta3(const ZeckendorfRep& rep, unsigned ell) {
  const auto idx = rep.indices();
  QuadInt sum(1);
  for (unsigned i = 1; i < ell; ++i) {
    sum += alpha_pow_signed(static_cast<long>(idx[i]) - static_cast<long>(idx[0]));
  }
  return sum;
}

BigReal log_eta3(const ZeckendorfRep& rep, unsigned ell, Precision p) {
  const auto idx = rep.indices();
  const BigReal inverse = BigReal::exact(1L, p) / golden_ratio(p);
  BigReal sum = BigReal::exact(1L, p);
  for (unsigned i = 1; i < ell; ++i) sum += pow(inverse, idx[0] - idx[i]);
  return log(sum);
}

BigReal log_eta4(unsigned n_minus_m, Precision p) {
  return log(pow(golden_ratio(p), n_minus_m) + BigReal::exact(1L, p));
}

BigReal evaluate(const Instance& inst, const LogCoefficients& c, Precision p) {
  BigReal total = BigReal::exact(0L, p);
  if (sgn(c.log_y)) total += eval_log(inst.y(), p).scaled(c.log_y);
  if (sgn(c.log_sqrt5)) total += log_sqrt5(p).scaled(c.log_sqrt5);
  if (sgn(c.log_alpha)) total += log_golden_ratio(p).scaled(c.log_alpha);
  if (sgn(c.log_eta3)) total += log_eta3(inst.rep(), c.eta3_terms, p).scaled(c.log_eta3);
  if (sgn(c.log_eta4)) total += log_eta4(inst.n() - inst.m(), p).scaled(c.log_eta4);
  return total;
}

namespace {

void require_power_side(const Instance& inst) {
  if (!inst.has_power_side()) {
    throw std::invalid_argument("linear form needs the y^a = F_n + F_m side");
  }
}

void require_index(const Instance& inst, FormTag tag) {
  const std::size_t limit = tag.family == FormFamily::B ? 2 : inst.k();
  if (tag.index < 1 || tag.index > limit) {
    throw std::invalid_argument("form " + tag.to_string() + " out of range for k = " +
                                std::to_string(inst.k()));
  }
}

LogCoefficients coefficients_a(const Instance& inst, unsigned ell) {
  LogCoefficients c;
  c.log_y = 1;
  c.log_sqrt5 = 1;
  c.log_alpha = -static_cast<long>(inst.rep().leading());
  c.eta3_terms = ell;
  c.log_eta3 = ell > 1 ? -1 : 0;
  return c;
}

LogCoefficients coefficients_b(const Instance& inst, unsigned which) {
  LogCoefficients c;
  c.log_y = inst.a();
  c.log_sqrt5 = 1;
  if (which == 1) {
    c.log_alpha = -static_cast<long>(inst.n());
  } else {
    c.log_alpha = -static_cast<long>(inst.m());
    c.log_eta4 = -1;
  }
  return c;
}

// a * lhs - rhs
LogCoefficients eliminate(const LogCoefficients& lhs, long a, const LogCoefficients& rhs) {
  LogCoefficients c;
  c.log_y = a * lhs.log_y - rhs.log_y;
  c.log_sqrt5 = a * lhs.log_sqrt5 - rhs.log_sqrt5;
  c.log_alpha = a * lhs.log_alpha - rhs.log_alpha;
  c.eta3_terms = lhs.eta3_terms;
  c.log_eta3 = a * lhs.log_eta3 - rhs.log_eta3;
  c.log_eta4 = a * lhs.log_eta4 - rhs.log_eta4;
  return c;
}

long exponent_a(const Instance& inst, unsigned ell) {
  const auto idx = inst.rep().indices();
  if (ell < inst.k()) return static_cast<long>(idx[0]) - static_cast<long>(idx[ell]);
  return idx[0];
}

}  // namespace

LinearFormValue form(const Instance& inst, FormTag tag, Precision p, Precision cap) {
  require_index(inst, tag);
  LinearFormValue out;
  out.tag = tag;
  const long n_minus_m = static_cast<long>(inst.n()) - static_cast<long>(inst.m());
  switch (tag.family) {
    case FormFamily::A:
      out.coefficients = coefficients_a(inst, tag.index);
      out.exponent = exponent_a(inst, tag.index);
      out.bound_factor = 12;
      break;
    case FormFamily::B:
      require_power_side(inst);
      out.coefficients = coefficients_b(inst, tag.index);
      out.exponent = tag.index == 1 ? n_minus_m : static_cast<long>(inst.n());
      out.bound_factor = 12;
      break;
    case FormFamily::A_star:
      require_power_side(inst);
      out.coefficients =
          eliminate(coefficients_a(inst, tag.index), inst.a(), coefficients_b(inst, 1));
      out.exponent = std::min(exponent_a(inst, tag.index), n_minus_m);
      out.bound_factor = 18 * inst.a();
      break;
    case FormFamily::B_star:
      require_power_side(inst);
      out.coefficients =
          eliminate(coefficients_a(inst, tag.index), inst.a(), coefficients_b(inst, 2));
      out.exponent = exponent_a(inst, tag.index);
      out.bound_factor = 18 * inst.a();
      break;
  }

  const LogCoefficients coeffs = out.coefficients;
  const BigRational factor = out.bound_factor;
  const long x = out.exponent;
  auto bound_at = [factor, x](Precision q) {
    const BigReal scale = BigReal::exact(factor, q);
    if (x >= 0) return scale / pow(golden_ratio(q), static_cast<unsigned long>(x));
    return scale * pow(golden_ratio(q), static_cast<unsigned long>(-x));
  };
  auto abs_value_at = [&inst, coeffs](Precision q) { return abs(evaluate(inst, coeffs, q)); };

  out.value = evaluate(inst, coeffs, p);
  out.claimed_bound = bound_at(p);
  out.applicable = out.exponent >= kApplicabilityThreshold;
  if (out.applicable) out.verdict = decide_leq(abs_value_at, bound_at, std::max(cap, p), p);
  return out;
}

std::vector<LinearFormValue> basic_forms(const Instance& inst, Precision p, Precision cap) {
  std::vector<LinearFormValue> out;
  for (unsigned ell = 1; ell <= inst.k(); ++ell) out.push_back(form(inst, {FormFamily::A, ell}, p, cap));
  if (inst.has_power_side()) {
    out.push_back(form(inst, {FormFamily::B, 1}, p, cap));
    out.push_back(form(inst, {FormFamily::B, 2}, p, cap));
  }
  return out;
}

std::vector<LinearFormValue> eliminated_forms(const Instance& inst, Precision p, Precision cap) {
  require_power_side(inst);
  std::vector<LinearFormValue> out;
  for (unsigned ell = 1; ell <= inst.k(); ++ell) {
    out.push_back(form(inst, {FormFamily::A_star, ell}, p, cap));
  }
  for (unsigned ell = 1; ell <= inst.k(); ++ell) {
    out.push_back(form(inst, {FormFamily::B_star, ell}, p, cap));
  }
  return out;
}

NonzeroEvidence verify_nonzero(const Instance& inst, FormTag tag, Precision p, Precision cap) {
  if (!tag.eliminated()) {
    throw std::invalid_argument("verify_nonzero: only eliminated forms are covered");
  }
  require_power_side(inst);
  require_index(inst, tag);
  NonzeroEvidence out{nonvanishing_certificate(tag.index, inst.a(), inst.parity_odd(),
                                               tag.family == FormFamily::B_star),
                      std::nullopt};
  const LogCoefficients coeffs = form(inst, tag, p, p).coefficients;
  for (Precision q = p;; q = std::min(q * 2, cap)) {
    BigReal v = evaluate(inst, coeffs, q);
    if (!v.contains_zero()) {
      out.witness = std::move(v);
      break;
    }
    if (q >= cap) break;
  }
  return out;
}

BigReal alpha_inverse_power_sum(std::span<const unsigned> indices, Precision p) {
  const BigReal inverse = BigReal::exact(1L, p) / golden_ratio(p);
  BigReal sum = BigReal::exact(0L, p);
  for (unsigned i : indices) sum += pow(inverse, i);
  return sum;
}

BigReal beta_power_sum(std::span<const unsigned> indices, Precision p) {
  const BigReal beta = -(BigReal::exact(1L, p) / golden_ratio(p));
  BigReal sum = BigReal::exact(0L, p);
  for (unsigned i : indices) sum += pow(beta, i);
  return sum;
}

}  // namespace zeckpow
