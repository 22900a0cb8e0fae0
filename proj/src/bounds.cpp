#include "zeckpow/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zeckpow/matveev.hpp"

namespace zeckpow {

namespace {

BigInt factorial(unsigned n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigRational rational_pow(const BigRational& base, unsigned long e) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  BigRational out(num, den);
  out.canonicalize();
  return out;
}

std::string quantity(unsigned ell, unsigned k) {
  return ell < k ? "n1-n" + std::to_string(ell + 1) : "n1";
}

Precision bits_of(const BigInt& n) {
  return static_cast<Precision>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

}  // namespace

BigReal BoundExpr::eval(const BigReal& log_n) const {
  const Precision p = log_n.precision();
  if (x == 0) return BigReal::exact(c, p);
  return BigReal::exact(c, p) * pow(log_n, x);
}

std::string BoundExpr::to_string() const {
  return "(" + c.get_str() + ") * (log n)^" + std::to_string(x);
}

BigRational default_step_constant() { return BigRational(step_constant_value()); }

BigInt power_side_constant() { return BigInt(6) * BigInt("100000000000000000000000000000"); }

BoundExpr step_a(unsigned ell, const BoundExpr& r, const BigRational& c) {
  if (ell == 0) throw std::invalid_argument("step_a: l must be >= 1");
  return {c * ell * r.c, r.x + 1};
}

BoundExpr step_b(unsigned ell, const BoundExpr& s, const BoundExpr& t, const BigRational& c) {
  if (ell == 0) throw std::invalid_argument("step_b: l must be >= 1");
  return {c * ell * s.c * t.c, s.x + t.x + 1};
}

WalkOutcome walk_case1(unsigned k, const BigRational& c) {
  if (k == 0) throw std::invalid_argument("walk_case1: k must be >= 1");
  WalkOutcome out;
  out.kind = WalkOutcome::Case::left_side;
  BoundExpr r;  // R_1 = 1
  for (unsigned ell = 1; ell <= k; ++ell) {
    r = step_a(ell, r, c);
    out.trace.push_back({"A" + std::to_string(ell), quantity(ell, k), "R" + std::to_string(ell + 1), r});
  }
  out.final = r;
  return out;
}

WalkOutcome walk_case2(unsigned k, unsigned l0, const BigRational& c) {
  if (k == 0 || l0 == 0 || l0 > k) throw std::invalid_argument("walk_case2: need 1 <= l0 <= k");
  WalkOutcome out;
  out.kind = WalkOutcome::Case::crossing;
  out.crossover = l0;
  BoundExpr r;  // R_1 = 1
  for (unsigned ell = 1; ell < l0; ++ell) {
    r = step_a(ell, r, c);
    out.trace.push_back({"A" + std::to_string(ell), quantity(ell, k), "R" + std::to_string(ell + 1), r});
  }
  const BoundExpr s = step_a(l0, r, c);
  out.trace.push_back({"A" + std::to_string(l0), "n-m", "S" + std::to_string(l0), s});
  // R_{l0} plays the role of T_{l0} on entering the B column
  BoundExpr t = step_b(l0, s, r, c);
  out.trace.push_back({"B" + std::to_string(l0), quantity(l0, k), "T" + std::to_string(l0 + 1), t});
  for (unsigned ell = l0 + 1; ell <= k; ++ell) {
    t = step_b(ell, s, t, c);
    out.trace.push_back({"B" + std::to_string(ell), quantity(ell, k), "T" + std::to_string(ell + 1), t});
  }
  out.final = t;
  return out;
}

BoundExpr case2_closed_form(unsigned k, unsigned l0, const BigRational& c) {
  if (k == 0 || l0 == 0 || l0 > k) throw std::invalid_argument("case2_closed_form: need 1 <= l0 <= k");
  const unsigned e = (l0 + 1) * (k - l0) + 2 * l0;
  BigRational coeff = BigRational(factorial(k)) * rational_pow(c, e) *
                      rational_pow(BigRational(factorial(l0)), k - l0 + 1);
  return {coeff, e};
}

BigReal PathMaximum::eval(const BigReal& log_n) const {
  BigReal best = candidates.front().bound.eval(log_n);
  for (std::size_t i = 1; i < candidates.size(); ++i) best = max(best, candidates[i].bound.eval(log_n));
  return best;
}

std::size_t PathMaximum::argmax(const BigReal& log_n) const {
  std::size_t best = 0;
  BigReal best_value = candidates.front().bound.eval(log_n);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    BigReal v = candidates[i].bound.eval(log_n);
    if (mpfr_greater_p(v.midpoint().lower(), best_value.midpoint().lower())) {
      best = i;
      best_value = std::move(v);
    }
  }
  return best;
}

const BoundExpr& PathMaximum::bound() const {
  if (!dominant) throw std::logic_error("no path bound dominates symbolically");
  return candidates[*dominant].bound;
}

BoundExpr PathMaximum::envelope() const {
  BoundExpr out = candidates.front().bound;
  for (const auto& cand : candidates) {
    if (cand.bound.c > out.c) out.c = cand.bound.c;
    out.x = std::max(out.x, cand.bound.x);
  }
  return out;
}

unsigned PathMaximum::max_exponent() const { return envelope().x; }

PathMaximum max_over_paths(unsigned k, const BigRational& c) {
  if (k == 0) throw std::invalid_argument("max_over_paths: k must be >= 1");
  PathMaximum out;
  out.k = k;
  out.candidates.push_back({"case1", 0, walk_case1(k, c).final});
  for (unsigned l0 = 1; l0 <= k; ++l0) {
    out.candidates.push_back({"l0=" + std::to_string(l0), l0, walk_case2(k, l0, c).final});
  }
  for (std::size_t i = 0; i < out.candidates.size(); ++i) {
    const bool dominates_all = std::all_of(out.candidates.begin(), out.candidates.end(),
                                           [&](const PathCandidate& other) {
                                             return out.candidates[i].bound.dominates(other.bound);
                                           });
    if (dominates_all) {
      out.dominant = i;
      break;
    }
  }
  return out;
}

BigReal SimplifiedBound::eval(const BigReal& log_n, bool recomputed) const {
  const Precision p = log_n.precision();
  const BigReal log_c = eval_log(default_step_constant(), p);
  const BigReal log_k = log(BigReal::exact(static_cast<long>(k), p));
  const BigRational& ke = recomputed ? k_exponent_recomputed : k_exponent_printed;
  BigReal exponent = BigReal::exact(c_exponent, p) * log_c + BigReal::exact(ke, p) * log_k;
  exponent += BigReal::exact(log_exponent, p) * log(log_n);
  return exp(exponent);
}

SimplifiedBound simplified_n1_bound(unsigned k) {
  if (k == 0) throw std::invalid_argument("simplified_n1_bound: k must be >= 1");
  const long kk = k;
  SimplifiedBound out;
  out.k = k;
  out.c_exponent = make_rational(kk * kk + 6 * kk + 1, 4);
  out.k_exponent_printed = make_rational(kk * kk + 2 * kk + 5, 4);
  out.k_exponent_recomputed = kk + make_rational(kk * kk + 2 * kk + 1, 4);
  out.log_exponent = make_rational(kk * kk + 6 * kk + 1, 4);
  out.c_exponent.canonicalize();
  out.k_exponent_printed.canonicalize();
  out.k_exponent_recomputed.canonicalize();
  out.log_exponent.canonicalize();
  return out;
}

const char* to_string(FinishMethod m) {
  return m == FinishMethod::iteration ? "iteration" : "lemma10";
}

ClosedFormBranches closed_form_branches(const BigRational& c, const BigRational& x,
                                        const BigRational& delta, Precision p) {
  if (c < 1 || x < 1) throw std::invalid_argument("closed_form_branches: need c, x >= 1");
  if (sgn(delta) <= 0) throw std::invalid_argument("closed_form_branches: need delta > 0");
  const BigReal one = BigReal::exact(1L, p);
  const BigReal xr = BigReal::exact(x, p);
  const BigReal log_c = eval_log(c, p);
  const BigRational inner = (1 + 1 / delta) * (1 + 1 / delta);

  ClosedFormBranches out{exp(BigReal::exact(inner, p)), std::nullopt, BigReal(p), BigReal(p)};
  if (c > 1) {
    out.log_log_branch = xr * log(BigReal::exact(2L, p)) + log_c + xr * log(log_c);
  }
  out.log_power_branch =
      BigReal::exact(1 + delta, p) * xr * log(BigReal::exact(2L, p) * xr) + log_c;
  out.log_max = max(out.log_double_exponential, out.log_power_branch);
  if (out.log_log_branch) out.log_max = max(out.log_max, *out.log_log_branch);
  return out;
}

BigReal closed_form_bound(const BigRational& c, const BigRational& x, const BigRational& delta,
                          Precision p) {
  return exp(closed_form_branches(c, x, delta, p).log_max);
}

BigReal finish_rhs(const PathMaximum& paths, const BigInt& n, Precision p) {
  const BigReal t = paths.eval(eval_log(n, p));
  return BigReal::exact(power_side_constant(), p) * pow(t, 4);
}

namespace {

Precision precision_for(const BigInt& n, Precision start) {
  return std::max(start, bits_of(n) + 64);
}

Decision rhs_at_most(const PathMaximum& paths, const BigInt& n, Precision start) {
  const Precision p = precision_for(n, start);
  return decide_leq([&](Precision q) { return finish_rhs(paths, n, q); },
                    [&](Precision q) { return BigReal::exact(n, q); },
                    std::max(kPrecisionCap, 4 * p), p);
}

Decision below_rhs(const PathMaximum& paths, const BigInt& n, Precision start) {
  const Precision p = precision_for(n, start);
  return decide_less([&](Precision q) { return BigReal::exact(n, q); },
                     [&](Precision q) { return finish_rhs(paths, n, q); },
                     std::max(kPrecisionCap, 4 * p), p);
}

// Newton on L = log n for L - log K - 4 log T(L) = 0, from a point below the root.
BigInt newton_fixed_point(const PathMaximum& paths, const BigInt& from, Precision start,
                          std::vector<std::string>& trace) {
  double estimate = std::log(mpz_get_d(from.get_mpz_t()));
  if (!std::isfinite(estimate)) estimate = static_cast<double>(bits_of(from)) * std::log(2.0);
  const double log_k = std::log(6e29);
  // double-precision pass to size the working precision
  for (int i = 0; i < 200; ++i) {
    const std::size_t j = paths.argmax(BigReal::exact(static_cast<long>(std::max(estimate, 2.0)), 64));
    const BoundExpr& b = paths.candidates[j].bound;
    const double log_c = eval_log(b.c, 64).midpoint_double();
    const double phi = estimate - log_k - 4.0 * (log_c + b.x * std::log(estimate));
    const double dphi = 1.0 - 4.0 * b.x / estimate;
    const double next = std::max(estimate - phi / dphi, 4.0 * b.x + 1.0);
    if (std::fabs(next - estimate) < 1e-9 * std::max(1.0, estimate)) {
      estimate = next;
      break;
    }
    estimate = next;
  }
  const auto w = std::max(start, static_cast<Precision>(estimate / std::log(2.0)) + 128);
  BigReal lr = BigReal::exact(static_cast<long>(estimate), w);
  const BigReal log_kr = eval_log(power_side_constant(), w);
  const BigReal four = BigReal::exact(4L, w);
  for (int i = 0; i < 64; ++i) {
    const std::size_t j = paths.argmax(lr);
    const BoundExpr& b = paths.candidates[j].bound;
    const BigReal xr = BigReal::exact(static_cast<long>(b.x), w);
    BigReal phi = lr - log_kr - four * (eval_log(b.c, w) + xr * log(lr));
    BigReal dphi = BigReal::exact(1L, w) - four * xr / lr;
    BigReal next = (lr - phi.midpoint() / dphi.midpoint()).midpoint();
    Mpfr diff(w);
    mpfr_sub(diff.get(), next.lower(), lr.lower(), MPFR_RNDN);
    lr = std::move(next);
    if (mpfr_zero_p(diff.get()) || mpfr_get_exp(diff.get()) < -(w - 96)) break;
  }
  trace.push_back("newton refinement in log n at " + std::to_string(w) + " bits");
  return exp(lr).ceil_upper();
}

}  // namespace

FinalBound finish(unsigned k, FinishMethod method, const BigRational& delta, Precision start) {
  if (k == 0) throw std::invalid_argument("finish: k must be >= 1");
  if (method == FinishMethod::closed_form && (sgn(delta) <= 0 || delta >= 1)) {
    throw std::invalid_argument("finish: delta must lie in (0, 1)");
  }
  FinalBound out;
  out.k = k;
  out.method = method;
  out.delta = delta;
  out.paths = max_over_paths(k);
  out.chosen = out.paths.dominant ? out.paths.bound() : out.paths.envelope();
  out.rhs_c = BigRational(power_side_constant()) * rational_pow(out.chosen.c, 4);
  out.rhs_x = 4 * out.chosen.x;
  out.trace.push_back("n_1 <= " + out.chosen.to_string() + " (" +
                      (out.paths.dominant ? out.paths.candidates[*out.paths.dominant].label
                                          : std::string("envelope")) + ")");
  out.trace.push_back("solve n < 6e29 * T(log n)^4, pointwise maximum over " +
                      std::to_string(out.paths.candidates.size()) + " walks");

  const Precision p = start;
  if (method == FinishMethod::closed_form) {
    const ClosedFormBranches br = closed_form_branches(out.rhs_c, out.rhs_x, delta, p);
    out.method_used = "lemma10";
    out.log10_n_bound = br.log_max / log(BigReal::exact(10L, p));
    // materialize only below ~2^22 bits
    if (br.log_max.is_finite() && br.log_max.upper_double() < 2.9e6) {
      const Precision w = static_cast<Precision>(br.log_max.upper_double() / std::log(2.0)) + 64;
      const ClosedFormBranches wide = closed_form_branches(out.rhs_c, out.rhs_x, delta, std::max(w, p));
      out.n_bound = exp(wide.log_max).ceil_upper();
    }
    out.certified = true;
  } else {
    BigInt n = 10;
    bool converged = false;
    for (unsigned it = 0; it < kMaxFixedPointIterations; ++it) {
      BigInt next = finish_rhs(out.paths, n, precision_for(n, start)).ceil_upper();
      ++out.iterations;
      if (next <= n) {
        converged = true;
        break;
      }
      n = std::move(next);
    }
    out.method_used = "iteration";
    if (!converged) {
      out.trace.push_back("ascending iteration hit the cap of " +
                          std::to_string(kMaxFixedPointIterations) + " steps");
      n = newton_fixed_point(out.paths, n, start, out.trace);
      out.method_used = "iteration+newton";
    }
    // settle on the least integer with n >= RHS(n)
    for (int guard = 0; guard < 64 && rhs_at_most(out.paths, n, start) != Decision::yes; ++guard) ++n;
    for (int guard = 0; guard < 64 && rhs_at_most(out.paths, n - 1, start) == Decision::yes; ++guard) --n;

    const bool at_fixed_point = rhs_at_most(out.paths, n, start) == Decision::yes;
    const Precision w = precision_for(n, start);
    // RHS(n)/n decreases once log n > 4 x for every walk
    const bool decreasing = certainly_less(
        BigReal::exact(static_cast<long>(4 * out.paths.max_exponent()), w), eval_log(n, w));
    out.certified = at_fixed_point && decreasing;
    out.tight = below_rhs(out.paths, n - 1, start) == Decision::yes;
    out.trace.push_back("fixed point after " + std::to_string(out.iterations) + " iterations");

    if (n < 36) {
      out.trace.push_back("even n - m branch (n <= 36) dominates");
      n = 36;
    } else {
      out.trace.push_back("even n - m branch gives n <= 36, below the fixed point");
    }
    out.log10_n_bound = eval_log(n, p) / log(BigReal::exact(10L, p));
    out.n_bound = std::move(n);
  }

  const Precision w = out.n_bound ? precision_for(*out.n_bound, start) : p;
  const BigReal n_real = out.n_bound ? BigReal::exact(*out.n_bound, w)
                                     : exp(out.log10_n_bound * log(BigReal::exact(10L, p)));
  out.log_ya_bound = log(BigReal::exact(2L, w)) + n_real * log_golden_ratio(w);
  return out;
}

BigReal asymptotic_shape_log10(unsigned k, const BigRational& eps, Precision p) {
  const long kk = k;
  return BigReal::exact((3 + eps) * (kk * kk), p) * log(BigReal::exact(kk, p)) /
         log(BigReal::exact(10L, p));
}

}  // namespace zeckpow
