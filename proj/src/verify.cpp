#include "zeckpow/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "zeckpow/bounds.hpp"
#include "zeckpow/fib.hpp"
#include "zeckpow/linforms.hpp"
#include "zeckpow/matveev.hpp"
#include "zeckpow/quad.hpp"
#include "zeckpow/search.hpp"

namespace zeckpow {

const char* to_string(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::pass: return "pass";
    case SuiteStatus::fail: return "FAIL";
    case SuiteStatus::undecided: return "undecided";
  }
  return "?";
}

namespace {

constexpr std::size_t kMaxReported = 5;

struct Ctx {
  const VerifyOptions& opt;
  SuiteResult& res;
  std::optional<std::vector<Solution>> census_cache;

  void check(bool ok, const std::string& what) {
    ++res.checks;
    if (!ok) {
      res.status = SuiteStatus::fail;
      if (res.failures.size() < kMaxReported) res.failures.push_back(what);
    }
  }
  void decision(Decision d, const std::string& what) {
    ++res.checks;
    if (d == Decision::yes) return;
    if (d == Decision::no) {
      res.status = SuiteStatus::fail;
    } else if (res.status == SuiteStatus::pass) {
      res.status = SuiteStatus::undecided;
    }
    if (res.failures.size() < kMaxReported) res.failures.push_back(what + ": " + to_string(d));
  }
};

using SuiteFn = void (*)(Ctx&);

struct Suite {
  SuiteInfo info;
  SuiteFn run;
};

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

void suite_fib(Ctx& c) {
  const std::size_t count = static_cast<std::size_t>(c.opt.identity_x) + 2;
  const std::vector<BigInt> table = fib_table(count);
  for (std::size_t n = 0; n + 1 < count; ++n) {
    c.check(fib(n) == table[n], "fib(" + std::to_string(n) + ") disagrees with the additive table");
    const auto [f, g] = fib_pair(n);
    c.check(f == table[n] && g == table[n + 1], "fib_pair(" + std::to_string(n) + ")");
    if (n >= 1) {
      c.check(lucas(n) == table[n - 1] + table[n + 1],
              "lucas(" + std::to_string(n) + ") != F_(n-1) + F_(n+1)");
    }
  }
  for (std::uint64_t n = 0; n <= 200; ++n) {
    // Binet: F_n = (alpha^n - beta^n) / sqrt 5 rounds to the exact integer
    const Precision p = 256;
    const BigReal a = golden_ratio(p);
    const BigReal b = BigReal::exact(1L, p) - a;
    const BigReal binet = (pow(a, n) - (n % 2 ? -pow(abs(b), n) : pow(abs(b), n))) / sqrt5(p);
    c.check(binet.contains(BigRational(fib(n))) && binet.width_double() < 0.5,
            "Binet enclosure for F_" + std::to_string(n));
  }
}

void suite_zeckendorf(Ctx& c) {
  const unsigned max_y = c.opt.max_y;
  // fewest Fibonacci terms (repetition allowed) by dynamic programming
  const unsigned dp_limit = std::min(max_y, 3000u);
  std::vector<unsigned> fibs;
  for (unsigned i = 2;; ++i) {
    const BigInt f = fib(i);
    if (f > dp_limit) break;
    fibs.push_back(static_cast<unsigned>(f.get_ui()));
  }
  std::vector<unsigned> fewest(dp_limit + 1, std::numeric_limits<unsigned>::max());
  fewest[0] = 0;
  for (unsigned y = 1; y <= dp_limit; ++y) {
    for (unsigned f : fibs) {
      if (f <= y) fewest[y] = std::min(fewest[y], fewest[y - f] + 1);
    }
  }
  for (unsigned y = 1; y <= max_y; ++y) {
    const ZeckendorfRep rep = zeckendorf(y);
    c.check(rep.decode() == y, "zeckendorf(" + std::to_string(y) + ") does not decode");
    if (y <= dp_limit) {
      c.check(rep.weight() == fewest[y], "zeckendorf(" + std::to_string(y) + ") is not minimal");
    }
  }
}

void suite_lucas_mod5(Ctx& c) {
  static constexpr unsigned cycle[4] = {2, 1, 3, 4};
  BigInt prev = 2;  // L_0
  BigInt cur = 1;   // L_1
  for (std::uint64_t x = 0; x <= c.opt.max_x; ++x) {
    const BigInt& lx = x == 0 ? prev : cur;
    const unsigned r = static_cast<unsigned>(mpz_fdiv_ui(lx.get_mpz_t(), 5));
    c.check(r != 0 && r == cycle[x % 4], "L_" + std::to_string(x) + " mod 5 = " + std::to_string(r));
    if (x % 997 == 0) c.check(lucas(x) == lx, "lucas(" + std::to_string(x) + ") disagrees with the recurrence");
    if (x >= 1) {
      BigInt next = cur + prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
  }
}

void suite_alpha_powers(Ctx& c) {
  for (std::uint64_t x = 0; x <= c.opt.identity_x; ++x) {
    const QuadInt ax = alpha_pow(x);
    if (x >= 1) {
      c.check(ax == QuadInt(fib(x - 1), fib(x)), "alpha^" + std::to_string(x) + " != F_(x-1) + F_x alpha");
    }
    const QuadInt shifted = ax + QuadInt(1, 0);
    const BigInt nrm = norm(shifted);
    // N(alpha^x + 1) = (-1)^x + L_x + 1
    const BigInt expected = lucas(x) + (x % 2 ? 0 : 2);
    c.check(nrm == expected, "N(alpha^" + std::to_string(x) + " + 1)");
    if (x % 2 == 1) {
      c.check(nrm == lucas(x), "N(alpha^x + 1) = L_x for odd x = " + std::to_string(x));
      c.check(v_sqrt5(shifted) == 0, "sqrt5 divides alpha^" + std::to_string(x) + " + 1");
    }
  }
  std::mt19937_64 rng(c.opt.seed);
  for (int i = 0; i < 500; ++i) {
    auto pick = [&] {
      QuadInt z(0, 0);
      while (z == QuadInt(0, 0)) {
        z = QuadInt(BigInt(static_cast<long>(draw(rng, 0, 2000)) - 1000),
                    BigInt(static_cast<long>(draw(rng, 0, 2000)) - 1000));
        z = z * pow(QuadInt::sqrt5(), draw(rng, 0, 3));
      }
      return z;
    };
    const QuadInt z = pick();
    const QuadInt w = pick();
    c.check(v_sqrt5(z * w) == v_sqrt5(z) + v_sqrt5(w), "v_sqrt5 not additive on " + z.to_string() +
                                                           ", " + w.to_string());
  }
}

void suite_power_sums(Ctx& c) {
  std::mt19937_64 rng(c.opt.seed + 1);
  const Precision p = c.opt.precision;
  const BigReal three = BigReal::exact(3L, p);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = draw(rng, 1, 12);
    std::vector<unsigned> idx;
    while (idx.size() < k) {
      const unsigned v = static_cast<unsigned>(draw(rng, 0, 200));
      if (std::find(idx.begin(), idx.end(), v) == idx.end()) idx.push_back(v);
    }
    std::sort(idx.rbegin(), idx.rend());
    c.check(certainly_less(alpha_inverse_power_sum(idx, p), three), "sum alpha^-n_i >= 3");
    c.check(certainly_less(abs(beta_power_sum(idx, p)), three), "|sum beta^n_i| >= 3");
  }
}

void suite_log_linearization(Ctx& c) {
  constexpr long steps = 10000;
  for (long i = 0; i <= steps; ++i) {
    const BigRational x = BigRational(1, 2) + make_rational(i, steps);
    const LogLinearization r = log_linearization_check(x, c.opt.precision_cap);
    c.check(r.certified, "|log x| <= 2|x - 1| not certified at x = " + x.get_str());
  }
}

void suite_log_y(Ctx& c) {
  const Precision p = c.opt.precision;
  for (unsigned y = 2; y <= c.opt.max_y; ++y) {
    const ZeckendorfRep rep = zeckendorf(y);
    c.check(certainly_less(eval_log(BigInt(y), p), BigReal::exact(static_cast<long>(rep.leading()), p)),
            "log y >= n_1 for y = " + std::to_string(y));
  }
}

const std::vector<Solution>& census(Ctx& c) {
  if (!c.census_cache) c.census_cache = enumerate(c.opt.max_n);
  return *c.census_cache;
}

void suite_leading_index(Ctx& c) {
  for (const Solution& s : census(c)) {
    if (s.degenerate()) continue;
    const Instance inst = instance_of(s);
    if (!inst.reduced()) continue;
    const std::string name = "(" + std::to_string(s.n) + ", " + std::to_string(s.m) + ")";
    c.check(inst.rep().leading() < s.n, "n_1 >= n at " + name);
    c.check(s.a < s.n, "a >= n at " + name);
  }
}

void suite_forms_small_y(Ctx& c) {
  for (unsigned y = 2; y <= c.opt.max_y; ++y) {
    const Instance inst = Instance::from_y(y);
    for (const auto& f : basic_forms(inst, c.opt.precision, c.opt.precision_cap)) {
      if (f.applicable) c.decision(f.verdict, f.tag.to_string() + " at y = " + std::to_string(y));
    }
  }
}

void suite_forms_known(Ctx& c) {
  for (const Solution& s : census(c)) {
    if (s.degenerate()) continue;
    const Instance inst = instance_of(s);
    if (!inst.reduced()) continue;
    const std::string name = "(" + std::to_string(s.n) + ", " + std::to_string(s.m) + ") ";
    for (const auto& f : basic_forms(inst, c.opt.precision, c.opt.precision_cap)) {
      if (f.applicable) c.decision(f.verdict, name + f.tag.to_string());
    }
    for (const auto& f : eliminated_forms(inst, c.opt.precision, c.opt.precision_cap)) {
      if (f.applicable) c.decision(f.verdict, name + f.tag.to_string());
      const NonzeroEvidence ev = verify_nonzero(inst, f.tag, c.opt.precision);
      const bool valuation = ev.certificate.kind == NonvanishingCertificate::Kind::valuation;
      c.check(valuation || ev.witness.has_value(), name + f.tag.to_string() + " not shown nonzero");
    }
  }
}

void suite_step_constant(Ctx& c) {
  const BigRational candidate =
      c.opt.step_constant_override ? *c.opt.step_constant_override : BigRational(step_constant_value());
  const StepConstantCertificate cert = check_step_constant(candidate, 4, c.opt.precision);
  c.check(cert.certified, "product " + cert.product.midpoint_string(6) + " exceeds " + candidate.get_str());
  c.check(cert.product.width_double() < 1e6, "product enclosure too wide");
}

void suite_step_algebra(Ctx& c) {
  for (unsigned k = 1; k <= c.opt.max_k; ++k) {
    unsigned best = 0;
    for (unsigned l0 = 1; l0 <= k; ++l0) {
      const WalkOutcome walk = walk_case2(k, l0);
      const BoundExpr closed = case2_closed_form(k, l0);
      const std::string name = "k = " + std::to_string(k) + ", l0 = " + std::to_string(l0);
      c.check(walk.final == closed, name + ": walk " + walk.final.to_string() + " != " + closed.to_string());
      c.check(walk.final.x == case2_exponent(k, l0), name + ": exponent");
      c.check(4 * walk.final.x <= k * k + 6 * k + 1, name + ": exponent above (k^2+6k+1)/4");
      best = std::max(best, walk.final.x);
    }
    const PathMaximum paths = max_over_paths(k);
    c.check(paths.max_exponent() == std::max(best, walk_case1(k).final.x),
            "k = " + std::to_string(k) + ": path maximum exponent");
  }
}

void suite_closed_form(Ctx& c) {
  std::mt19937_64 rng(c.opt.seed + 2);
  constexpr double kLimit = 1e9;
  for (unsigned i = 0; i < c.opt.samples; ++i) {
    const BigRational cc = make_rational(BigInt(static_cast<unsigned long>(draw(rng, 1000, 1000000000000000ULL))), 1000);
    const BigRational x = make_rational(static_cast<long>(draw(rng, 1000, 50000)), 1000);
    const BigRational delta = make_rational(static_cast<long>(draw(rng, 1, 999)), 1000);
    const double log_c = std::log(cc.get_d());
    const double xd = x.get_d();
    auto satisfies = [&](double n) { return n >= 2 && std::log(n) <= log_c + xd * std::log(std::log(n)); };
    // n / (log n)^x falls until e^x and rises after, so the satisfying n form an interval.
    std::vector<double> probes;
    if (satisfies(kLimit)) {
      probes.push_back(kLimit);
    } else if (std::exp(xd) < kLimit && satisfies(std::ceil(std::exp(xd)))) {
      double lo = std::ceil(std::exp(xd));
      double hi = kLimit;
      while (hi - lo > 1) {
        const double mid = std::floor((lo + hi) / 2);
        (satisfies(mid) ? lo : hi) = mid;
      }
      probes.push_back(lo);
    }
    for (int j = 0; j < 8; ++j) {
      const double n = static_cast<double>(draw(rng, 2, static_cast<std::uint64_t>(kLimit)));
      if (satisfies(n)) probes.push_back(n);
    }
    if (probes.empty()) continue;
    const ClosedFormBranches br = closed_form_branches(cc, x, delta, 64);
    for (double n : probes) {
      const BigReal log_n = eval_log(BigInt(static_cast<unsigned long>(n)), 64);
      c.check(certainly_less_equal(log_n, br.log_max),
              "n = " + std::to_string(static_cast<unsigned long>(n)) + " exceeds the bound for c = " +
                  cc.get_str() + ", x = " + x.get_str() + ", delta = " + delta.get_str());
    }
  }
}

void suite_finish(Ctx& c) {
  for (unsigned k = 1; k <= c.opt.finish_k; ++k) {
    const std::string name = "k = " + std::to_string(k);
    const FinalBound it = finish(k, FinishMethod::iteration, BigRational(1, 2), c.opt.precision);
    c.check(it.n_bound.has_value() && *it.n_bound >= 36, name + ": no integer bound");
    c.check(it.certified, name + ": fixed point not certified");
    c.check(it.tight, name + ": fixed point not tight");
    const FinalBound cf = finish(k, FinishMethod::closed_form, BigRational(1, 2), c.opt.precision);
    c.check(certainly_less_equal(it.log10_n_bound, cf.log10_n_bound),
            name + ": closed form below the fixed point");
  }
}

void suite_oracle(Ctx& c) {
  const unsigned n = std::min(c.opt.max_n, 25u);
  c.check(enumerate(n) == enumerate_exhaustive(n), "enumerate and the exhaustive oracle disagree");
  for (const Solution& s : census(c)) {
    c.check(reverify(s), "solution (" + std::to_string(s.n) + ", " + std::to_string(s.m) + ") fails re-verification");
  }
}

void suite_parity(Ctx& c) {
  for (const Solution& s : census(c)) {
    if (s.parity_even()) {
      c.check(s.n <= 36, "even n - m with n = " + std::to_string(s.n));
    }
  }
}

void suite_power_side(Ctx& c) {
  const Precision p = c.opt.precision;
  const BigReal k = BigReal::exact(power_side_constant(), p);
  for (const Solution& s : census(c)) {
    if (s.y < 2) continue;
    const std::string name = "(" + std::to_string(s.n) + ", " + std::to_string(s.m) + ")";
    c.check(s.a < s.n, "a >= n at " + name);
    c.check(certainly_less(BigReal::exact(static_cast<long>(s.n), p), k * pow(eval_log(s.y, p), 4)),
            "n >= 6e29 (log y)^4 at " + name);
  }
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {{"fib-recurrence", "", "fast doubling, additive table, Lucas and Binet identities"}, suite_fib},
      {{"zeckendorf", "", "greedy encoding decodes and has minimal weight"}, suite_zeckendorf},
      {{"lucas-mod5", "lemma9", "Lucas numbers mod 5 cycle through 2, 1, 3, 4"}, suite_lucas_mod5},
      {{"alpha-powers", "", "alpha^x = F_(x-1) + F_x alpha, norms of alpha^x + 1, sqrt5 valuations"},
       suite_alpha_powers},
      {{"power-sums", "lemma4", "sums of alpha^-n_i and beta^n_i stay below 3"}, suite_power_sums},
      {{"log-linearization", "lemma6", "|log x| <= 2|x - 1| on [1/2, 3/2]"}, suite_log_linearization},
      {{"log-y-below-leading-index", "lemma3", "log y < n_1 for the Zeckendorf side"}, suite_log_y},
      {{"leading-index", "lemma5", "n_1 < n and a < n on every reduced solution"}, suite_leading_index},
      {{"forms-small-y", "", "Zeckendorf-side forms meet 12 alpha^-X for small y"}, suite_forms_small_y},
      {{"forms-known-solutions", "", "all applicable forms on the census solutions"}, suite_forms_known},
      {{"step-constant", "", "Matveev product for four logarithms is at most C"}, suite_step_constant},
      {{"step-algebra", "", "step walks reproduce the closed forms"}, suite_step_algebra},
      {{"closed-form-implication", "lemma10", "n <= c (log n)^x implies the closed-form bound"},
       suite_closed_form},
      {{"finish", "", "fixed points are certified, tight, and below the closed form"}, suite_finish},
      {{"search-oracle", "", "enumeration agrees with exhaustion and re-verifies"}, suite_oracle},
      {{"parity", "", "n = m mod 2 implies n <= 36 on the census"}, suite_parity},
      {{"power-side", "", "a < n < 6e29 (log y)^4 on the census"}, suite_power_side},
  };
  return all;
}

}  // namespace

std::vector<SuiteInfo> list_suites() {
  std::vector<SuiteInfo> out;
  for (const auto& s : suites()) out.push_back(s.info);
  return out;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& options,
                                    const std::function<void(const SuiteResult&)>& on_done) {
  for (const auto& name : options.only) {
    const bool known = std::any_of(suites().begin(), suites().end(), [&](const Suite& s) {
      return s.info.id == name || (!s.info.alias.empty() && s.info.alias == name);
    });
    if (!known) throw std::invalid_argument("unknown suite: " + name);
  }
  std::vector<SuiteResult> results;
  std::optional<std::vector<Solution>> shared_census;
  for (const auto& s : suites()) {
    if (!options.only.empty() && !options.only.count(s.info.id) &&
        (s.info.alias.empty() || !options.only.count(s.info.alias))) {
      continue;
    }
    SuiteResult res;
    res.id = s.info.id;
    res.alias = s.info.alias;
    res.description = s.info.description;
    Ctx ctx{options, res, std::move(shared_census)};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      s.run(ctx);
    } catch (const std::exception& e) {
      res.status = SuiteStatus::fail;
      res.failures.push_back(std::string("exception: ") + e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    shared_census = std::move(ctx.census_cache);
    if (on_done) on_done(res);
    results.push_back(std::move(res));
  }
  return results;
}

int exit_code(const std::vector<SuiteResult>& results) {
  bool undecided = false;
  for (const auto& r : results) {
    if (r.status == SuiteStatus::fail) return 1;
    if (r.status == SuiteStatus::undecided) undecided = true;
  }
  return undecided ? 3 : 0;
}

}  // namespace zeckpow
