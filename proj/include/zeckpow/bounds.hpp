#pragma once

// Step walking over bounds of the form c (log n)^x, the maximum over all
// crossing points, and the final solve of n < K (T(log n))^4 with
// K = 6e29, T the step-walking bound for n_1.

#include <optional>
#include <string>
#include <vector>

#include "zeckpow/real.hpp"

namespace zeckpow {

// n -> c (log n)^x with exact c > 0 and integral x >= 0.
struct BoundExpr {
  BigRational c = 1;
  unsigned x = 0;

  BigReal eval(const BigReal& log_n) const;
  // c >= other.c and x >= other.x: pointwise larger whenever log n >= 1.
  bool dominates(const BoundExpr& other) const { return c >= other.c && x >= other.x; }
  std::string to_string() const;
  friend bool operator==(const BoundExpr& a, const BoundExpr& b) {
    return a.c == b.c && a.x == b.x;
  }
};

BigRational default_step_constant();
// 6e29, the n < K (log y)^4 constant for sums of two Fibonacci numbers.
BigInt power_side_constant();

// A-column step: min{n_1 - n_{l+1}, n - m} <= C l R_l log n.
BoundExpr step_a(unsigned ell, const BoundExpr& r, const BigRational& c = default_step_constant());
// B-column step: n_1 - n_{l+1} <= C l S T_l log n.
BoundExpr step_b(unsigned ell, const BoundExpr& s, const BoundExpr& t,
                 const BigRational& c = default_step_constant());

struct WalkStep {
  std::string step;      // "A1", "B3", ...
  std::string bounds;    // the quantity bounded: "n1-n2", "n-m", "n1"
  std::string name;      // "R2", "S1", "T3", ...
  BoundExpr value;
};

struct WalkOutcome {
  enum class Case { left_side, crossing };
  Case kind = Case::left_side;
  unsigned crossover = 0;  // l0 for a crossing walk
  std::vector<WalkStep> trace;
  BoundExpr final;
};

// n_1 < n - m: A1, ..., Ak.
WalkOutcome walk_case1(unsigned k, const BigRational& c = default_step_constant());
// Crossing at l0: A1, ..., A(l0), B(l0), ..., Bk.
WalkOutcome walk_case2(unsigned k, unsigned l0, const BigRational& c = default_step_constant());

// k! C^e (l0!)^(k - l0 + 1) (log n)^e with e = (l0 + 1)(k - l0) + 2 l0.
BoundExpr case2_closed_form(unsigned k, unsigned l0, const BigRational& c = default_step_constant());
inline unsigned case2_exponent(unsigned k, unsigned l0) { return k + l0 * (k + 1 - l0); }

struct PathCandidate {
  std::string label;      // "case1" or "l0=3"
  unsigned crossover = 0; // 0 for case1
  BoundExpr bound;
};

struct PathMaximum {
  unsigned k = 1;
  std::vector<PathCandidate> candidates;
  std::optional<std::size_t> dominant;  // a candidate dominating all others

  // Pointwise maximum over the candidates.
  BigReal eval(const BigReal& log_n) const;
  // Index of the largest candidate at log_n (by midpoint).
  std::size_t argmax(const BigReal& log_n) const;
  // The dominant candidate; throws std::logic_error if there is none.
  const BoundExpr& bound() const;
  // (max c, max x): dominates every candidate for log n >= 1.
  BoundExpr envelope() const;
  unsigned max_exponent() const;
};

PathMaximum max_over_paths(unsigned k, const BigRational& c = default_step_constant());

// C^((k^2+6k+1)/4) k^(e_k) (log n)^((k^2+6k+1)/4), the simplified closed form.
// e_k is reported both as printed, (k^2+2k+5)/4, and as recomputed from
// k^k * k^((k^2+2k+1)/4), which gives (k^2+6k+1)/4.
struct SimplifiedBound {
  unsigned k = 1;
  BigRational c_exponent;
  BigRational k_exponent_printed;
  BigRational k_exponent_recomputed;
  BigRational log_exponent;

  BigReal eval(const BigReal& log_n, bool recomputed) const;
  // Exponents after raising to the 4th power and multiplying by 6e29 <= C^2:
  // C^(k^2+6k+3) k^(4 e_k) (log n)^(k^2+6k+1).
  BigRational finish_c_exponent() const { return 4 * c_exponent + 2; }
  BigRational finish_log_exponent() const { return 4 * log_exponent; }
};

SimplifiedBound simplified_n1_bound(unsigned k);

enum class FinishMethod { iteration, closed_form };

const char* to_string(FinishMethod m);

struct ClosedFormBranches {
  BigReal log_double_exponential;       // log of exp(exp((1 + 1/delta)^2))
  std::optional<BigReal> log_log_branch;  // log of 2^x c (log c)^x; empty when c = 1
  BigReal log_power_branch;             // log of (2x)^((1+delta)x) c
  BigReal log_max;
};

// n <= c (log n)^x with n, c, x >= 1 implies n <= max of the three branches.
ClosedFormBranches closed_form_branches(const BigRational& c, const BigRational& x,
                                        const BigRational& delta, Precision p = 128);
// The branch maximum itself (may have an infinite upper endpoint when it
// exceeds the MPFR exponent range).
BigReal closed_form_bound(const BigRational& c, const BigRational& x, const BigRational& delta,
                          Precision p = 128);

struct FinalBound {
  unsigned k = 1;
  FinishMethod method = FinishMethod::iteration;
  std::string method_used;
  BigRational delta{1, 2};
  PathMaximum paths;
  BoundExpr chosen;                 // the dominant step-walking bound for n_1
  BigRational rhs_c;                // K * chosen.c^4
  unsigned rhs_x = 0;               // 4 * chosen.x
  std::optional<BigInt> n_bound;    // absent when too large to materialize
  BigReal log10_n_bound;
  BigReal log_ya_bound;             // log 2 + n_bound log alpha
  unsigned iterations = 0;
  bool certified = false;           // n_bound >= RHS(n_bound) and RHS(n)/n decreasing beyond
  bool tight = false;               // n_bound - 1 < RHS(n_bound - 1)
  std::vector<std::string> trace;
};

inline constexpr unsigned kMaxFixedPointIterations = 1000;

// K (T(log n))^4 with T the pointwise path maximum.
BigReal finish_rhs(const PathMaximum& paths, const BigInt& n, Precision p);

FinalBound finish(unsigned k, FinishMethod method, const BigRational& delta = BigRational(1, 2),
                  Precision start = 128);

// log10 of k^((3 + eps) k^2), the asymptotic shape of the final bound.
BigReal asymptotic_shape_log10(unsigned k, const BigRational& eps, Precision p = 128);

}  // namespace zeckpow
