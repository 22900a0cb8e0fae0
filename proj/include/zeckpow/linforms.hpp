#pragma once

// Linear forms in logarithms attached to
//   y = F_{n_1} + ... + F_{n_k}      (Zeckendorf side)
//   y^a = F_n + F_m                  (power side)
// and the forms obtained by eliminating log y between the two sides.
// Every form is evaluated from its exact integer coefficients on
// log y, log sqrt5, log alpha, log eta3 and log eta4, where
//   eta3(l) = 1 + alpha^(n_2 - n_1) + ... + alpha^(n_l - n_1)
//   eta4    = alpha^(n - m) + 1.

#include <optional>
#include <string>
#include <vector>

#include "zeckpow/fib.hpp"
#include "zeckpow/quad.hpp"
#include "zeckpow/real.hpp"

namespace zeckpow {

class Instance {
 public:
  // Zeckendorf side only; checks y = sum F_{n_i}.
  Instance(BigInt y, ZeckendorfRep rep);
  // Both sides; also checks y^a = F_n + F_m, a >= 2, n >= m.
  Instance(BigInt y, ZeckendorfRep rep, long a, unsigned n, unsigned m);

  static Instance from_y(const BigInt& y) { return Instance(y, zeckendorf(y)); }

  const BigInt& y() const { return y_; }
  const ZeckendorfRep& rep() const { return rep_; }
  std::size_t k() const { return rep_.weight(); }
  bool has_power_side() const { return a_ != 0; }
  long a() const { return a_; }
  unsigned n() const { return n_; }
  unsigned m() const { return m_; }
  // n - 2 >= m >= 2, the shape all the bounds are derived under.
  bool reduced() const { return has_power_side() && m_ >= 2 && n_ >= m_ + 2; }
  bool parity_odd() const { return (n_ - m_) % 2 == 1; }

 private:
  BigInt y_;
  ZeckendorfRep rep_;
  long a_ = 0;
  unsigned n_ = 0;
  unsigned m_ = 0;
};

enum class FormFamily { A, B, A_star, B_star };

struct FormTag {
  FormFamily family = FormFamily::A;
  unsigned index = 1;
  std::string to_string() const;
  static FormTag parse(const std::string& text);
  bool eliminated() const { return family == FormFamily::A_star || family == FormFamily::B_star; }
  friend bool operator==(const FormTag&, const FormTag&) = default;
};

struct LogCoefficients {
  BigInt log_y = 0;
  BigInt log_sqrt5 = 0;
  BigInt log_alpha = 0;
  BigInt log_eta3 = 0;
  unsigned eta3_terms = 1;  // l in eta3(l); 1 means eta3 = 1
  BigInt log_eta4 = 0;
  friend bool operator==(const LogCoefficients&, const LogCoefficients&) = default;
};

struct LinearFormValue {
  FormTag tag;
  LogCoefficients coefficients;
  long exponent = 0;           // X in factor * alpha^(-X)
  BigRational bound_factor;    // 12 or 18a
  BigReal value;
  BigReal claimed_bound;
  bool applicable = false;     // X >= 6
  Decision verdict = Decision::undecided;  // |value| <= claimed_bound, when applicable
};

inline constexpr long kApplicabilityThreshold = 6;

// log(eta3(l)) and log(eta4) as real enclosures.
BigReal log_eta3(const ZeckendorfRep& rep, unsigned ell, Precision p);
BigReal log_eta4(unsigned n_minus_m, Precision p);
// Exact eta3(l) in Z[alpha].
QuadInt eta3(const ZeckendorfRep& rep, unsigned ell);

BigReal evaluate(const Instance& inst, const LogCoefficients& c, Precision p);

// Lambda_A1..Lambda_Ak, then Lambda_B1, Lambda_B2 when the power side is present.
std::vector<LinearFormValue> basic_forms(const Instance& inst, Precision p = 128,
                                         Precision cap = kPrecisionCap);
// Lambda*_A1..A*k, Lambda*_B1..B*k. Requires the power side.
std::vector<LinearFormValue> eliminated_forms(const Instance& inst, Precision p = 128,
                                              Precision cap = kPrecisionCap);
LinearFormValue form(const Instance& inst, FormTag tag, Precision p = 128,
                     Precision cap = kPrecisionCap);

struct NonzeroEvidence {
  NonvanishingCertificate certificate;
  std::optional<BigReal> witness;  // enclosure excluding 0
};

// Only eliminated forms (A*l, B*l); throws std::invalid_argument otherwise.
NonzeroEvidence verify_nonzero(const Instance& inst, FormTag tag, Precision p = 128,
                               Precision cap = 4096);

// sum alpha^(-n_i) and sum beta^(n_i) over a strictly decreasing index list.
BigReal alpha_inverse_power_sum(std::span<const unsigned> indices, Precision p);
BigReal beta_power_sum(std::span<const unsigned> indices, Precision p);

}  // namespace zeckpow
