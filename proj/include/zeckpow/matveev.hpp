#pragma once

// Matveev's explicit lower bound for a nonvanishing linear form in t
// logarithms of real algebraic numbers in a field of degree D:
//   log|Lambda| >= -1.4 * 30^(t+3) * t^4.5 * D^2 (1 + log D)(1 + log B) A_1...A_t

#include <optional>
#include <string>
#include <vector>

#include "zeckpow/real.hpp"

namespace zeckpow {

// A real parameter known either exactly or as a certified expression.
struct RealConst {
  std::string label;
  std::optional<BigRational> exact;
  RealExpr eval;

  static RealConst rational(const BigRational& q);
  static RealConst log_rational(const BigRational& q);
  static RealConst log_golden();
};

struct MatveevParams {
  unsigned t = 1;
  unsigned degree = 1;
  BigRational coefficient_bound = 1;  // B
  std::vector<RealConst> heights;     // A_1..A_t
};

inline constexpr long kMatveevFloorNum = 4;   // A_i >= 0.16 = 4/25
inline constexpr long kMatveevFloorDen = 25;

// Throws std::invalid_argument if the parameters violate the theorem's hypotheses.
void validate(const MatveevParams& params);

// Enclosure of the (negative) right-hand side.
BigReal matveev_lower(const MatveevParams& params, Precision p = 128);

// The parameters used for the eliminated forms with four logarithms:
// t = 4, D = 2, B = n^2, A = (log 5, log alpha, 2 k T, 2 S).
MatveevParams four_log_params(const BigInt& n, unsigned k, const BigRational& t_k,
                              const BigRational& s);

// C = 2.1e15, the uniform step constant.
BigInt step_constant_value();

struct StepConstantCertificate {
  BigRational candidate;
  BigReal product;   // 1.4 * 30^7 * 4^4.5 * 2^2 (1 + log 2) * 3 * log 5 * 2 * 2
  bool certified = false;  // product <= candidate
};

// The product for a general number of logarithms t (t = 4 is the uniform one).
BigReal step_constant_product(unsigned t, Precision p = 128);
StepConstantCertificate check_step_constant(const BigRational& candidate, unsigned t = 4,
                                            Precision p = 128);
// Throws std::logic_error if C does not dominate the product.
StepConstantCertificate step_constant(Precision p = 128);

// -C log n log alpha k T S, the simplified per-step lower bound.
BigReal simplified_step_lower(const BigInt& n, unsigned k, const BigRational& t_k,
                              const BigRational& s, Precision p = 128);

}  // namespace zeckpow
