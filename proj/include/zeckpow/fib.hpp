#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace zeckpow {

using BigInt = mpz_class;

// F_n with F_0 = 0, F_1 = 1, by fast doubling.
BigInt fib(std::uint64_t n);
// L_n with L_0 = 2, L_1 = 1.
BigInt lucas(std::uint64_t n);
// (F_n, F_{n+1}).
std::pair<BigInt, BigInt> fib_pair(std::uint64_t n);

// F_0 .. F_count-1 by plain addition.
std::vector<BigInt> fib_table(std::size_t count);

// A Zeckendorf representation: indices n_1 > n_2 > ... > n_k with
// n_k >= 2 and consecutive gaps >= 2. Validated on construction.
class ZeckendorfRep {
 public:
  explicit ZeckendorfRep(std::vector<unsigned> indices);

  std::span<const unsigned> indices() const { return indices_; }
  std::size_t weight() const { return indices_.size(); }
  unsigned leading() const { return indices_.front(); }
  BigInt decode() const;
  std::string to_string() const;

  friend bool operator==(const ZeckendorfRep&, const ZeckendorfRep&) = default;

 private:
  std::vector<unsigned> indices_;
};

// Greedy largest-first encoding. Throws std::invalid_argument for y <= 0.
ZeckendorfRep zeckendorf(const BigInt& y);
std::size_t hamming_weight(const BigInt& y);

struct PerfectPower {
  BigInt base;
  unsigned exponent = 2;
  friend bool operator==(const PerfectPower&, const PerfectPower&) = default;
};

// Writes s = y^a with the largest possible a >= 2. The degenerate values
// 0 and 1 are reported as (0, 2) and (1, 2). Throws for s < 0.
std::optional<PerfectPower> perfect_power(const BigInt& s);

}  // namespace zeckpow
