#include "zeckpow/fib.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace zeckpow {

std::pair<BigInt, BigInt> fib_pair(std::uint64_t n) {
  // F_2k = F_k (2 F_{k+1} - F_k), F_{2k+1} = F_k^2 + F_{k+1}^2
  BigInt a = 0, b = 1;
  BigInt c, d;
  for (int bit = std::bit_width(n) - 1; bit >= 0; --bit) {
    c = a * (2 * b - a);
    d = a * a + b * b;
    if ((n >> bit) & 1U) {
      a = d;
      b = c + d;
    } else {
      a = c;
      b = d;
    }
  }
  return {a, b};
}

BigInt fib(std::uint64_t n) { return fib_pair(n).first; }

BigInt lucas(std::uint64_t n) {
  auto [f, g] = fib_pair(n);
  return 2 * g - f;
}

std::vector<BigInt> fib_table(std::size_t count) {
  std::vector<BigInt> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i < 2) {
      out.emplace_back(static_cast<unsigned long>(i));
    } else {
      out.push_back(out[i - 1] + out[i - 2]);
    }
  }
  return out;
}

ZeckendorfRep::ZeckendorfRep(std::vector<unsigned> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw std::invalid_argument("ZeckendorfRep: empty index list");
  if (indices_.back() < 2) throw std::invalid_argument("ZeckendorfRep: smallest index must be >= 2");
  for (std::size_t i = 0; i + 1 < indices_.size(); ++i) {
    if (indices_[i] < indices_[i + 1] + 2) {
      throw std::invalid_argument("ZeckendorfRep: indices must decrease with gaps >= 2");
    }
  }
}

BigInt ZeckendorfRep::decode() const {
  BigInt sum = 0;
  for (unsigned i : indices_) sum += fib(i);
  return sum;
}

std::string ZeckendorfRep::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(indices_[i]);
  }
  return out + "]";
}

ZeckendorfRep zeckendorf(const BigInt& y) {
  if (sgn(y) <= 0) throw std::invalid_argument("zeckendorf: y must be >= 1");
  std::vector<BigInt> table = fib_table(3);
  while (table.back() <= y) table.push_back(table[table.size() - 1] + table[table.size() - 2]);

  std::vector<unsigned> indices;
  BigInt rest = y;
  // table.back() > y, so the search starts one below it
  for (auto i = static_cast<unsigned>(table.size() - 2); sgn(rest) > 0; --i) {
    if (table[i] <= rest) {
      rest -= table[i];
      indices.push_back(i);
      --i;  // the next Fibonacci number cannot fit after a greedy pick
    }
  }
  return ZeckendorfRep(std::move(indices));
}

std::size_t hamming_weight(const BigInt& y) { return zeckendorf(y).weight(); }

namespace {

bool is_small_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

std::optional<PerfectPower> perfect_power(const BigInt& s) {
  if (sgn(s) < 0) throw std::invalid_argument("perfect_power: s must be >= 0");
  if (s <= 1) return PerfectPower{s, 2};
  if (mpz_perfect_power_p(s.get_mpz_t()) == 0) return std::nullopt;

  BigInt base = s;
  unsigned exponent = 1;
  BigInt root;
  bool reduced = true;
  while (reduced) {
    reduced = false;
    const auto bits = static_cast<unsigned>(mpz_sizeinbase(base.get_mpz_t(), 2));
    for (unsigned p = 2; p <= bits; ++p) {
      if (!is_small_prime(p)) continue;
      if (mpz_root(root.get_mpz_t(), base.get_mpz_t(), p) != 0) {
        base = root;
        exponent *= p;
        reduced = true;
        break;
      }
    }
  }
  if (exponent < 2) return std::nullopt;
  return PerfectPower{base, exponent};
}

}  // namespace zeckpow
