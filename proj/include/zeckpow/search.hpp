#pragma once

// Brute-force enumeration of F_n + F_m = y^a, n >= m >= 0, a >= 2.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zeckpow/fib.hpp"
#include "zeckpow/linforms.hpp"

namespace zeckpow {

struct Solution {
  unsigned n = 0;
  unsigned m = 0;
  BigInt y;
  unsigned a = 2;
  BigInt value;

  bool degenerate() const { return y <= 1; }
  bool parity_even() const { return (n - m) % 2 == 0; }
  friend bool operator==(const Solution&, const Solution&) = default;
};

struct SearchOptions {
  unsigned threads = 1;
  unsigned shard_size = 16;  // values of n per shard
  // Plain-text checkpoint of completed shards; resumed from if present.
  std::optional<std::filesystem::path> checkpoint;
};

// All (n, m) with max_n >= n >= m >= 0 whose sum is a perfect power, sorted by (n, m).
std::vector<Solution> enumerate(unsigned max_n, const SearchOptions& options = {});

// Independent oracle: every y <= sqrt(s) and a <= log2(s) tried by exact
// exponentiation. Only practical for small max_n.
std::vector<Solution> enumerate_exhaustive(unsigned max_n);

// Recomputes F_n + F_m and y^a independently.
bool reverify(const Solution& s);

struct Convention {
  bool include_degenerate = true;  // y in {0, 1}
  bool include_equal = true;       // n = m
  bool distinct_values = false;    // count each perfect power once
  std::string name() const;
};

struct ConventionCount {
  Convention convention;
  std::size_t count = 0;
};

struct CensusReport {
  unsigned max_n = 0;
  std::vector<Solution> solutions;
  std::vector<ConventionCount> counts;
  std::size_t expected = 18;
  std::optional<Convention> matching;  // first convention reproducing the expected count
  // every solution with n = m (mod 2) has n <= 36
  bool parity_holds = true;
  // every solution with y >= 2 has a < n < 6e29 (log y)^4
  bool power_side_bound_holds = true;
  std::vector<std::string> violations;
};

CensusReport census_check(unsigned max_n, const SearchOptions& options = {});

// Attaches the Zeckendorf representation of y. Throws for y <= 1.
Instance instance_of(const Solution& s);

}  // namespace zeckpow
