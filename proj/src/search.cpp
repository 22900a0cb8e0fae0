#include "zeckpow/search.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "zeckpow/bounds.hpp"

namespace zeckpow {

namespace {

struct Shard {
  unsigned lo = 0;
  unsigned hi = 0;  // inclusive
};

std::vector<Solution> search_shard(const std::vector<BigInt>& table, Shard shard) {
  std::vector<Solution> out;
  for (unsigned n = shard.lo; n <= shard.hi; ++n) {
    for (unsigned m = 0; m <= n; ++m) {
      BigInt s = table[n] + table[m];
      if (auto pp = perfect_power(s)) out.push_back({n, m, pp->base, pp->exponent, std::move(s)});
    }
  }
  return out;
}

// Checkpoint format, one record per line:
//   shard <lo> <hi>
//   sol <n> <m> <y> <a>
// A shard's solutions follow its header; a shard counts as complete once
// its header is present.
std::map<unsigned, std::vector<Solution>> read_checkpoint(const std::filesystem::path& path,
                                                          const std::vector<BigInt>& table) {
  std::map<unsigned, std::vector<Solution>> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  std::optional<unsigned> current;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string kind;
    fields >> kind;
    if (kind == "shard") {
      unsigned lo = 0, hi = 0;
      fields >> lo >> hi;
      current = lo;
      done[lo];
    } else if (kind == "sol" && current) {
      Solution s;
      std::string y;
      fields >> s.n >> s.m >> y >> s.a;
      if (s.n >= table.size() || s.m > s.n) continue;
      s.y = BigInt(y, 10);
      s.value = table[s.n] + table[s.m];
      done[*current].push_back(std::move(s));
    }
  }
  return done;
}

void append_checkpoint(const std::filesystem::path& path, Shard shard,
                       const std::vector<Solution>& sols) {
  std::ofstream out(path, std::ios::app);
  out << "shard " << shard.lo << ' ' << shard.hi << '\n';
  for (const auto& s : sols) out << "sol " << s.n << ' ' << s.m << ' ' << s.y.get_str() << ' ' << s.a << '\n';
}

bool by_indices(const Solution& a, const Solution& b) {
  return a.n != b.n ? a.n < b.n : a.m < b.m;
}

}  // namespace

std::vector<Solution> enumerate(unsigned max_n, const SearchOptions& options) {
  const std::vector<BigInt> table = fib_table(max_n + 1);
  const unsigned width = std::max(1U, options.shard_size);
  std::vector<Shard> shards;
  for (unsigned lo = 0; lo <= max_n; lo += width) shards.push_back({lo, std::min(max_n, lo + width - 1)});

  std::map<unsigned, std::vector<Solution>> results;
  if (options.checkpoint) {
    for (auto& [lo, sols] : read_checkpoint(*options.checkpoint, table)) {
      const bool known = std::any_of(shards.begin(), shards.end(), [&](const Shard& s) { return s.lo == lo; });
      if (known) results[lo] = std::move(sols);
    }
  }

  std::vector<Shard> pending;
  for (const Shard& s : shards) {
    if (!results.contains(s.lo)) pending.push_back(s);
  }

  const unsigned threads = std::max(1U, options.threads);
  for (std::size_t begin = 0; begin < pending.size(); begin += threads) {
    const std::size_t end = std::min(pending.size(), begin + threads);
    std::vector<std::future<std::vector<Solution>>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
                                 search_shard, std::cref(table), pending[i]));
    }
    for (std::size_t i = begin; i < end; ++i) {
      auto sols = batch[i - begin].get();
      if (options.checkpoint) append_checkpoint(*options.checkpoint, pending[i], sols);
      results[pending[i].lo] = std::move(sols);
    }
  }

  std::vector<Solution> out;
  for (auto& [lo, sols] : results) {
    for (auto& s : sols) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), by_indices);
  return out;
}

std::vector<Solution> enumerate_exhaustive(unsigned max_n) {
  const std::vector<BigInt> table = fib_table(max_n + 1);
  std::vector<Solution> out;
  BigInt power;
  for (unsigned n = 0; n <= max_n; ++n) {
    for (unsigned m = 0; m <= n; ++m) {
      const BigInt s = table[n] + table[m];
      if (s <= 1) {
        out.push_back({n, m, s, 2, s});
        continue;
      }
      // largest a first, so the first hit is the canonical pair
      const auto max_a = static_cast<unsigned>(mpz_sizeinbase(s.get_mpz_t(), 2));
      bool found = false;
      for (unsigned a = max_a; a >= 2 && !found; --a) {
        for (BigInt y = 2;; ++y) {
          mpz_pow_ui(power.get_mpz_t(), y.get_mpz_t(), a);
          if (power > s) break;
          if (power == s) {
            out.push_back({n, m, y, a, s});
            found = true;
            break;
          }
        }
      }
    }
  }
  return out;
}

bool reverify(const Solution& s) {
  BigInt power = 1;
  for (unsigned i = 0; i < s.a; ++i) power *= s.y;
  const auto table = fib_table(s.n + 1);
  return power == table[s.n] + table[s.m] && power == s.value;
}

std::string Convention::name() const {
  std::string out = include_degenerate ? "y>=0" : "y>=2";
  out += include_equal ? ",n>=m" : ",n>m";
  out += distinct_values ? ",distinct-values" : ",pairs";
  return out;
}

CensusReport census_check(unsigned max_n, const SearchOptions& options) {
  CensusReport report;
  report.max_n = max_n;
  report.solutions = enumerate(max_n, options);

  for (bool distinct : {false, true}) {
    for (bool degenerate : {true, false}) {
      for (bool equal : {true, false}) {
        Convention conv{degenerate, equal, distinct};
        std::set<BigInt> values;
        std::size_t count = 0;
        for (const auto& s : report.solutions) {
          if (!degenerate && s.degenerate()) continue;
          if (!equal && s.n == s.m) continue;
          if (distinct && !values.insert(s.value).second) continue;
          ++count;
        }
        report.counts.push_back({conv, count});
        if (!report.matching && count == report.expected) report.matching = conv;
      }
    }
  }

  const BigInt power_constant = power_side_constant();
  for (const auto& s : report.solutions) {
    if (s.parity_even() && s.n > 36) {
      report.parity_holds = false;
      report.violations.push_back("even n - m with n > 36: (" + std::to_string(s.n) + ", " +
                                  std::to_string(s.m) + ")");
    }
    if (s.y >= 2) {
      const BigReal log_y = eval_log(s.y, 128);
      const BigReal rhs = BigReal::exact(power_constant, 128) * pow(log_y, 4);
      const bool ok = s.a < s.n && certainly_less(BigReal::exact(static_cast<long>(s.n), 128), rhs);
      if (!ok) {
        report.power_side_bound_holds = false;
        report.violations.push_back("a < n < 6e29 (log y)^4 fails at (" + std::to_string(s.n) +
                                    ", " + std::to_string(s.m) + ")");
      }
    }
  }
  return report;
}

Instance instance_of(const Solution& s) {
  if (s.y <= 1) throw std::invalid_argument("instance_of: y must be >= 2");
  return Instance(s.y, zeckendorf(s.y), static_cast<long>(s.a), s.n, s.m);
}

}  // namespace zeckpow
