#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "zeckpow/search.hpp"

using namespace zeckpow;

namespace {

bool has(const std::vector<Solution>& sols, unsigned n, unsigned m, long y, unsigned a) {
  return std::any_of(sols.begin(), sols.end(), [&](const Solution& s) {
    return s.n == n && s.m == m && s.y == y && s.a == a;
  });
}

std::filesystem::path temp_file(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("known solutions up to 60") {
  const auto sols = enumerate(60);
  CHECK(has(sols, 36, 12, 3864, 2));
  CHECK(has(sols, 16, 7, 10, 3));
  CHECK(has(sols, 6, 6, 2, 4));
  CHECK(has(sols, 0, 0, 0, 2));
  CHECK(std::is_sorted(sols.begin(), sols.end(), [](const Solution& a, const Solution& b) {
    return a.n != b.n ? a.n < b.n : a.m < b.m;
  }));
  for (const auto& s : sols) CHECK(reverify(s));
}

TEST_CASE("enumeration agrees with exhaustion") {
  CHECK(enumerate(25) == enumerate_exhaustive(25));
}

TEST_CASE("threads and shard sizes do not change the result") {
  const auto base = enumerate(80);
  SearchOptions opt;
  opt.threads = 3;
  opt.shard_size = 7;
  CHECK(enumerate(80, opt) == base);
  opt.shard_size = 1000;
  CHECK(enumerate(80, opt) == base);
}

TEST_CASE("census conventions") {
  const CensusReport r = census_check(60);
  REQUIRE(r.counts.size() == 8);
  const std::size_t expected[] = {18, 15, 15, 13, 11, 10, 9, 9};
  for (std::size_t i = 0; i < 8; ++i) CHECK(r.counts[i].count == expected[i]);
  REQUIRE(r.matching.has_value());
  CHECK(r.matching->name() == "y>=0,n>=m,pairs");
  CHECK(r.parity_holds);
  CHECK(r.power_side_bound_holds);
  CHECK(r.violations.empty());
}

TEST_CASE("parity and power-side bounds hold to 200") {
  const CensusReport r = census_check(200);
  CHECK(r.parity_holds);
  CHECK(r.power_side_bound_holds);
  for (const auto& s : r.solutions) {
    if (s.parity_even()) CHECK(s.n <= 36);
  }
}

TEST_CASE("checkpoints are written and resumed") {
  const auto path = temp_file("zeckpow_checkpoint_test.txt");
  SearchOptions opt;
  opt.checkpoint = path;
  opt.shard_size = 10;
  const auto first = enumerate(60, opt);
  CHECK(first == enumerate(60));
  REQUIRE(std::filesystem::exists(path));

  // keep only the first two shards, then resume
  std::ifstream in(path);
  std::string line, kept;
  int shards = 0;
  while (std::getline(in, line)) {
    if (line.rfind("shard", 0) == 0 && ++shards > 2) break;
    kept += line + "\n";
  }
  in.close();
  std::ofstream(path) << kept;
  CHECK(enumerate(60, opt) == first);

  // a completed checkpoint is trusted as is: an emptied shard stays empty
  std::ofstream(path) << "shard 30 39\n";
  const auto resumed = enumerate(60, opt);
  CHECK_FALSE(has(resumed, 36, 12, 3864, 2));
  std::filesystem::remove(path);
}

TEST_CASE("instances from solutions") {
  const auto sols = enumerate(40);
  for (const auto& s : sols) {
    if (s.degenerate()) {
      CHECK_THROWS_AS(instance_of(s), std::invalid_argument);
    } else {
      const Instance inst = instance_of(s);
      CHECK(inst.y() == s.y);
      CHECK(inst.rep().decode() == s.y);
    }
  }
}
