#pragma once

// The invariant battery behind `zeckpow verify`: named suites of exact and
// certified checks over every module.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zeckpow/real.hpp"

namespace zeckpow {

struct VerifyOptions {
  // Replaces the step constant in the certificate suite (fault injection).
  std::optional<BigRational> step_constant_override;
  std::uint64_t max_x = 100000;     // Lucas mod 5 range
  std::uint64_t identity_x = 1000;  // alpha-power and norm identities
  unsigned max_y = 10000;           // Zeckendorf-side forms and round trips
  unsigned max_n = 200;             // census range
  unsigned max_k = 10;              // step algebra range
  unsigned finish_k = 3;            // finish soundness range
  unsigned samples = 10000;         // closed-form implication triples
  std::uint64_t seed = 20240601;
  Precision precision = 128;
  Precision precision_cap = kPrecisionCap;
  // Suite ids or aliases; empty runs everything.
  std::set<std::string> only;
};

enum class SuiteStatus { pass, fail, undecided };

const char* to_string(SuiteStatus s);

struct SuiteResult {
  std::string id;
  std::string alias;  // short handle accepted by --only, may be empty
  std::string description;
  SuiteStatus status = SuiteStatus::pass;
  std::size_t checks = 0;
  std::vector<std::string> failures;  // first few failing cases
  double seconds = 0;
};

struct SuiteInfo {
  std::string id;
  std::string alias;
  std::string description;
};

std::vector<SuiteInfo> list_suites();

// Throws std::invalid_argument for an unknown name in options.only.
std::vector<SuiteResult> run_verify(const VerifyOptions& options,
                                    const std::function<void(const SuiteResult&)>& on_done = {});

// 0 all pass, 1 any failure, 3 only undecided cases besides passes.
int exit_code(const std::vector<SuiteResult>& results);

}  // namespace zeckpow
