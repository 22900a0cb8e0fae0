#pragma once

// Serialization of bounds, linear forms and search results.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zeckpow/bounds.hpp"
#include "zeckpow/linforms.hpp"
#include "zeckpow/search.hpp"

namespace zeckpow {

using Json = nlohmann::ordered_json;

std::string rational_string(const BigRational& q);
BigRational parse_rational(const std::string& text);  // "1/2", "0.5", "3"

Json to_json(const BoundExpr& b);
Json to_json(const FinalBound& fb);
Json to_json(const LinearFormValue& v);
Json to_json(const Solution& s);
Json to_json(const CensusReport& r);

// Human-readable bound summary; the full decimal n_bound only when `full`.
std::string format_human(const FinalBound& fb, bool full);
std::string format_human(const CensusReport& r);

// One instance per line: {"y": ..., "indices": [...], "a": .., "n": .., "m": ..}.
// y and indices may each be omitted (but not both); the power side is optional.
Instance parse_instance(const Json& line);
struct BatchSummary {
  std::size_t instances = 0;
  std::size_t forms = 0;
  std::size_t failed = 0;     // applicable, verdict "no"
  std::size_t undecided = 0;  // applicable, undecided at the precision cap
};

// Reads JSON lines from `in`, writes one output line per form.
BatchSummary run_linform_batch(std::istream& in, std::ostream& out, Precision p, Precision cap);

void write_csv(std::ostream& out, const std::vector<Solution>& sols);
void write_jsonl(std::ostream& out, const std::vector<Solution>& sols);

}  // namespace zeckpow
