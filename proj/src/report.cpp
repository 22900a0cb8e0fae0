#include "zeckpow/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace zeckpow {

std::string rational_string(const BigRational& q) { return q.get_str(); }

BigRational parse_rational(const std::string& input) {
  if (input.empty()) throw std::invalid_argument("empty rational");
  const auto e = input.find_first_of("eE");
  if (e != std::string::npos) {
    const std::string exp_text = input.substr(e + 1);
    if (exp_text.empty() || exp_text.find_first_not_of("+-0123456789") != std::string::npos) {
      throw std::invalid_argument("not a rational number: " + input);
    }
    const long exponent = std::stol(exp_text);
    if (exponent > 10000 || exponent < -10000) throw std::invalid_argument("exponent out of range: " + input);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    BigRational q = parse_rational(input.substr(0, e));
    q = exponent >= 0 ? BigRational(q * scale) : BigRational(q / scale);
    q.canonicalize();
    return q;
  }
  const std::string& text = input;
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) {
      BigRational q(text, 10);
      q.canonicalize();
      return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t scale = text.size() - dot - 1;
    if (digits.empty() || digits == "-") throw std::invalid_argument(text);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    BigRational q(BigInt(digits, 10), den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: " + text);
  }
}

namespace {

Json enclosure_json(const BigReal& x, int digits = 17) {
  return Json{{"midpoint", x.midpoint_string(digits)}, {"radius", x.radius_string(3)}};
}

double midpoint_number(const BigReal& x) {
  // round to 9 significant digits so the JSON text is stable
  std::ostringstream s;
  s << std::setprecision(9) << x.midpoint_double();
  return std::stod(s.str());
}

}  // namespace

Json to_json(const BoundExpr& b) { return Json{{"c", rational_string(b.c)}, {"x", b.x}}; }

Json to_json(const FinalBound& fb) {
  Json paths = Json::array();
  for (const auto& cand : fb.paths.candidates) {
    paths.push_back(Json{{"label", cand.label},
                         {"crossover", cand.crossover},
                         {"c", rational_string(cand.bound.c)},
                         {"x", cand.bound.x}});
  }
  const SimplifiedBound simple = simplified_n1_bound(fb.k);
  Json out{
      {"k", fb.k},
      {"method", to_string(fb.method)},
      {"method_used", fb.method_used},
      {"delta", rational_string(fb.delta)},
      {"paths", paths},
      {"chosen", {{"label", fb.paths.dominant ? fb.paths.candidates[*fb.paths.dominant].label
                                               : std::string("envelope")},
                  {"c", rational_string(fb.chosen.c)},
                  {"x", fb.chosen.x}}},
      {"c_final", rational_string(fb.rhs_c)},
      {"x_final", fb.rhs_x},
      {"n_bound", fb.n_bound ? Json(fb.n_bound->get_str()) : Json(nullptr)},
      {"log10_n_bound", midpoint_number(fb.log10_n_bound)},
      {"log10_n_bound_enclosure", enclosure_json(fb.log10_n_bound)},
      {"log_ya_bound", enclosure_json(fb.log_ya_bound)},
      {"iterations", fb.iterations},
      {"certified", fb.certified},
      {"tight", fb.tight},
      {"simplified_n1_bound",
       {{"c_exponent", rational_string(simple.c_exponent)},
        {"k_exponent_printed", rational_string(simple.k_exponent_printed)},
        {"k_exponent_recomputed", rational_string(simple.k_exponent_recomputed)},
        {"log_exponent", rational_string(simple.log_exponent)},
        {"k_exponent_mismatch", simple.k_exponent_printed != simple.k_exponent_recomputed}}},
      {"trace", fb.trace},
  };
  return out;
}

Json to_json(const LinearFormValue& v) {
  return Json{{"tag", v.tag.to_string()},
              {"X", v.exponent},
              {"bound_factor", rational_string(v.bound_factor)},
              {"midpoint", v.value.midpoint_string(20)},
              {"radius", v.value.radius_string(3)},
              {"bound", v.claimed_bound.midpoint_string(20)},
              {"applicable", v.applicable},
              {"verdict", v.applicable ? to_string(v.verdict) : "n/a"}};
}

Json to_json(const Solution& s) {
  const std::size_t k = s.y >= 1 ? hamming_weight(s.y) : 0;
  return Json{{"n", s.n},
              {"m", s.m},
              {"y", s.y.get_str()},
              {"a", s.a},
              {"value", s.value.get_str()},
              {"k", k},
              {"parity", s.parity_even() ? "even" : "odd"}};
}

Json to_json(const CensusReport& r) {
  Json sols = Json::array();
  for (const auto& s : r.solutions) sols.push_back(to_json(s));
  Json counts = Json::array();
  for (const auto& c : r.counts) {
    counts.push_back(Json{{"convention", c.convention.name()},
                          {"include_degenerate", c.convention.include_degenerate},
                          {"include_equal", c.convention.include_equal},
                          {"distinct_values", c.convention.distinct_values},
                          {"count", c.count}});
  }
  return Json{{"max_n", r.max_n},
              {"solutions", sols},
              {"counts", counts},
              {"expected", r.expected},
              {"matching_convention", r.matching ? Json(r.matching->name()) : Json(nullptr)},
              {"parity_holds", r.parity_holds},
              {"power_side_bound_holds", r.power_side_bound_holds},
              {"violations", r.violations}};
}

std::string format_human(const FinalBound& fb, bool full) {
  std::ostringstream out;
  out << "k = " << fb.k << "    log10(n_bound) = " << fb.log10_n_bound.midpoint_string(8) << "\n";
  out << "  method: " << fb.method_used;
  if (fb.method == FinishMethod::closed_form) out << " (delta = " << rational_string(fb.delta) << ")";
  out << ", iterations: " << fb.iterations << ", certified: " << (fb.certified ? "yes" : "no")
      << ", tight: " << (fb.tight ? "yes" : "no") << "\n";
  out << "  walks:\n";
  for (const auto& cand : fb.paths.candidates) {
    out << "    " << std::left << std::setw(8) << cand.label << cand.bound.to_string() << "\n";
  }
  out << "  n_1 <= " << fb.chosen.to_string() << "\n";
  out << "  n < 6e29 * T^4 = " << BoundExpr{fb.rhs_c, fb.rhs_x}.to_string() << "\n";
  out << "  log(y^a) <= " << fb.log_ya_bound.midpoint_string(8) << "\n";
  if (full && fb.n_bound) out << "  n_bound = " << fb.n_bound->get_str() << "\n";
  return out.str();
}

std::string format_human(const CensusReport& r) {
  std::ostringstream out;
  out << "solutions with max_n = " << r.max_n << ":\n";
  for (const auto& s : r.solutions) {
    out << "  F_" << s.n << " + F_" << s.m << " = " << s.value.get_str() << " = " << s.y.get_str()
        << "^" << s.a << "\n";
  }
  out << "convention counts (expected " << r.expected << "):\n";
  for (const auto& c : r.counts) {
    out << "  " << std::left << std::setw(44) << c.convention.name() << c.count << "\n";
  }
  out << "matching convention: " << (r.matching ? r.matching->name() : std::string("none")) << "\n";
  out << "parity check (n = m mod 2 implies n <= 36): " << (r.parity_holds ? "holds" : "FAILS")
      << "\n";
  out << "power-side check (a < n < 6e29 (log y)^4): "
      << (r.power_side_bound_holds ? "holds" : "FAILS") << "\n";
  for (const auto& v : r.violations) out << "  violation: " << v << "\n";
  return out.str();
}

Instance parse_instance(const Json& line) {
  if (!line.is_object()) throw std::invalid_argument("instance must be a JSON object");
  auto big = [](const Json& v) {
    if (v.is_string()) return BigInt(v.get<std::string>(), 10);
    if (v.is_number_integer()) return BigInt(v.get<long>());
    throw std::invalid_argument("expected an integer or a decimal string");
  };
  std::optional<BigInt> y;
  std::optional<ZeckendorfRep> rep;
  if (line.contains("y")) y = big(line.at("y"));
  if (line.contains("indices")) rep = ZeckendorfRep(line.at("indices").get<std::vector<unsigned>>());
  if (!y && !rep) throw std::invalid_argument("instance needs y or indices");
  if (!y) y = rep->decode();
  if (!rep) rep = zeckendorf(*y);
  const bool power = line.contains("a") || line.contains("n") || line.contains("m");
  if (!power) return Instance(*y, *rep);
  if (!(line.contains("a") && line.contains("n") && line.contains("m"))) {
    throw std::invalid_argument("the power side needs all of a, n, m");
  }
  return Instance(*y, *rep, line.at("a").get<long>(), line.at("n").get<unsigned>(),
                  line.at("m").get<unsigned>());
}

BatchSummary run_linform_batch(std::istream& in, std::ostream& out, Precision p, Precision cap) {
  BatchSummary summary;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Instance inst = parse_instance(Json::parse(text));
    ++summary.instances;
    std::vector<LinearFormValue> forms = basic_forms(inst, p, cap);
    if (inst.has_power_side()) {
      auto more = eliminated_forms(inst, p, cap);
      forms.insert(forms.end(), more.begin(), more.end());
    }
    for (const auto& f : forms) {
      Json row = to_json(f);
      row["line"] = line_no;
      row["y"] = inst.y().get_str();
      out << row.dump() << "\n";
      ++summary.forms;
      if (f.applicable && f.verdict == Decision::no) ++summary.failed;
      if (f.applicable && f.verdict == Decision::undecided) ++summary.undecided;
    }
  }
  return summary;
}

void write_csv(std::ostream& out, const std::vector<Solution>& sols) {
  out << "n,m,y,a,value,k,parity\n";
  for (const auto& s : sols) {
    const Json j = to_json(s);
    out << s.n << ',' << s.m << ',' << s.y.get_str() << ',' << s.a << ',' << s.value.get_str()
        << ',' << j["k"].get<std::size_t>() << ',' << j["parity"].get<std::string>() << "\n";
  }
}

void write_jsonl(std::ostream& out, const std::vector<Solution>& sols) {
  for (const auto& s : sols) out << to_json(s).dump() << "\n";
}

}  // namespace zeckpow
