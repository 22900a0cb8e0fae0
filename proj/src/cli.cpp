#include "zeckpow/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <future>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "zeckpow/bounds.hpp"
#include "zeckpow/report.hpp"
#include "zeckpow/search.hpp"
#include "zeckpow/verify.hpp"

namespace zeckpow {

std::vector<unsigned> parse_k_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6) {
      throw std::invalid_argument("bad k value: '" + text + "'");
    }
    const unsigned v = static_cast<unsigned>(std::stoul(s));
    if (v == 0) throw std::invalid_argument("k must be >= 1");
    return v;
  };
  std::set<unsigned> ks;
  std::stringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      ks.insert(number(part));
      continue;
    }
    const unsigned lo = number(part.substr(0, dots));
    const unsigned hi = number(part.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("empty k range: '" + part + "'");
    for (unsigned k = lo; k <= hi; ++k) ks.insert(k);
  }
  if (ks.empty()) throw std::invalid_argument("no k given");
  return {ks.begin(), ks.end()};
}

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  Precision precision = 128;
  Precision precision_cap = kPrecisionCap;
  std::string out_path;
  std::string format = "human";
  bool no_timestamp = false;
  unsigned threads = 1;
  std::string config;

  void validate() const {
    if (precision < 32) throw ConfigError("--precision must be at least 32 bits");
    if (precision_cap < precision) throw ConfigError("--precision-cap must be >= --precision");
    if (threads == 0) throw ConfigError("--threads must be >= 1");
  }
};

void add_common(CLI::App* sub, Common& c, std::vector<std::string> formats) {
  sub->add_option("--precision", c.precision, "starting precision in bits")->capture_default_str();
  sub->add_option("--precision-cap", c.precision_cap, "largest precision tried")->capture_default_str();
  sub->add_option("--out", c.out_path, "write the report to this file");
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember(std::move(formats)))
      ->capture_default_str();
  sub->add_flag("--no-timestamp", c.no_timestamp, "omit the timestamp header");
  sub->add_option("--threads", c.threads, "worker threads")->capture_default_str();
  sub->add_option("--config", c.config, "key=value file; flags take precedence");
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Writes to --out when given, else to the default stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void header(std::ostream& out, const Common& c, const std::string& command) {
  if (!c.no_timestamp && c.format == "human") out << "# zeckpow " << command << " " << timestamp() << "\n";
}

Json envelope(const Common& c, const std::string& command) {
  Json j;
  if (!c.no_timestamp) j["generated_at"] = timestamp();
  j["command"] = command;
  return j;
}

// ---- bound -------------------------------------------------------------

struct BoundArgs {
  std::string k = "1";
  std::string method = "iteration";
  std::string delta = "1/2";
  bool full = false;
};

int cmd_bound(const BoundArgs& a, const Common& c, std::ostream& out_default) {
  const std::vector<unsigned> ks = [&] {
    try {
      return parse_k_range(a.k);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  BigRational delta;
  try {
    delta = parse_rational(a.delta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (sgn(delta) <= 0 || delta >= 1) throw ConfigError("--delta must lie in (0, 1)");
  std::vector<FinishMethod> methods;
  if (a.method == "iteration" || a.method == "both") methods.push_back(FinishMethod::iteration);
  if (a.method == "lemma10" || a.method == "closed-form" || a.method == "both") {
    methods.push_back(FinishMethod::closed_form);
  }

  std::vector<std::pair<unsigned, FinishMethod>> jobs;
  for (unsigned k : ks) {
    for (FinishMethod m : methods) jobs.emplace_back(k, m);
  }
  std::vector<FinalBound> results(jobs.size());
  auto run = [&](std::size_t i) { results[i] = finish(jobs[i].first, jobs[i].second, delta, c.precision); };
  if (c.threads <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run(i);
  } else {
    for (std::size_t base = 0; base < jobs.size(); base += c.threads) {
      std::vector<std::future<void>> batch;
      for (std::size_t i = base; i < std::min(jobs.size(), base + c.threads); ++i) {
        batch.push_back(std::async(std::launch::async, run, i));
      }
      for (auto& f : batch) f.get();
    }
  }

  Sink sink(c.out_path, out_default);
  std::ostream& out = *sink;
  if (c.format == "json") {
    Json j = envelope(c, "bound");
    j["results"] = Json::array();
    for (const auto& r : results) j["results"].push_back(to_json(r));
    out << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "k,method,log10_n_bound,x_final,certified,tight,n_bound\n";
    for (const auto& r : results) {
      out << r.k << ',' << r.method_used << ',' << r.log10_n_bound.midpoint_string(8) << ',' << r.rhs_x
          << ',' << r.certified << ',' << r.tight << ',' << (a.full && r.n_bound ? r.n_bound->get_str() : "")
          << "\n";
    }
  } else {
    header(out, c, "bound");
    for (const auto& r : results) out << format_human(r, a.full);
  }
  const bool uncertified = std::any_of(results.begin(), results.end(), [](const FinalBound& r) {
    return r.method == FinishMethod::iteration && !r.certified;
  });
  return uncertified ? kExitUndecided : kExitOk;
}

// ---- search ------------------------------------------------------------

struct SearchArgs {
  unsigned max_n = 200;
  bool oracle = false;
  std::string checkpoint;
};

int cmd_search(const SearchArgs& a, const Common& c, std::ostream& out_default, std::ostream& err) {
  SearchOptions opts;
  opts.threads = c.threads;
  if (!a.checkpoint.empty()) opts.checkpoint = a.checkpoint;

  std::optional<CensusReport> census;
  std::vector<Solution> sols;
  if (a.max_n >= 36) {
    census = census_check(a.max_n, opts);
    sols = census->solutions;
  } else {
    sols = enumerate(a.max_n, opts);
  }
  std::optional<bool> agrees;
  if (a.oracle) {
    if (a.max_n > 40) err << "note: the exhaustive oracle is slow beyond max_n = 40\n";
    agrees = enumerate_exhaustive(a.max_n) == sols;
  }

  Sink sink(c.out_path, out_default);
  std::ostream& out = *sink;
  if (c.format == "csv") {
    write_csv(out, sols);
  } else if (c.format == "jsonl") {
    write_jsonl(out, sols);
  } else if (c.format == "json") {
    Json j = envelope(c, "search");
    j["max_n"] = a.max_n;
    j["solutions"] = Json::array();
    for (const auto& s : sols) j["solutions"].push_back(to_json(s));
    j["census"] = census ? to_json(*census) : Json(nullptr);
    j["oracle_agrees"] = agrees ? Json(*agrees) : Json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    header(out, c, "search");
    if (census) {
      out << format_human(*census);
    } else {
      out << "solutions with max_n = " << a.max_n << ":\n";
      for (const auto& s : sols) {
        out << "  F_" << s.n << " + F_" << s.m << " = " << s.value.get_str() << " = " << s.y.get_str()
            << "^" << s.a << "\n";
      }
    }
    if (agrees) out << "exhaustive oracle: " << (*agrees ? "identical list" : "MISMATCH") << "\n";
  }
  const bool failed = (agrees && !*agrees) ||
                      (census && (!census->parity_holds || !census->power_side_bound_holds));
  return failed ? kExitVerificationFailure : kExitOk;
}

// ---- verify ------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> only;
  std::uint64_t max_x = 100000;
  unsigned max_y = 10000;
  unsigned max_n = 200;
  unsigned samples = 10000;
  std::uint64_t seed = 20240601;
  std::string step_constant;
  bool timings = false;
  bool list = false;
};

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out_default) {
  Sink sink(c.out_path, out_default);
  std::ostream& out = *sink;
  if (a.list) {
    for (const auto& s : list_suites()) {
      out << std::left << std::setw(28) << s.id << std::setw(9) << s.alias << s.description << "\n";
    }
    return kExitOk;
  }
  VerifyOptions opt;
  for (const auto& item : a.only) {
    std::stringstream parts(item);
    std::string name;
    while (std::getline(parts, name, ',')) {
      if (!name.empty()) opt.only.insert(name);
    }
  }
  const std::set<std::string> known = [] {
    std::set<std::string> names;
    for (const auto& s : list_suites()) {
      names.insert(s.id);
      if (!s.alias.empty()) names.insert(s.alias);
    }
    return names;
  }();
  for (const auto& name : opt.only) {
    if (!known.count(name)) throw ConfigError("unknown suite '" + name + "' (see verify --list)");
  }
  opt.max_x = a.max_x;
  opt.max_y = a.max_y;
  opt.max_n = a.max_n;
  opt.samples = a.samples;
  opt.seed = a.seed;
  opt.precision = c.precision;
  opt.precision_cap = c.precision_cap;
  if (!a.step_constant.empty()) {
    try {
      opt.step_constant_override = parse_rational(a.step_constant);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  const bool human = c.format == "human";
  if (human) header(out, c, "verify");
  const auto results = run_verify(opt, [&](const SuiteResult& r) {
    if (!human) return;
    out << std::left << std::setw(10) << to_string(r.status) << std::setw(28) << r.id << std::setw(9)
        << (r.alias.empty() ? "" : r.alias) << r.checks << " checks";
    if (a.timings) out << "  " << std::fixed << std::setprecision(2) << r.seconds << " s";
    out << "\n";
    for (const auto& f : r.failures) out << "    " << f << "\n";
    out.flush();
  });
  const int code = exit_code(results);
  if (c.format == "json") {
    Json j = envelope(c, "verify");
    j["suites"] = Json::array();
    for (const auto& r : results) {
      Json s{{"id", r.id},
             {"alias", r.alias},
             {"description", r.description},
             {"status", to_string(r.status)},
             {"checks", r.checks},
             {"failures", r.failures}};
      if (a.timings) s["seconds"] = r.seconds;
      j["suites"].push_back(s);
    }
    j["exit_code"] = code;
    out << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "id,alias,status,checks\n";
    for (const auto& r : results) out << r.id << ',' << r.alias << ',' << to_string(r.status) << ',' << r.checks << "\n";
  } else {
    out << (code == kExitOk ? "all suites pass" : code == kExitUndecided ? "undecided at the precision cap"
                                                                         : "verification FAILED")
        << "\n";
  }
  return code;
}

// ---- linform -----------------------------------------------------------

struct LinformArgs {
  std::string input;
};

int cmd_linform(const LinformArgs& a, const Common& c, std::istream& in_default, std::ostream& out_default,
                std::ostream& err) {
  std::ifstream file;
  std::istream* in = &in_default;
  if (!a.input.empty() && a.input != "-") {
    file.open(a.input);
    if (!file) throw ConfigError("cannot open input file " + a.input);
    in = &file;
  }
  Sink sink(c.out_path, out_default);
  BatchSummary summary;
  try {
    summary = run_linform_batch(*in, *sink, c.precision, c.precision_cap);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed input: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid instance: ") + e.what());
  }
  err << summary.instances << " instances, " << summary.forms << " forms, " << summary.failed
      << " violated, " << summary.undecided << " undecided\n";
  if (summary.failed) return kExitVerificationFailure;
  return summary.undecided ? kExitUndecided : kExitOk;
}

// Splices key=value lines from --config in right after the subcommand, so
// that later command-line flags override them.
std::vector<std::string> splice_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot read config file " + path);
  std::vector<std::string> injected;
  std::string line;
  while (std::getline(file, line)) {
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line without '=': " + line);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\"");
      const auto e = s.find_last_not_of(" \t\"");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    if (key == "config") continue;
    injected.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
  }
  std::vector<std::string> out{args.front()};
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds, search and verification for perfect powers F_n + F_m = y^a", "zeckpow"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common common;
  BoundArgs bound_args;
  SearchArgs search_args;
  VerifyArgs verify_args;
  LinformArgs linform_args;

  auto* bound = app.add_subcommand("bound", "concrete upper bound on n for Zeckendorf weight k");
  bound->add_option("--k", bound_args.k, "k, a range 1..4, or a list 1,3")->capture_default_str();
  bound->add_option("--method", bound_args.method, "fixed-point iteration, the closed form, or both")
      ->check(CLI::IsMember({"iteration", "lemma10", "closed-form", "both"}))
      ->capture_default_str();
  bound->add_option("--delta", bound_args.delta, "closed-form parameter in (0, 1)")->capture_default_str();
  bound->add_flag("--full", bound_args.full, "print the full decimal bound");
  add_common(bound, common, {"human", "json", "csv"});

  auto* search = app.add_subcommand("search", "enumerate F_n + F_m = y^a for n <= max_n");
  search->add_option("--max-n", search_args.max_n, "largest n")->capture_default_str();
  search->add_flag("--oracle", search_args.oracle, "cross-check against exhaustive search");
  search->add_option("--checkpoint", search_args.checkpoint, "resume file for completed shards");
  add_common(search, common, {"human", "json", "jsonl", "csv"});

  auto* verify = app.add_subcommand("verify", "run the invariant battery");
  verify->add_option("--only", verify_args.only, "suite ids or aliases, comma separated");
  verify->add_option("--max-x", verify_args.max_x, "Lucas mod 5 range")->capture_default_str();
  verify->add_option("--max-y", verify_args.max_y, "Zeckendorf-side range")->capture_default_str();
  verify->add_option("--max-n", verify_args.max_n, "census range")->capture_default_str();
  verify->add_option("--samples", verify_args.samples, "closed-form implication triples")->capture_default_str();
  verify->add_option("--seed", verify_args.seed, "random seed")->capture_default_str();
  verify->add_option("--step-constant", verify_args.step_constant, "replace the step constant C");
  verify->add_flag("--timings", verify_args.timings, "report per-suite run time");
  verify->add_flag("--list", verify_args.list, "list the suites and exit");
  add_common(verify, common, {"human", "json", "csv"});
  // --only takes several values and may repeat
  verify->get_option("--only")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* linform = app.add_subcommand("linform", "evaluate linear forms for JSON-lines instances");
  linform->add_option("--input", linform_args.input, "input file (default stdin)");
  add_common(linform, common, {"jsonl", "json", "human"});

  try {
    std::vector<std::string> argv = splice_config(args);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
    common.validate();
    if (*linform && common.format != "jsonl") common.format = "jsonl";
    if (*bound) return cmd_bound(bound_args, common, out);
    if (*search) return cmd_search(search_args, common, out, err);
    if (*verify) return cmd_verify(verify_args, common, out);
    return cmd_linform(linform_args, common, in, out, err);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) err << sub->help();
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace zeckpow
