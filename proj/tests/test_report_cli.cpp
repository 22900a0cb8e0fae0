#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "zeckpow/cli.hpp"
#include "zeckpow/report.hpp"

using namespace zeckpow;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<Json> json_lines(const std::string& text) {
  std::vector<Json> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) rows.push_back(Json::parse(line));
  return rows;
}

}  // namespace

TEST_CASE("k ranges") {
  CHECK(parse_k_range("3") == std::vector<unsigned>{3});
  CHECK(parse_k_range("1..4") == std::vector<unsigned>{1, 2, 3, 4});
  CHECK(parse_k_range("5,1,2,1") == std::vector<unsigned>{1, 2, 5});
  CHECK_THROWS_AS(parse_k_range("0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_k_range("4..2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_k_range("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_k_range(""), std::invalid_argument);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/2") == BigRational(1, 2));
  CHECK(parse_rational("2/4") == BigRational(1, 2));
  CHECK(parse_rational("0.25") == BigRational(1, 4));
  CHECK(parse_rational("-1.5") == BigRational(-3, 2));
  CHECK(parse_rational("2.0e15") == BigRational(BigInt("2000000000000000")));
  CHECK(parse_rational("5e-1") == BigRational(1, 2));
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("010") == 10);
  CHECK(parse_rational("0.010") == BigRational(1, 100));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e99999"), std::invalid_argument);
}

TEST_CASE("instance parsing") {
  const Instance a = parse_instance(Json::parse(R"({"y": 3864, "a": 2, "n": 36, "m": 12})"));
  CHECK(a.has_power_side());
  CHECK(a.k() == 5);
  const Instance b = parse_instance(Json::parse(R"({"indices": [10]})"));
  CHECK(b.y() == 55);
  const Instance c = parse_instance(Json::parse(R"({"y": "144"})"));
  CHECK(c.k() == 1);
  CHECK_THROWS_AS(parse_instance(Json::parse(R"({"a": 2})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance(Json::parse(R"({"y": 3864, "a": 2})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance(Json::parse(R"({"y": 56, "indices": [10]})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance(Json::parse("[1]")), std::invalid_argument);
}

TEST_CASE("bound report fields") {
  const Run r = cli({"bound", "--k", "1", "--format", "json", "--no-timestamp"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK_FALSE(j.contains("generated_at"));
  REQUIRE(j["results"].size() == 1);
  const Json& b = j["results"][0];
  for (const char* key : {"k", "method", "method_used", "paths", "chosen", "c_final", "x_final",
                          "n_bound", "log10_n_bound", "log10_n_bound_enclosure", "log_ya_bound",
                          "iterations", "certified", "tight", "simplified_n1_bound", "trace"}) {
    CHECK_MESSAGE(b.contains(key), key);
  }
  CHECK(b["certified"] == true);
  CHECK(std::fabs(b["log10_n_bound"].get<double>() - 173.161237) < 5e-7);
  CHECK(cli({"bound", "--k", "1", "--format", "json"}).out.find("generated_at") != std::string::npos);
}

TEST_CASE("output is deterministic without a timestamp") {
  const std::vector<std::string> args{"bound", "--k", "1..2", "--method", "both", "--no-timestamp"};
  const Run a = cli(args);
  const Run b = cli(args);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# zeckpow") == std::string::npos);
  const Run csv = cli({"bound", "--k", "1", "--format", "csv", "--no-timestamp"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out.rfind("k,", 0) == 0);
}

TEST_CASE("search output") {
  const Run r = cli({"search", "--max-n", "60", "--format", "jsonl", "--no-timestamp"});
  REQUIRE(r.code == kExitOk);
  bool found = false;
  for (const Json& row : json_lines(r.out)) {
    if (row.contains("n") && row["n"] == 36 && row["m"] == 12) {
      found = row["y"] == "3864" && row["a"] == 2;
    }
  }
  CHECK(found);
  const Run oracle = cli({"search", "--max-n", "25", "--oracle", "--format", "json", "--no-timestamp"});
  CHECK(oracle.code == kExitOk);
  CHECK(Json::parse(oracle.out)["oracle_agrees"] == true);
  const Run csv = cli({"search", "--max-n", "20", "--format", "csv"});
  CHECK(csv.out.rfind("n,m,y,a,value,k,parity", 0) == 0);
  const Run json = cli({"search", "--max-n", "60", "--format", "json", "--no-timestamp"});
  const Json j = Json::parse(json.out);
  CHECK(j["census"]["matching_convention"] == "y>=0,n>=m,pairs");
}

TEST_CASE("verify exit codes") {
  CHECK(cli({"verify", "--only", "step-constant"}).code == kExitOk);
  CHECK(cli({"verify", "--only", "lemma9", "--max-x", "2000"}).code == kExitOk);
  const Run bad = cli({"verify", "--only", "step-constant", "--step-constant", "2.0e15"});
  CHECK(bad.code == kExitVerificationFailure);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  CHECK(cli({"verify", "--only", "no-such-suite"}).code == kExitConfigError);
  const Run list = cli({"verify", "--list"});
  CHECK(list.code == kExitOk);
  CHECK(list.out.find("closed-form-implication") != std::string::npos);
}

TEST_CASE("argument errors exit with the configuration code") {
  CHECK(cli({}).code == kExitConfigError);
  CHECK(cli({"bound", "--k", "zero"}).code == kExitConfigError);
  CHECK(cli({"bound", "--method", "guess"}).code == kExitConfigError);
  CHECK(cli({"bound", "--delta", "2"}).code == kExitConfigError);
  CHECK(cli({"search", "--format", "xml"}).code == kExitConfigError);
  CHECK(cli({"bound", "--config", "/nonexistent/zeckpow.conf"}).code == kExitConfigError);
  CHECK(cli({"bound", "--help"}).code == kExitOk);
}

TEST_CASE("config files sit below command-line flags") {
  const auto path = std::filesystem::temp_directory_path() / "zeckpow_test.conf";
  std::ofstream(path) << "# defaults\nk = 2\nformat = json\nno-timestamp = true\n";
  const Run from_file = cli({"bound", "--config", path.string()});
  REQUIRE(from_file.code == kExitOk);
  CHECK(Json::parse(from_file.out)["results"][0]["k"] == 2);
  const Run overridden = cli({"bound", "--config", path.string(), "--k", "1"});
  REQUIRE(overridden.code == kExitOk);
  CHECK(Json::parse(overridden.out)["results"][0]["k"] == 1);
  std::ofstream(path) << "no equals sign\n";
  CHECK(cli({"bound", "--config", path.string()}).code == kExitConfigError);
  std::filesystem::remove(path);
}

TEST_CASE("linear form batches") {
  const Run ok = cli({"linform"}, "{\"y\": 3864, \"a\": 2, \"n\": 36, \"m\": 12}\n\n{\"y\": 55}\n");
  CHECK(ok.code == kExitOk);
  const auto rows = json_lines(ok.out);
  CHECK(rows.size() == 18);
  CHECK(rows.back()["line"] == 3);
  CHECK(rows.back()["tag"] == "A1");
  CHECK(rows.back()["verdict"] == "true");
  for (const Json& row : rows) CHECK(row["verdict"] != "false");
  CHECK(cli({"linform"}, "{\"y\": 3864, \"a\": 2}\n").code == kExitConfigError);
  CHECK(cli({"linform"}, "not json\n").code == kExitConfigError);
}
