#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wicklab/cli_docs.h"
#include "wicklab/errors.h"
#include "wicklab/quantize.h"

using namespace wicklab;

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("wicklab_test_" + name)).string();
}

std::string write_tmp(const std::string& name, const std::string& text) {
  const auto p = tmp_path(name);
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "wicklab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("minimal config picks up built-ins") {
  const auto p = write_tmp("min.json", R"({"schema": 1, "experiment": "hs-bound"})");
  const auto c = load_config(p);
  CHECK(*c.rho == 0.5);
  CHECK(*c.n == NRange{1, 6});
}

TEST_CASE("config layering and rejection") {
  const Json doc = Json::parse(R"({"schema": 1, "experiment": "hs-bound", "rho": 0.4,
                                   "defaults": {"n": "1..3", "rho": 0.2, "tol": 1e-7}})");
  const auto c = parse_config(doc);
  CHECK(*c.rho == 0.4);
  CHECK(*c.n == NRange{1, 3});
  CHECK(*c.tol == 1e-7);
  CHECK_FALSE(c.degree.has_value());

  try {
    parse_config(Json::parse(R"({"schema": 1, "rho_max": 2})"));
    FAIL("rho_max accepted");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("rho_max") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"experiment": "zones"})")), UsageError);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"schema": 2})")), UsageError);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"schema": 1, "rho": "big"})")), UsageError);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"schema": 1, "defaults": {"bogus": 1}})")), UsageError);
  CHECK_THROWS_AS(load_config(write_tmp("bad.json", "{not json")), UsageError);
}

TEST_CASE("config round trip") {
  auto c = resolve_defaults(parse_config(Json::parse(R"({"schema": 1, "experiment": "garding", "k": 1})")));
  const auto back = resolve_defaults(parse_config(serialize_config(c)));
  CHECK(back == c);
  auto z = resolve_defaults(parse_config(Json::parse(R"({"schema": 1, "experiment": "zones", "Lambda": 4, "d": 9})")));
  CHECK(resolve_defaults(parse_config(serialize_config(z))) == z);
}

TEST_CASE("operator serialization") {
  const TruncationParams p{1, 3};
  const auto q = wick_quantize(parse_symbol("1*z^[1]*zbar^[1]", 1), p);
  const auto j = operator_to_json(q, Exactness{}, "test");
  CHECK(j["dim"] == 4);
  CHECK(j["matrix"].size() == 4);
  CHECK(j["matrix"][2][2][0].get<double>() == doctest::Approx(2.0));
  CHECK(j["basis"][3][0] == 3);
}

TEST_CASE("reproduction index") {
  CHECK(repro_rows().size() == 15);
  const auto idx = repro_index();
  CHECK(idx.find("wicklab experiment hs-bound") != std::string::npos);
  CHECK(idx.find("wicklab experiment variance") != std::string::npos);
  int lines = 0;
  for (char ch : idx) lines += ch == '\n';
  CHECK(lines == 17);
}

TEST_CASE("cli exit codes and outputs") {
  CHECK(cli({"experiment", "nope"}) == 1);
  CHECK(cli({"experiment", "hs-bound", "--n", "0..3"}) == 1);
  CHECK(cli({"experiment", "hs-bound", "--config", tmp_path("missing.json")}) == 1);

  const auto out = tmp_path("var.json");
  CHECK(cli({"experiment", "variance", "--lambda", "1,2,3", "--out", out}) == 0);
  const auto j = Json::parse(slurp(out));
  CHECK(j["rows"][0]["measured"].get<double>() == doctest::Approx(14.0));

  const auto g = tmp_path("g.json");
  CHECK(cli({"experiment", "garding", "--k", "1", "--n", "1..2", "--out", g}) == 0);
  CHECK(Json::parse(slurp(g))["rows"].size() == 2);

  // Flags beat the config file.
  const auto cfg = write_tmp("prec.json", R"({"schema": 1, "experiment": "hs-bound", "rho": 0.4, "n": "1..2"})");
  const auto hs = tmp_path("hs.json");
  CHECK(cli({"experiment", "hs-bound", "--config", cfg, "--rho", "0.3", "--out", hs}) == 0);
  const auto hj = Json::parse(slurp(hs));
  CHECK(hj["config"]["rho"].get<double>() == 0.3);
  CHECK(hj["rows"].size() == 2);

  const auto csv = tmp_path("sweep.csv");
  CHECK(cli({"sweep", "hs-bound", "--n", "1..3", "--out", csv}) == 0);
  CHECK(slurp(csv).rfind("n,measured,bound,pass\n", 0) == 0);

  CHECK(cli({"basis", "--n", "12", "--degree", "400"}) == 3);
  CHECK(cli({"translate", "--point", "3", "--degree", "10"}) == 3);
}
