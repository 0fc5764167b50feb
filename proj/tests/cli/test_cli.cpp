#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace gausseig::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json doc_of(const std::vector<std::string>& args) {
  const auto r = call(args);
  REQUIRE(r.code == kExitOk);
  return json::parse(r.out);
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "gausseig_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("documents round-trip and match the schema") {
  const std::vector<std::vector<std::string>> commands = {
      {"eig1d", "--a", "-8", "--b", "8", "--count", "3"},
      {"eig1d", "--a=-inf", "--b", "0.4", "--bc", "dirichlet"},
      {"radial", "--N", "3", "--R", "inf", "--count", "2"},
      {"ball", "--N", "2", "--R", "1.2"},
      {"bounds", "--N", "2", "--R", "inf"},
      {"lemma", "--N", "2", "--R", "2.5"},
      {"slide", "--L", "0.3", "--slide-points", "10"},
      {"shape-deriv", "--a", "-0.2", "--b", "1.1"},
      {"weinberger", "--shape", "square", "--measure", "0.4"},
      {"counterexample", "--deltas", "0.2", "--cells", "20,40"},
  };
  for (const auto& args : commands) {
    CAPTURE(args[0]);
    const auto d = doc_of(args);
    CHECK(schema_errors(d).empty());
    CHECK(d["command"] == args[0]);
    CHECK(json::parse(d.dump()) == d);
    CHECK(json::parse(d.dump(2)) == d);
  }
}

TEST_CASE("example commands") {
  auto d = doc_of({"eig1d", "--a", "0.7420", "--b", "2.3344", "--bc", "neumann", "--count", "2"});
  CHECK(std::abs(d["results"][1]["value"].get<double>() - 5.0) < 1e-3);
  d = doc_of({"bounds", "--N", "2", "--R", "1"});
  CHECK(std::abs(d["results"][0]["k"].get<double>() - 4.362) < 5e-4);
  d = doc_of({"eig1d", "--a", "-8", "--b", "8", "--count", "3"});
  for (int n = 0; n < 3; ++n) CHECK(std::abs(d["results"][n]["value"].get<double>() - n) < 1e-6);
  // infinite ends travel as strings
  d = doc_of({"bounds", "--R", "inf"});
  CHECK(d["results"][0]["R"] == "inf");
  CHECK(d["results"][0]["k"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("schema violations are reported") {
  const auto good = doc_of({"bounds", "--N", "2", "--R", "1"});
  REQUIRE(schema_errors(good).empty());
  auto bad = good;
  bad.erase("checks");
  CHECK(!schema_errors(bad).empty());
  bad = good;
  bad["command"] = "plot";
  CHECK(!schema_errors(bad).empty());
  bad = good;
  bad["config"]["tol"] = 0.5;
  CHECK(!schema_errors(bad).empty());
  bad = good;
  bad["results"].push_back({{"nested", {1, 2}}});
  CHECK(!schema_errors(bad).empty());
  bad = good;
  bad["checks"].push_back({{"name", "x"}, {"pass", true}, {"lhs", "one"}, {"rhs", 1.0}, {"slack", 0.0}});
  CHECK(!schema_errors(bad).empty());
  bad = good;
  bad["extra"] = 1;
  CHECK(!schema_errors(bad).empty());
  CHECK(!schema_errors(json::array()).empty());
}

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.tol = 1e-14;
  CHECK_THROWS(c.validate());
  c.tol = 1e-2;
  CHECK_THROWS(c.validate());
  c = {};
  c.parallelism = 0;
  CHECK_THROWS(c.validate());
  CHECK_THROWS(from_json(json{{"colour", "red"}}));
  CHECK_THROWS(from_json(json{{"format", "xml"}}));
  CHECK_THROWS(from_json(json{{"parallelism", -1}}));
  const auto r = from_json(json{{"tol", 1e-8}, {"format", "csv"}, {"seed", 7}});
  CHECK(r.tol == 1e-8);
  CHECK(r.format == Format::csv);
  CHECK(r.seed == 7);
  CHECK(r.samples == RunConfig{}.samples);
  // to_json and from_json are inverse
  const auto back = from_json(to_json(r));
  CHECK(to_json(back) == to_json(r));
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == kExitUsage);
  CHECK(call({"plot"}).code == kExitUsage);
  CHECK(call({"eig1d", "--bc", "robin"}).code == kExitUsage);
  CHECK(call({"eig1d", "--a", "two"}).code == kExitUsage);
  CHECK(call({"eig1d", "--a", "2", "--b", "1"}).code == kExitUsage);
  CHECK(call({"eig1d", "--tol", "0.5"}).code == kExitUsage);
  CHECK(call({"eig1d", "-j", "0"}).code == kExitUsage);
  CHECK(call({"--help"}).code == kExitOk);
  // h(Rbar) and k(Rbar) do not match their printed values
  const auto r = call({"verify-all", "--criterion", "5"});
  CHECK(r.code == kExitFailed);
  const auto d = json::parse(r.out);
  CHECK(schema_errors(d).empty());
  CHECK(d["results"][0]["pass"] == false);
  CHECK(call({"verify-all", "--criterion", "4"}).code == kExitOk);
}

TEST_CASE("config file and environment override") {
  const auto path = scratch("cfg.json");
  {
    std::ofstream f(path);
    f << R"({"tol": 1e-7, "seed": 11, "format": "json"})";
  }
  auto d = doc_of({"--config", path.string(), "bounds"});
  CHECK(d["config"]["tol"] == 1e-7);
  CHECK(d["config"]["seed"] == 11);
  // flags win over the file
  d = doc_of({"--config", path.string(), "--tol", "1e-10", "bounds"});
  CHECK(d["config"]["tol"] == 1e-10);

  ::setenv("GAUSSEIG_CONFIG", path.string().c_str(), 1);
  CHECK(default_config_path() == path.string());
  d = doc_of({"bounds"});
  CHECK(d["config"]["seed"] == 11);
  ::setenv("GAUSSEIG_CONFIG", scratch("missing.json").string().c_str(), 1);
  CHECK(call({"bounds"}).code == kExitUsage);
  ::unsetenv("GAUSSEIG_CONFIG");
  CHECK(default_config_path() == "gausseig.json");

  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK(call({"--config", path.string(), "bounds"}).code == kExitUsage);
}

TEST_CASE("csv output and --out") {
  const auto path = scratch("eig.csv");
  fs::remove(path);
  const auto r = call({"eig1d", "--a", "-1", "--b", "1", "--count", "3", "--format", "csv", "--out", path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string text((std::istreambuf_iterator<char>(f)), {});
  CHECK(text.rfind("index,value,nodes\r\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);

  // RFC-4180 quoting of commas and quotes
  json doc = {{"results", json::array({{{"name", "a,b"}, {"q", "say \"hi\""}}, {{"name", "plain"}}})}};
  CHECK(to_csv(doc) == "name,q\r\n\"a,b\",\"say \"\"hi\"\"\"\r\nplain,\r\n");
}

TEST_CASE("deterministic output for a fixed seed") {
  const auto a = call({"rearrange-check", "--seed", "5"});
  const auto b = call({"rearrange-check", "--seed", "5"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(schema_errors(json::parse(a.out)).empty());
}
