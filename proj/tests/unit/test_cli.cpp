#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "config.hpp"
#include "greenfield/errors.hpp"

using namespace greenfield;
using greenfield::cli::Json;

namespace {

const std::string kDir = GREENFIELD_CONFIG_DIR;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "greenfield");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("greenfield_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(Cli, ResultantPrintsExactRational) {
  const Result r = run({"resultant", kDir + "/power.json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1\n");
  const std::string two = temp_file("two.json", R"({"N": 1, "d": 2, "forms": ["2*x^2", "3*y^2 + x*y"]})");
  const Result j = run({"resultant", two, "--format", "json"});
  EXPECT_EQ(Json::parse(j.out)["resultant"], "36");
}

TEST(Cli, HeightOfTwo) {
  const Result r = run({"height", kDir + "/power.json", "--point", "2,1", "--tol", "1e-9"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], "greenfield-report/1");
  EXPECT_NEAR(j["value"].get<double>(), std::log(2.0), 1e-12);
}

TEST(Cli, SelftestPasses) {
  const Result r = run({"selftest"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(Json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, ParseErrorsExitTwo) {
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"height", kDir + "/power.json"}).code, 2);  // --point missing
  EXPECT_EQ(run({"height", kDir + "/power.json", "--point", "2,x"}).code, 2);
  EXPECT_EQ(run({"basis", kDir + "/power.json", "--n", "3,a"}).code, 2);
  EXPECT_EQ(run({"green", kDir + "/power.json", "--n", "1", "--points", "1,1;0,1", "--convention", "weird"}).code, 2);
  const std::string bad = temp_file("bad.json", "{\n  \"N\": 1,\n  \"forms\": [\"x^2\", \"y^^2\"]\n}\n");
  const Result r = run({"resultant", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(Cli, PreconditionsExitOne) {
  const std::string degenerate = temp_file("deg.json", R"({"N": 1, "forms": ["x^2", "x*y"]})");
  EXPECT_EQ(run({"height", degenerate, "--point", "1,1"}).code, 1);
  EXPECT_EQ(run({"height", kDir + "/power.json", "--point", "0,0"}).code, 1);
  EXPECT_EQ(run({"multiples", "--curve", "0,1", "--point", "2,3", "--n", "2"}).code, 1);
  EXPECT_EQ(run({"multiples", "--curve", "0,-2", "--point", "3,4", "--n", "2"}).code, 1);  // not on the curve
  EXPECT_EQ(run({"lehmer-scan", "--curve", "0,-2", "--point", "3,5", "--depths", "5"}).code, 1);
  EXPECT_EQ(run({"fekete", kDir + "/power_p2.json", "--n", "1"}).code, 1);
}

TEST(Cli, EverySubcommandRuns) {
  const std::vector<std::vector<std::string>> cmds{
      {"escape", kDir + "/quadratic_half.json", "--point", "1/3,1", "--place", "p=2"},
      {"basis", kDir + "/power_p2.json", "--n", "2,3"},
      {"green", kDir + "/power.json", "--n", "1", "--points", "1,1;-1,1", "--place", "2"},
      {"fekete", kDir + "/power.json", "--n", "3", "--budget", "3000"},
      {"adelic-report", kDir + "/quadratic_half.json", "--n", "4,8", "--budget", "3000"},
      {"multiples", "--curve", "0,-2", "--point", "3,5", "--n", "3"},
      {"lehmer-scan", "--curve", "0,-2", "--point", "3,5", "--depths", "0,1"},
  };
  for (auto args : cmds) {
    const Result j = run(args);
    ASSERT_EQ(j.code, 0) << args[0] << ": " << j.err;
    EXPECT_EQ(Json::parse(j.out)["schema"], "greenfield-report/1");
    args.insert(args.end(), {"--format", "csv"});
    const Result c = run(args);
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_GE(std::count(c.out.begin(), c.out.end(), '\n'), 2) << args[0];
  }
}

TEST(Cli, ByteIdenticalAcrossRunsAndThreads) {
  const std::vector<std::string> args{"adelic-report", kDir + "/quadratic_half.json", "--n", "4,8", "--budget", "4000", "--seed", "7"};
  setenv("GREENFIELD_THREADS", "1", 1);
  const std::string a = run(args).out;
  setenv("GREENFIELD_THREADS", "3", 1);
  const std::string b = run(args).out;
  const std::string c = run(args).out;
  unsetenv("GREENFIELD_THREADS");
  EXPECT_EQ(a, b);
  EXPECT_EQ(b, c);
  const std::vector<std::string> f{"fekete", kDir + "/power.json", "--n", "5", "--seed", "3"};
  EXPECT_EQ(run(f).out, run(f).out);
}

TEST(Cli, OutWritesFile) {
  const auto path = (std::filesystem::temp_directory_path() / "greenfield_test_out.json").string();
  std::filesystem::remove(path);
  const Result r = run({"fekete", kDir + "/power.json", "--n", "2", "--budget", "2000", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const Json j = Json::parse(in);
  EXPECT_EQ(j["rows"][0]["n"], 2);
  for (const char* key : {"n", "place", "witness_logd", "envelope_logd", "tuple"}) EXPECT_TRUE(j["rows"][0].contains(key)) << key;
}

TEST(Cli, EmittedSystemRoundTrips) {
  for (const char* name : {"power.json", "quadratic_half.json", "chebyshev.json", "power_p2.json"}) {
    const Result r = run({"basis", kDir + "/" + name, "--n", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json sys = Json::parse(r.out)["system"];
    const cli::SystemConfig back = cli::parse_system_config(sys.dump(2));
    const cli::SystemConfig orig = cli::load_system_config(kDir + "/" + name);
    EXPECT_EQ(back.build().map(), orig.build().map()) << name;
    EXPECT_EQ(back.tol, orig.tol);
    EXPECT_EQ(back.seed, orig.seed);
    EXPECT_EQ(back.convention, orig.convention);
    // and emitting again gives the same text
    EXPECT_EQ(cli::to_json(back, back.build()).dump(), sys.dump()) << name;
  }
}

TEST(Config, DiagnosticsCarryLineAndColumn) {
  try {
    cli::parse_system_config("{\n  \"N\": 1,\n  \"forms\": [\"x^2\", \"y^2\"],\n  \"colour\": 3\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 3u);
  }
  try {
    cli::parse_system_config("{\"N\": 1, \"forms\": [\"x^2\", \"y^3\"]}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  EXPECT_THROW(cli::parse_system_config("{\"N\": 1, \"forms\": [\"x^2\", \"y^2\"],}"), ParseError);
  EXPECT_THROW(cli::parse_system_config("{\"N\": 2, \"forms\": [\"x^2\", \"y^2\"]}"), ParseError);
  EXPECT_THROW(cli::parse_system_config("{\"N\": 1, \"forms\": [\"x^2\", \"y^2\"], \"r_convention\": \"x\"}"), ParseError);
  const cli::SystemConfig ok = cli::parse_system_config(
      "{\"N\": 2, \"d\": 2, \"forms\": [\"x^2\", \"y^2\", \"z^2\"], \"hypersurface\": \"y^2*z-x^3\","
      " \"r_convention\": \"paper\", \"tolerances\": {\"tol\": 1e-8}, \"seeds\": {\"seed\": 5}}");
  EXPECT_EQ(ok.convention, RConvention::Paper);
  EXPECT_EQ(ok.seed, 5u);
  EXPECT_TRUE(ok.build().hypersurface().has_value());
}
