#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rvmono/cli.hpp"
#include "rvmono/function.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rvmono");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = rvmono::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("rvmono_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  json read(const std::string& name) const {
    std::ifstream f(dir / name);
    return json::parse(f);
  }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"exact-distance", "--fn", path("f.json"), "--bogus"}).code, 2);
  EXPECT_EQ(run({"exact-distance", "--fn", path("missing.json")}).code, 2);
  EXPECT_EQ(run({"gen-lowerbound", "--d", "8"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, GenerateThenExactDistance) {
  ASSERT_EQ(run({"gen-function", "--d", "4", "--r", "3", "--seed", "7", "--out", path("f.json")}).code, 0);
  const auto f = rvmono::read_function(path("f.json"));
  EXPECT_EQ(f.size(), 16u);
  EXPECT_EQ(f, rvmono::random_function(rvmono::make_hypercube(4), 3, 7));
  ASSERT_EQ(run({"exact-distance", "--fn", path("f.json"), "--out", path("cert.json")}).code, 0);
  const auto cert = read("cert.json");
  EXPECT_EQ(cert["command"], "exact-distance");
  EXPECT_EQ(cert["version"], rvmono::cli::kVersion);
  EXPECT_TRUE(cert["check"]["ok"].get<bool>());
  EXPECT_TRUE(cert["result"].contains("vertex_cover"));
}

TEST_F(Cli, DecomposeMonotoneIsEmpty) {
  ASSERT_EQ(run({"gen-function", "--d", "4", "--family", "monotone", "--out", path("m.json")}).code, 0);
  ASSERT_EQ(run({"decompose", "--fn", path("m.json"), "--out", path("dec.json")}).code, 0);
  EXPECT_TRUE(read("dec.json")["empty"].get<bool>());
  ASSERT_EQ(run({"gen-function", "--d", "4", "--family", "anti-dictator", "--out", path("a.json")}).code, 0);
  ASSERT_EQ(run({"decompose", "--fn", path("a.json"), "--out", path("dec2.json")}).code, 0);
  const auto dec = read("dec2.json");
  EXPECT_FALSE(dec["empty"].get<bool>());
  EXPECT_TRUE(dec["result"]["certificate"]["ok"].get<bool>());
}

TEST_F(Cli, VerifyInequalitiesSuite) {
  const auto r = run({"verify-inequalities", "--d", "5", "--r", "4", "--count", "100", "--seed", "1", "--jobs", "4"});
  ASSERT_EQ(r.code, 0) << r.out.substr(0, 2000);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["result"]["failed_instances"], 0);
  EXPECT_TRUE(j["result"]["failures"].empty());
  EXPECT_EQ(j["result"]["checks"]["decomposition"]["pass"].get<int>() +
                j["result"]["checks"]["decomposition"]["vacuous"].get<int>(),
            100);
}

TEST_F(Cli, InjectedCorruptionIsReported) {
  const auto r = run({"verify-inequalities", "--d", "4", "--r", "3", "--count", "10", "--inject-corruption"});
  EXPECT_EQ(r.code, 1);
  const auto j = json::parse(r.out);
  ASSERT_FALSE(j["result"]["failures"].empty());
  const auto& first = j["result"]["failures"][0];
  EXPECT_EQ(first["check"], "decomposition");
  EXPECT_FALSE(first["witness"].get<std::string>().empty());
}

TEST_F(Cli, MonotoneFamilyIsVacuous) {
  const auto r = run({"verify-inequalities", "--d", "4", "--count", "20", "--family", "monotone"});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["result"]["checks"]["decomposition"]["vacuous"], 20);
  EXPECT_EQ(j["result"]["checks"]["chain"]["vacuous"], 20);
}

TEST_F(Cli, DeterministicAcrossJobs) {
  const std::vector<std::string> base{"verify-inequalities", "--d", "4", "--count", "30", "--seed", "5"};
  auto a = base, b = base;
  a.insert(a.end(), {"--jobs", "1"});
  b.insert(b.end(), {"--jobs", "3"});
  const auto ra = run(a), rb = run(b);
  EXPECT_EQ(ra.out, run(a).out);
  // The config echo does not include --jobs, so the reports match byte for byte.
  EXPECT_EQ(ra.out, rb.out);
}

TEST_F(Cli, CsvOutput) {
  const auto r = run({"verify-inequalities", "--d", "3", "--count", "4", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("index,seed,epsilon,violated_edges,k,certificate", 0), 0u) << header;
  int rows = 0;
  for (std::string l; std::getline(lines, l);) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST_F(Cli, TesterAndApproximator) {
  ASSERT_EQ(run({"gen-function", "--d", "8", "--family", "anti-dictator", "--out", path("a.json")}).code, 0);
  auto r = run({"test-monotone", "--fn", path("a.json"), "--eps", "0.5", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["result"]["verdict"], "reject");
  EXPECT_EQ(j["seed"], 3);
  r = run({"test-monotone", "--fn", path("a.json"), "--eps", "0.5", "--trials", "20", "--tester", "edge"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["result"]["trials"], 20);
  r = run({"approx-distance", "--fn", path("a.json"), "--alpha", "0.1", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_TRUE(j["result"].contains("estimate"));
  r = run({"approx-distance", "--fn", path("a.json"), "--eps", "0.4", "--full"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["result"]["levels"].size(), 4u);
}

TEST_F(Cli, LowerBoundWitness) {
  const auto r = run({"gen-lowerbound", "--d", "9", "--r", "7", "--i", "2", "--witness"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["result"]["matching_size"], 254);
  EXPECT_EQ(j["result"]["violated_pairs"], 254);
  ASSERT_EQ(run({"gen-lowerbound", "--out", path("lb.json")}).code, 0);
  EXPECT_EQ(rvmono::read_function(path("lb.json")).size(), 512u);
}

TEST_F(Cli, Bench) {
  const auto r = run({"bench", "--d-min", "2", "--d-max", "4", "--trials", "10", "--format", "csv", "--timing"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("d,tester,repetitions,mean_queries,rejection_rate,wilson_low,wilson_high,seconds", 0), 0u);
}

TEST_F(Cli, DagFunctionFile) {
  {
    std::ofstream(path("dag.json")) << R"({"n": 4, "edges": [[0, 1], [1, 2], [0, 3]]})";
  }
  ASSERT_EQ(run({"gen-function", "--dag", path("dag.json"), "--r", "4", "--seed", "2", "--out", path("g.json")}).code, 0);
  EXPECT_EQ(read("g.json")["domain"], "dag.json");
  ASSERT_EQ(run({"exact-distance", "--fn", path("g.json")}).code, 0);
  EXPECT_EQ(run({"test-monotone", "--fn", path("g.json")}).code, 2);
}
