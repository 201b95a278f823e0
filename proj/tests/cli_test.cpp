#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "impuq/cli/commands.hpp"
#include "impuq/cli/io.hpp"

using namespace impuq;
using namespace impuq::cli;

namespace {

const std::string kDir = IMPUQ_FIXTURE_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return kDir + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("impuq_cli_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, EntropyBoundsVacuous) {
  const auto r = call({"entropy-bounds", fixture("vacuous3.json"), "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["upper_entropy"].get<double>(), std::log(3.0), 1e-8);
  EXPECT_EQ(j["lower_entropy"].get<double>(), 0.0);
}

TEST(Cli, EntropyBaseTwo) {
  const auto r = call({"--entropy-base", "2", "entropy-bounds", fixture("vacuous3.json"), "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["upper_entropy"].get<double>(), std::log2(3.0), 1e-8);
}

TEST(Cli, InfeasibleCitesCondition) {
  const auto r = call({"entropy-bounds", fixture("infeasible.json")});
  EXPECT_EQ(r.code, kInvalidInput);
  EXPECT_NE(r.err.find("sum(lowers) <= 1 <= sum(uppers)"), std::string::npos) << r.err;
}

TEST(Cli, MalformedInputsExitTwo) {
  auto r = call({"entropy-bounds", fixture("malformed.json")});
  EXPECT_EQ(r.code, kInvalidInput);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  r = call({"pbox", "--lower", fixture("malformed.csv"), "--upper", fixture("unif01.csv")});
  EXPECT_EQ(r.code, kInvalidInput);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  r = call({"entropy-bounds", fixture("does_not_exist.json")});
  EXPECT_EQ(r.code, kInvalidInput);
  r = call({"pbox", "--lower", fixture("cross_a.csv"), "--upper", fixture("cross_b.csv")});
  EXPECT_EQ(r.code, kInvalidInput);
  EXPECT_NE(r.err.find("cross"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, kInvalidInput);
  EXPECT_EQ(call({"bogus"}).code, kInvalidInput);
  EXPECT_EQ(call({"--entropy-base", "10", "entropy-bounds", fixture("vacuous3.json")}).code, kInvalidInput);
  EXPECT_EQ(call({"--tol", "0", "entropy-bounds", fixture("vacuous3.json")}).code, kInvalidInput);
  EXPECT_EQ(call({"focal-select", fixture("ellipsoids.json"), "--k", "0"}).code, kInvalidInput);
  EXPECT_EQ(call({"--help"}).code, kOk);
}

TEST(Cli, PBoxClosedForms) {
  const auto r = call({"pbox", "--lower", fixture("unif12.csv"), "--upper", fixture("unif01.csv"),
                       "--gamble", fixture("identity02.csv"), "--n", "5", "10", "100", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<double> lows;
  while (std::getline(lines, line)) lows.push_back(nlohmann::json::parse(line)["lower"].get<double>());
  ASSERT_EQ(lows.size(), 3u);
  EXPECT_NEAR(lows[0], 0.4, 1e-9);
  EXPECT_NEAR(lows[1], 0.45, 1e-9);
  EXPECT_NEAR(lows[2], 0.495, 1e-9);
}

TEST(Cli, ContNNWorkedFixture) {
  const auto r = call({"decompose", "--rule", "contnn", "--bnn", fixture("bnn.json"), "--inn",
                       fixture("inn.json"), "--epsilon", "0.5", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("\"eu\":0.172609243"), std::string::npos) << r.out;
}

TEST(Cli, WeightedReportsViolations) {
  const auto r = call({"decompose", "--rule", "weighted", "--bundle", fixture("ensemble.json"),
                       "--alpha-method", "ensemble-spread", "--format", "json"});
  EXPECT_EQ(r.code, kInvalidInput);
  EXPECT_NE(r.out.find("\"record\":\"alphas\""), std::string::npos);
  EXPECT_NE(r.out.find("\"error\""), std::string::npos);
  const auto ok = call({"decompose", "--rule", "weighted", "--bundle", fixture("ensemble.json"),
                        "--alphas", fixture("alphas.json")});
  EXPECT_EQ(ok.code, kOk) << ok.err;
}

TEST(Cli, FocalSelectNamesLabels) {
  const auto r = call({"focal-select", fixture("ellipsoids.json"), "--k", "2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("cat,dog"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("network outputs 6"), std::string::npos) << r.out;
}

TEST(Cli, SeedPrecedence) {
  const std::vector<std::string> base{"demo-dependency", "--sizes", "50", "--bootstrap", "20", "--format", "json"};
  const auto plain = call(base);
  ::setenv("IMPUQ_SEED", "7", 1);
  const auto env = call(base);
  auto flagged = base;
  flagged.insert(flagged.begin(), {"--seed", "42"});
  const auto explicit_seed = call(flagged);
  ::unsetenv("IMPUQ_SEED");
  EXPECT_NE(plain.out, env.out);
  EXPECT_NE(env.out.find("\"seed\":7"), std::string::npos);
  EXPECT_EQ(plain.out, explicit_seed.out);
}

TEST(Cli, ByteReproducible) {
  const std::vector<std::vector<std::string>> commands{
      {"entropy-bounds", fixture("precise.json")},
      {"decompose", "--bundle", fixture("ensemble.json")},
      {"pbox", "--lower", fixture("unif12.csv"), "--upper", fixture("unif01.csv")},
      {"contaminate", "--epsilon", "0.3", "--interval", "0", "1", "--precise-cdf", fixture("unif01.csv")},
      {"demo-dependency", "--sizes", "50", "500", "--bootstrap", "30"},
      {"focal-select", fixture("ellipsoids.json"), "--k", "3"},
      {"alphas", "--method", "sensitivity", "--loss-table", fixture("loss.csv")}};
  for (const auto& c : commands) {
    for (const std::string format : {"table", "json"}) {
      auto args = c;
      args.insert(args.end(), {"--format", format});
      const auto a = call(args), b = call(args);
      EXPECT_EQ(a.code, kOk) << c[0] << ": " << a.err;
      EXPECT_EQ(a.out, b.out) << c[0];
    }
  }
}

TEST(Cli, OutFileAndPlotData) {
  const auto out = temp_path("out.jsonl");
  const auto plot = temp_path("plot.txt");
  const auto r = call({"--out", out, "demo-dependency", "--sizes", "50", "500", "--bootstrap", "20",
                       "--plot-data", plot});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto jsonl = slurp(out);
  EXPECT_EQ(std::count(jsonl.begin(), jsonl.end(), '\n'), 2);
  EXPECT_EQ(slurp(plot).rfind("size kept bootstrap_spread\n50 50 ", 0), 0u);
  std::filesystem::remove(out);
  std::filesystem::remove(plot);
}

TEST(Io, RoundTrip) {
  const auto pi = parse_intervals(R"({"lowers":[0.1,0.2],"uppers":[0.7,0.9]})");
  const auto again = parse_intervals(intervals_to_json(pi).dump());
  EXPECT_EQ(again.lowers(), pi.lowers());
  EXPECT_EQ(again.uppers(), pi.uppers());
  const auto b = parse_bundle(slurp(fixture("ensemble.json")), Tolerance{});
  const auto b2 = parse_bundle(bundle_to_json(b).dump(), Tolerance{});
  ASSERT_EQ(b2.instances(), b.instances());
  for (std::size_t i = 0; i < b.instances(); ++i) {
    for (std::size_t s = 0; s < b.samples()[i].size(); ++s) {
      for (std::size_t k = 0; k < b.classes(); ++k) {
        EXPECT_NEAR(b2.samples()[i][s][k], b.samples()[i][s][k], 1e-9);
      }
    }
  }
  const auto f = parse_cdf_csv("x,p\n0,0\n0.5,0.25\n2,1\n");
  const auto f2 = parse_cdf_csv(cdf_to_csv(f));
  for (std::size_t i = 0; i < f.xs().size(); ++i) {
    EXPECT_NEAR(f2.xs()[i], f.xs()[i], 1e-9);
    EXPECT_NEAR(f2.ps()[i], f.ps()[i], 1e-9);
  }
}

TEST(Io, CsvAndJsonErrors) {
  EXPECT_THROW(parse_two_columns("0,1\n1,1\n"), ParseError);
  try {
    parse_two_columns("x,p\n0,0\n1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_intervals(R"({"lowers":[0.1]})"), ParseError);
  EXPECT_THROW(parse_ellipsoids(R"({"classes":[{"mean":[0,0],"covariance":[1,0,0,0,1,0,0,0,1]}]})", Tolerance{}),
               ParseError);
  EXPECT_THROW(parse_ellipsoids(R"({"classes":[{"mean":[0,0,0],"covariance":[1,0,0,0,-1,0,0,0,1]}]})", Tolerance{}),
               ValidationError);
  EXPECT_EQ(fmt9(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(fmt9(-0.0), "0");
}
