#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "qalg/io.hpp"

namespace qalg::cli {
namespace {

const std::string kData = QALG_TEST_DATA_DIR;

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args, int expected_code = kOk) {
  args.push_back("--format");
  args.push_back("json");
  const CliRun r = run_cli(args);
  EXPECT_EQ(r.code, expected_code) << r.err;
  return nlohmann::json::parse(r.out);
}

TEST(Cli, CounterexampleReproduces) {
  const auto j = run_json({"counterexample", "--eps", "0.5"});
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["verdict"], "not strongly finitary");
  bool saw = false;
  for (const auto& c : j["claims"])
    if (c["id"] == "iii.b") {
      EXPECT_EQ(c["computed"].get<double>(), 1.5);
      saw = true;
    }
  EXPECT_TRUE(saw);
}

TEST(Cli, CounterexampleParameterErrorsExitTwo) {
  const CliRun bad_eps = run_cli({"counterexample", "--eps", "1.5"});
  EXPECT_EQ(bad_eps.code, kUsage);
  EXPECT_NE(bad_eps.err.find("0 < eps < 1"), std::string::npos) << bad_eps.err;
  EXPECT_EQ(run_cli({"counterexample", "--eps", "0.5", "--max-depth", "1"}).code, kUsage);
  EXPECT_EQ(run_cli({"counterexample"}).code, kUsage);
  EXPECT_EQ(run_cli({"no-such-command"}).code, kUsage);
  EXPECT_EQ(run_cli({"counterexample", "--eps", "0.5", "--format", "xml"}).code, kUsage);
}

double first_distance(const nlohmann::json& j) {
  const auto& d = j["results"].at(0)["distance"];
  return d.is_string() ? std::numeric_limits<double>::infinity() : d.get<double>();
}

TEST(Cli, FreeDistances) {
  EXPECT_EQ(first_distance(run_json({"free", "--variety", "monoid", "--space", kData + "/ab1.json", "--pairs",
                                     "(mul a (mul a b)),(mul a (mul b b))"})),
            1.0);
  EXPECT_EQ(first_distance(run_json({"free", "--variety", "semilattice", "--space", kData + "/pqr.json", "--pairs",
                                     "{p},{q,r}"})),
            3.0);
  EXPECT_EQ(first_distance(run_json({"free", "--variety", "small:0.5", "--space", kData + "/ab1.json", "--pairs",
                                     "a,b"})),
            0.5);
  // d = 0.2 is already within the bound; the construction keeps it.
  EXPECT_EQ(first_distance(run_json({"free", "--variety", "small:0.5", "--space", kData + "/ab02.json", "--pairs",
                                     "a,b"})),
            0.2);
  EXPECT_EQ(first_distance(run_json({"free", "--variety", "semilattice", "--space", kData + "/pqr.json", "--model",
                                     "generic", "--max-depth", "3", "--pairs", "{p},{q,r}"})),
            3.0);
}

TEST(Cli, FreeCsvTable) {
  const CliRun r = run_cli({"free", "--variety", "monoid", "--space", kData + "/ab1.json", "--pairs", "a,b;a,(mul a b)",
                         "--table", "--format", "csv"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "distance,a,b,(mul a b)");
}

TEST(Cli, ValidationErrorsExitTwo) {
  const CliRun r = run_cli({"free", "--variety", "monoid", "--space", kData + "/triangle_bad.json", "--pairs", "a,b"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("triangle_bad.json"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({"free", "--variety", "monoid", "--space", kData + "/ab1.json", "--pairs", "(mul a"}).code, kUsage);
}

TEST(Cli, LawsCheckColimitMeet) {
  EXPECT_EQ(run_json({"laws", "--monad", "word", "--space", kData + "/ab1.json", "--max-len", "3"})["status"], "pass");
  EXPECT_EQ(run_json({"check", "--algebra", kData + "/semilattice2.json", "--variety", kData + "/semilattice.json"})
                ["status"],
            "pass");
  const auto c = run_json({"colimit", "--chain", kData + "/halving.json", "--stages", "20", "--pair", "a,b"});
  EXPECT_EQ(c["results"].size(), 20u);
  EXPECT_EQ(c["results"].back()["distance"].get<double>(), std::ldexp(1.0, -20));
  EXPECT_NE(c["verdict"].get<std::string>().find("collapse"), std::string::npos);
  EXPECT_EQ(run_json({"meet", "--left", kData + "/pqr.json", "--right", kData + "/pqr.json"})["status"], "pass");
}

TEST(Cli, CheckFailureExitsOne) {
  // The absorbing element declared as the unit breaks (mul x0 (e)) = x0.
  const std::string path = (std::filesystem::temp_directory_path() / "qalg_bad_monoid.json").string();
  std::ofstream(path) << R"({"carrier": {"points": ["e","m"], "dist": [["e","m",0.3]]},
                            "ops": {"mul": [["e","m"],["m","m"]], "e": "m"}})";
  const CliRun r = run_cli({"check", "--algebra", path, "--variety", "monoid"});
  EXPECT_EQ(r.code, kCheckFailed) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, ConditionAndFactorize) {
  EXPECT_EQ(run_json({"condition"})["status"], "pass");
  EXPECT_EQ(run_json({"factorize", "--variety", "two-eps-ops:0.5", "--expect", "fails"})["status"], "pass");
  EXPECT_EQ(run_json({"factorize", "--variety", "monoid", "--expect", "exists"})["status"], "pass");
  run_json({"factorize", "--variety", "monoid", "--expect", "fails"}, kCheckFailed);
}

TEST(Cli, OutputFileAndDeterminism) {
  const std::string path = (std::filesystem::temp_directory_path() / "qalg_cli_out.json").string();
  const CliRun r = run_cli({"counterexample", "--eps", "0.3", "--format", "json", "--output", path});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  const std::string written = read_file(path);
  const CliRun again = run_cli({"counterexample", "--eps", "0.3", "--format", "json"});
  EXPECT_EQ(written, again.out);
  std::filesystem::remove(path);
}

TEST(Cli, UniverseCapFromEnvironment) {
  ::setenv("QALG_UNIVERSE_CAP", "100", 1);
  const CliRun r = run_cli({"counterexample", "--eps", "0.5"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("QALG_UNIVERSE_CAP"), std::string::npos) << r.err;
  ::setenv("QALG_UNIVERSE_CAP", "junk", 1);
  EXPECT_EQ(run_cli({"counterexample", "--eps", "0.5"}).code, kUsage);
  ::unsetenv("QALG_UNIVERSE_CAP");
  EXPECT_EQ(universe_cap_from_env(), kDefaultUniverseCap);
  EXPECT_EQ(run_cli({"counterexample", "--eps", "0.5"}).code, kOk);
}

TEST(Cli, PairGrammar) {
  const auto p = split_pairs("(mul a b),c; {p,q},{}");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0].first, "(mul a b)");
  EXPECT_EQ(p[0].second, "c");
  EXPECT_EQ(p[1].first, "{p,q}");
  EXPECT_EQ(p[1].second, "{}");
  const Signature sig{{"join", 2}, {"bot", 0}};
  EXPECT_EQ(expand_set_sugar("{p,q,r}", sig), "(join p (join q r))");
  EXPECT_EQ(expand_set_sugar("{}", sig), "(bot)");
  EXPECT_EQ(expand_set_sugar("p", sig), "p");
}

TEST(Cli, EveryFormatIsAccepted) {
  for (const char* f : {"json", "csv", "text"}) {
    const CliRun r = run_cli({"colimit", "--chain", kData + "/halving.json", "--pair", "a,b", "--format", f});
    EXPECT_EQ(r.code, kOk) << f << ": " << r.err;
    EXPECT_FALSE(r.out.empty());
  }
}

}  // namespace
}  // namespace qalg::cli
