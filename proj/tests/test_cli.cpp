#include <gtest/gtest.h>

#include <sstream>

#include "ifpn/cli.hpp"

using namespace ifpn;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ifpn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string config(const char* name) { return std::string(IFPN_CONFIG_DIR) + "/" + name; }

const char* kMinimal = R"({"version": 1,
  "spaces": [{"name": "line", "pseudo_norm": "abs", "dimension": 1}],
  "operators": [{"name": "id", "kind": "identity", "parameters": {"dimension": 1}}],
  "scenarios": [{"name": "s", "domain_space": "line", "codomain_space": "line", "operator": "id"}]})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

}  // namespace

TEST(ConfigParse, MinimalFileBuilds) {
  const ScenarioFile f = parse_scenario_file(kMinimal);
  ASSERT_EQ(f.scenarios.size(), 1u);
  const auto scenarios = build_scenarios(f, {});
  EXPECT_EQ(scenarios.front().op.name, "identity(1)");
  EXPECT_EQ(scenarios.front().cfg.x0(), Point{0.0});
}

TEST(ConfigParse, Errors) {
  EXPECT_THROW(parse_scenario_file("{"), ConfigError);
  EXPECT_THROW(parse_scenario_file(replace(kMinimal, "\"version\": 1", "\"version\": 2")), ConfigError);
  EXPECT_THROW(parse_scenario_file(replace(kMinimal, "\"version\": 1,", "\"version\": 1, \"extra\": 0,")), ConfigError);
  EXPECT_THROW(parse_scenario_file(replace(kMinimal, "\"operator\": \"id\"", "\"operator\": \"nope\"")), ConfigError);
  EXPECT_THROW(parse_scenario_file(replace(kMinimal, "\"codomain_space\": \"line\"", "\"codomain_space\": \"x\"")),
               ConfigError);
  EXPECT_THROW(parse_scenario_file(replace(kMinimal, "\"dimension\": 1}]", "\"dimension\": 1, \"colour\": 1}]")),
               ConfigError);
  EXPECT_THROW(parse_scenario_file(replace(kMinimal, "\"operator\": \"id\"}",
                                           "\"operator\": \"id\", \"sequence_suite\": \"wild\"}")),
               ConfigError);
}

TEST(ConfigParse, SampleConfigsLoad) {
  EXPECT_NO_THROW(load_scenario_file(config("standard_spaces.json")));
  EXPECT_NO_THROW(load_scenario_file(config("scenarios.json")));
  EXPECT_NO_THROW(load_scenario_file(config("mu_plus_nu_exceeds_one.json")));
  EXPECT_THROW(load_scenario_file(config("malformed.json")), ConfigError);
  EXPECT_THROW(load_scenario_file(config("missing.json")), ConfigError);
}

TEST(Cli, ValidateExitCodes) {
  EXPECT_EQ(cli({"--config", config("standard_spaces.json"), "validate"}).code, 0);
  const CliRun bad = cli({"--config", config("mu_plus_nu_exceeds_one.json"), "validate"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("Refuted"), std::string::npos);
  EXPECT_EQ(cli({"--config", config("malformed.json"), "validate"}).code, 2);
  EXPECT_EQ(cli({"validate"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"--report", "xml", "theorems"}).code, 2);
  EXPECT_EQ(cli({"alpha", "--space", "abs"}).code, 2);
  EXPECT_EQ(cli({"alpha", "--space", "abs", "--point", "a,b"}).code, 2);
  EXPECT_EQ(cli({"alpha", "--space", "abs", "--point", "2", "--alpha", "1.5"}).code, 2);
  EXPECT_EQ(cli({"classify", "--scenario", "no such scenario"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, AlphaReportsBothFamilies) {
  const CliRun r = cli({"--report", "json", "alpha", "--space", "abs", "--point", "2", "--alpha", "0.25,0.8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "alpha");
  EXPECT_EQ(j["config"], "builtin");
  EXPECT_EQ(j["exit_status"]["code"], 0);
  const std::string dump = j.dump();
  EXPECT_NE(dump.find("0.666666"), std::string::npos);
}

TEST(Cli, ClassifyFromConfig) {
  const CliRun r = cli({"--config", config("scenarios.json"), "--report", "json", "classify", "--scenario", "double",
                     "--properties", "strong_ifb,weak_ifc"});
  ASSERT_EQ(r.code, 1) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["reports"].size(), 2u);
  EXPECT_EQ(j["reports"][0]["verdict"], "Refuted");
  EXPECT_EQ(j["reports"][1]["verdict"], "Holds");
  EXPECT_EQ(cli({"--config", config("scenarios.json"), "classify", "--scenario", "half"}).code, 0);
}

TEST(Cli, TextAndJsonAgreeOnVerdicts) {
  const std::vector<std::string> base = {"classify", "--scenario", "scaling(1,2) on abs"};
  std::vector<std::string> js = {"--report", "json"}, tx = {"--report", "text"};
  js.insert(js.end(), base.begin(), base.end());
  tx.insert(tx.end(), base.begin(), base.end());
  const CliRun a = cli(js), b = cli(tx);
  ASSERT_EQ(a.code, b.code);
  const auto j = nlohmann::json::parse(a.out);
  std::size_t refuted = 0, holds = 0;
  for (const auto& r : j["reports"]) (r["verdict"] == "Refuted" ? refuted : holds) += 1;
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t p = b.out.find(needle); p != std::string::npos; p = b.out.find(needle, p + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("verdict: Refuted"), refuted);
  EXPECT_EQ(count("verdict: Holds"), holds);
  EXPECT_EQ(refuted, 3u);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args = {"--report", "json", "--seed", "7", "--config", config("scenarios.json"),
                                         "classify", "--scenario", "projection"};
  EXPECT_EQ(cli(args).out, cli(args).out);
}
