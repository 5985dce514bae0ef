#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "effectfactor/report.hpp"

using namespace efx;

namespace {

std::string config_dir() {
  const char* dir = std::getenv("EFX_CONFIG_DIR");
  return dir ? dir : "configs";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const char* cli = std::getenv("EFX_CLI");
  REQUIRE(cli != nullptr);
  std::string cmd = std::string(cli) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("minimal config fills the documented defaults") {
  RunConfig c = parse_config(R"({"version":1,"interpretation":{"preset":"state-write"}})");
  CHECK(c.objects == std::vector<int64_t>{0, 1, 2, 3});
  CHECK(c.depth == 3);
  CHECK(c.budget == 100'000);
  CHECK(c.seed == 0);
  CHECK(c.max_carrier == 1'000'000);
  CHECK(c.parallel);
  CHECK(resolve_law_objects(c) == std::vector<int64_t>{2, 2, 2});
  CHECK(resolve_formula(c) == SizeFormula::writer);
}

TEST_CASE("config errors carry the offending name") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"version":1,"interpretation":{"preset":"bogus"}})"),
                       doctest::Contains("bogus"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"version":1,"interpretation":{"preset":"state-write"},"bad_key":0})"),
                       doctest::Contains("bad_key"), ConfigError);
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"version":9,"interpretation":{"preset":"state-write"}})"),
                  ConfigError);
  // preset and explicit interpretation are exclusive
  CHECK_THROWS_AS(parse_config(R"({"version":1,"interpretation":{"preset":"state-write","monad":{"kind":"state","param":2}}})"),
                  ConfigError);
}

TEST_CASE("config round-trips through its canonical emission") {
  for (const char* name :
       {"state-write.json", "stability-mismatch.json", "explicit-writer.json",
        "laws-state.json", "cont-abort.json"}) {
    RunConfig c = parse_config(slurp(config_dir() + "/" + name));
    RunConfig back = parse_config(emit_config(c));
    INFO(name);
    CHECK(back == c);
  }
}

TEST_CASE("explicit tables build a working interpretation") {
  RunConfig c = parse_config(slurp(config_dir() + "/explicit-writer.json"));
  Interpretation interp = build_interpretation(c.primary, c.max_carrier);
  CHECK(interp.sig.ops.size() == 1);
  CHECK(interp.monad.spec().name() == "state(2)");
  // missing and unknown tables are config errors
  CHECK_THROWS_AS(build_interpretation(
                      parse_config(R"({"version":1,"interpretation":{"monad":{"kind":"state","param":2},"ops":[{"name":"w","a":2,"b":1}],"tables":{}}})").primary,
                      1'000'000),
                  ConfigError);
  CHECK_THROWS_AS(build_interpretation(
                      parse_config(R"({"version":1,"interpretation":{"monad":{"kind":"state","param":2},"tables":{"w":[0]}}})").primary,
                      1'000'000),
                  ConfigError);
}

TEST_CASE("factor run reproduces the writer cardinalities") {
  RunConfig c = parse_config(slurp(config_dir() + "/state-write.json"));
  RunReport rep = run_subcommand("factor", c);
  CHECK(rep.all_pass);
  auto cards = rep.body["cardinalities"];
  REQUIRE(cards.size() == 4);
  const int64_t expect[4][2] = {{0, 0}, {1, 3}, {2, 6}, {3, 9}};
  for (size_t i = 0; i < 4; ++i) {
    CHECK(cards[i][0].get<int64_t>() == expect[i][0]);
    CHECK(cards[i][1].get<int64_t>() == expect[i][1]);
  }
  CHECK(rep.body["factorization"]["all_pass"].get<bool>());
}

TEST_CASE("an explicit (non-preset) interpretation factors end to end") {
  RunConfig c = parse_config(slurp(config_dir() + "/explicit-writer.json"));
  RunReport rep = run_subcommand("factor", c);
  CHECK(rep.all_pass);
  CHECK(rep.body["cardinalities"][3][1].get<int64_t>() == 9);
  RunReport mod = run_subcommand("modularity", c);
  CHECK(mod.all_pass);
}

TEST_CASE("reports are byte-identical across runs and echo a parseable config") {
  RunConfig c = parse_config(slurp(config_dir() + "/powerset-or.json"));
  RunReport r1 = run_subcommand("factor", c);
  RunReport r2 = run_subcommand("factor", c);
  std::string m1 = emit_report(r1, ReportFormat::machine);
  std::string m2 = emit_report(r2, ReportFormat::machine);
  CHECK(m1 == m2);
  CHECK(emit_report(r1, ReportFormat::human) == emit_report(r2, ReportFormat::human));

  // the config echo round-trips losslessly
  auto j = nlohmann::ordered_json::parse(m1);
  RunConfig echoed = parse_config(j["config"].dump());
  CHECK(echoed == c);
  CHECK(j["tool"].get<std::string>() == "effect-factor");
  CHECK(j["schema"].get<int>() == 1);
  CHECK(j["timing_ms"].is_null());
}

TEST_CASE("presets subcommand lists all eight built-ins") {
  RunReport rep = run_subcommand("presets", RunConfig{});
  REQUIRE(rep.body["presets"].size() == 8);
  std::vector<std::string> ids;
  for (const auto& p : rep.body["presets"]) ids.push_back(p["id"].get<std::string>());
  CHECK(ids == std::vector<std::string>{"state-read-write", "state-write", "state-read",
                                        "powerset-or", "powerset-or-fail", "cont-abort",
                                        "stateexc-write", "empty-signature"});
  // generic-effect tables ship with their decoded forms
  CHECK(rep.body["presets"][1]["ops"][0]["decoded"].size() == 2);
}

TEST_CASE("theory run partitions the or-theory into three blocks") {
  RunConfig c = parse_config(slurp(config_dir() + "/powerset-or.json"));
  c.objects = {2};
  RunReport rep = run_subcommand("theory", c);
  CHECK(rep.all_pass);
  CHECK(rep.body["objects"][0]["blocks"].get<int64_t>() == 3);
  CHECK(rep.body["objects"][0]["correctness"]["match"].get<bool>());
}

TEST_CASE("modularity and stability runs") {
  RunConfig mc = parse_config(slurp(config_dir() + "/cont-abort.json"));
  RunReport mr = run_subcommand("modularity", mc);
  CHECK(mr.all_pass);
  CHECK(mr.body["formula"].get<std::string>() == "exception");

  RunConfig sc = parse_config(slurp(config_dir() + "/stability-write.json"));
  RunReport sr = run_subcommand("stability", sc);
  CHECK(sr.all_pass);

  RunConfig bad = parse_config(slurp(config_dir() + "/stability-mismatch.json"));
  RunReport br = run_subcommand("stability", bad);
  CHECK(!br.all_pass);
  CHECK(!br.body["objects"][0]["term_a"].get<std::string>().empty());

  // stability without a second interpretation is a config error
  RunConfig missing = parse_config(slurp(config_dir() + "/state-write.json"));
  CHECK_THROWS_AS(run_subcommand("stability", missing), ConfigError);
}

TEST_CASE("laws run on the state monad passes") {
  RunConfig c = parse_config(slurp(config_dir() + "/laws-state.json"));
  c.budget = 20'000;
  RunReport rep = run_subcommand("laws", c);
  CHECK(rep.all_pass);
  CHECK(rep.body["monad"].get<std::string>() == "state(2)");
  CHECK(rep.body["surjection_preservation"]["pass"].get<bool>());
}

TEST_CASE("cli exit-status contract") {
  const std::string dir = config_dir();
  CHECK(run_cli("factor --config " + dir + "/state-write.json") == 0);
  CHECK(run_cli("presets") == 0);
  CHECK(run_cli("stability --config " + dir + "/stability-mismatch.json") == 1);
  CHECK(run_cli("factor --config " + dir + "/malformed.json") == 2);
  CHECK(run_cli("factor --config " + dir + "/does-not-exist.json") == 2);
  CHECK(run_cli("factor --config " + dir + "/oversized.json") == 3);
  // CLI overrides reach the run: shrinking the cap trips the guard
  CHECK(run_cli("factor --config " + dir + "/state-write.json --max-carrier 10") == 3);
  CHECK(run_cli("factor --config " + dir + "/state-write.json --format machine") == 0);
  CHECK(run_cli("factor --config " + dir + "/state-write.json --serial") == 0);
}
