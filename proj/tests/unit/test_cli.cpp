#include "doctest.h"

#include "cli.hpp"
#include "dexseq/app/metrics_log.hpp"
#include "dexseq/app/run_config.hpp"
#include "json.hpp"

using namespace dexseq;
using support::cli;
using support::slurp;

TEST_SUITE("cli") {

TEST_CASE("print defaults is a loadable config") {
  const auto r = cli({"--print-defaults"});
  REQUIRE(r.code == 0);
  const auto dir = support::scratch_dir("defaults");
  {
    std::ofstream(dir / "config.json") << r.out;
  }
  const auto loaded = app::load_run_config((dir / "config.json").string());
  CHECK(app::to_json(loaded) == app::to_json(app::RunConfig{}));
  CHECK(nlohmann::json::parse(r.out).contains("curriculum"));
}

TEST_CASE("bad inputs exit with status 2") {
  const auto dir = support::scratch_dir("bad");
  auto j = app::to_json(app::RunConfig{});
  j["grasp"]["train"]["budgett"] = 5;
  {
    std::ofstream(dir / "bad.json") << j.dump();
  }
  auto r = cli({"train-grasp", "--config", (dir / "bad.json").string(), "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("grasp.train.budgett") != std::string::npos);

  r = cli({"train-grasp", "--config", (dir / "missing.json").string(), "--out", dir.string()});
  CHECK(r.code == 2);
  r = cli({"train-second", "--out", (dir / "empty").string()});
  CHECK(r.code == 2);
  r = cli({"no-such-command"});
  CHECK(r.code == 2);
}

TEST_CASE("command chain, report rows and outcome counts") {
  const auto dir = support::scratch_dir("chain");
  for (const auto& cmd : support::command_chain()) {
    const auto r = cli({cmd, "--seed", "2", "--out", dir.string()});
    CHECK_MESSAGE(r.code == 0, cmd << ": " << r.err);
  }
  const auto outcomes = nlohmann::json::parse(slurp(dir / "outcomes.json"));
  int total = 0;
  for (const auto& [_, n] : outcomes["counts"].items()) total += n.get<int>();
  CHECK(total == 15);
  CHECK(outcomes["queries"] == 15);

  const auto curriculum = nlohmann::json::parse(slurp(dir / "curriculum.json"));
  std::size_t history = 0;
  for (const auto& rec : curriculum["records"]) history += rec["history"].size();
  const auto events = app::read_metrics(dir / "run-curriculum.metrics.jsonl");
  CHECK(app::curriculum_rows(events).size() == history);
  CHECK(history >= 9);
  CHECK(slurp(dir / "report.txt").find("Curriculum") != std::string::npos);
}

TEST_CASE("run-curriculum is reproducible") {
  std::string logs[2];
  for (int i = 0; i < 2; ++i) {
    const auto dir = support::scratch_dir("repeat" + std::to_string(i));
    const auto r = cli({"run-curriculum", "--config", "default", "--seed", "7", "--out", dir.string()});
    REQUIRE(r.code == 0);
    logs[i] = app::normalize_timestamps(slurp(dir / "run-curriculum.metrics.jsonl"));
  }
  CHECK_FALSE(logs[0].empty());
  CHECK(logs[0] == logs[1]);
}

}
