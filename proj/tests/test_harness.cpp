#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sedplan/envs/finesse.hpp"
#include "sedplan/envs/mini_hanabi.hpp"
#include "sedplan/harness.hpp"

using namespace sed;
using nlohmann::json;

namespace {

ExperimentConfig toy_cfg(AgentMode mode) {
  ExperimentConfig cfg;
  cfg.env = "trampoline";
  cfg.mode = mode;
  cfg.planner.exact = true;
  return cfg;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("mode names round-trip and junk is rejected") {
  for (auto m : {AgentMode::kBlueprint, AgentMode::kExpected, AgentMode::kImprovement,
                 AgentMode::kLookahead}) {
    CHECK(agent_mode_from_string(to_string(m)) == m);
  }
  CHECK_THROWS_AS(agent_mode_from_string("sped"), ConfigError);
}

TEST_CASE("environment and blueprint resolution") {
  ExperimentConfig cfg;
  cfg.env = "trampoline";
  CHECK(make_game(cfg)->name() == "trampoline-tiger");
  cfg.env = "mini-hanabi";
  CHECK(make_game(cfg)->name() == "mini-hanabi");
  cfg.env = "two-turn:7";
  CHECK(make_game(cfg)->num_players() == 2);
  cfg.env = "atlantis";
  CHECK_THROWS_AS(make_game(cfg), ConfigError);
  CHECK(default_blueprint_for("trampoline") == "noop");
  CHECK(default_blueprint_for("two-turn:3") == "noop");
  CHECK(default_blueprint_for("mini-hanabi") == "scripted-hanabi");
}

TEST_CASE("planner config resolution per environment and mode") {
  ExperimentConfig cfg = toy_cfg(AgentMode::kImprovement);
  PlannerConfig pc = resolve_planner_config(cfg, 77, false);
  CHECK(pc.mode == PlannerConfig::Mode::kImprovement);
  CHECK(pc.seed == 77);
  CHECK(pc.eps_q == -1.0);  // toy games keep the relative default
  PlannerConfig forced = resolve_planner_config(cfg, 5, true);
  CHECK(forced.exact);

  ExperimentConfig hint = cfg;
  hint.env = "mini-hanabi";
  CHECK(resolve_planner_config(hint, 0, false).eps_q == 0.05);
  hint.planner.eps_q = 0.2;  // explicit settings win
  CHECK(resolve_planner_config(hint, 0, false).eps_q == 0.2);
}

TEST_CASE("exact expected episode value of the trampoline toy, all modes") {
  CHECK(expected_episode_value(toy_cfg(AgentMode::kBlueprint)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(expected_episode_value(toy_cfg(AgentMode::kExpected)) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(expected_episode_value(toy_cfg(AgentMode::kImprovement)) ==
        doctest::Approx(0.1).epsilon(1e-12));
  CHECK(expected_episode_value(toy_cfg(AgentMode::kLookahead)) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // the trampoline odds flow straight through to the value
  ExperimentConfig quarter = toy_cfg(AgentMode::kExpected);
  quarter.env_p = 0.25;
  CHECK(expected_episode_value(quarter) == doctest::Approx(0.25).epsilon(1e-12));

  // planning at the wrong turn finds nothing to coordinate
  ExperimentConfig late = toy_cfg(AgentMode::kExpected);
  late.plan_turn = 1;
  CHECK(expected_episode_value(late) == doctest::Approx(0.0).epsilon(1e-12));
  ExperimentConfig early = toy_cfg(AgentMode::kExpected);
  early.plan_turn = 0;
  CHECK(expected_episode_value(early) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("sampled trampoline episodes: deviation, response and return agree") {
  ExperimentConfig cfg = toy_cfg(AgentMode::kExpected);
  cfg.episodes = 100;
  cfg.seed = 4;
  RunResult res = run_experiment(cfg);
  REQUIRE(res.episodes.size() == 100);
  int tramp = 0;
  for (const EpisodeRecord& rec : res.episodes) {
    CHECK(rec.seed == Rng::derive(cfg.seed, rec.index));
    CHECK(rec.turns == 2);
    const bool trampoline_world = rec.history.initial.part[0][0] == 1;
    tramp += trampoline_world ? 1 : 0;
    if (trampoline_world) {
      CHECK(rec.ret == 1.0);
      CHECK(rec.deviations == 1);
      CHECK(rec.responses == 1);
      REQUIRE(rec.events.size() == 1);
      CHECK(rec.events[0].detected);
      CHECK(rec.events[0].responded);
      CHECK(rec.events[0].a1 == 1);
      CHECK(rec.events[0].a2 == 1);
    } else {
      CHECK(rec.ret == 0.0);
      CHECK(rec.deviations == 0);
      CHECK(rec.responses == 0);
    }
  }
  CHECK(tramp > 2);
  CHECK(tramp < 25);
  CHECK(res.summary.mean_return == doctest::Approx(tramp / 100.0).epsilon(1e-12));
  CHECK(res.summary.total_deviations == tramp);
  CHECK(res.summary.total_responses == tramp);
  CHECK(res.summary.episodes == 100);
  CHECK(res.summary.mode == "expected");

  // raw seeding maps episode i to literally seed + i
  ExperimentConfig raw = cfg;
  raw.raw_seed = true;
  raw.episodes = 3;
  RunResult rr = run_experiment(raw);
  for (const EpisodeRecord& rec : rr.episodes) {
    CHECK(rec.seed == raw.seed + static_cast<uint64_t>(rec.index));
  }
}

TEST_CASE("reruns serialize byte-identically, with or without response sharing") {
  ExperimentConfig cfg = toy_cfg(AgentMode::kExpected);
  cfg.planner.exact = false;
  cfg.planner.M = 60;
  cfg.planner.N = 12;
  cfg.planner.K = 40;
  cfg.episodes = 20;
  cfg.seed = 5;
  auto game = make_game(cfg);
  RunResult r1 = run_experiment(cfg);
  RunResult r2 = run_experiment(cfg);
  REQUIRE(r1.episodes.size() == r2.episodes.size());
  for (size_t i = 0; i < r1.episodes.size(); ++i) {
    CHECK(episode_to_json(*game, r1.episodes[i]) == episode_to_json(*game, r2.episodes[i]));
  }
  CHECK(r1.summary.to_tsv() == r2.summary.to_tsv());

  // with exact planning, the published and the recomputed response maps
  // agree, so sharing them (or not) changes nothing at all
  ExperimentConfig shared = toy_cfg(AgentMode::kExpected);
  shared.episodes = 40;
  shared.seed = 11;
  ExperimentConfig solo = shared;
  solo.share_f = false;
  RunResult rs = run_experiment(shared);
  RunResult ro = run_experiment(solo);
  for (size_t i = 0; i < rs.episodes.size(); ++i) {
    CHECK(episode_to_json(*game, rs.episodes[i]) == episode_to_json(*game, ro.episodes[i]));
  }
}

TEST_CASE("config JSON: round-trip, overlay precedence, unknown keys") {
  ExperimentConfig cfg = toy_cfg(AgentMode::kImprovement);
  cfg.episodes = 7;
  cfg.seed = 99;
  cfg.planner.M = 123;
  cfg.planner.restrict_relay = true;
  cfg.raw_seed = true;
  cfg.run_name = "probe";
  const std::string text = config_to_json(cfg);

  ExperimentConfig back = default_config();
  apply_json(&back, text);
  CHECK(config_to_json(back) == text);
  CHECK(back.mode == AgentMode::kImprovement);
  CHECK(back.episodes == 7);
  CHECK(back.planner.M == 123);
  CHECK(back.planner.restrict_relay);
  CHECK(back.raw_seed);

  // overlay touches only the keys present
  ExperimentConfig part = cfg;
  apply_json(&part, R"({"episodes": 3, "planner": {"N": 9}})");
  CHECK(part.episodes == 3);
  CHECK(part.planner.N == 9);
  CHECK(part.planner.M == 123);
  CHECK(part.seed == 99);
  CHECK(part.mode == AgentMode::kImprovement);

  ExperimentConfig junk = cfg;
  CHECK_THROWS_AS(apply_json(&junk, R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(apply_json(&junk, R"({"planner": {"Q": 1}})"), ConfigError);
  CHECK_THROWS_AS(apply_json(&junk, "not json at all"), ConfigError);

  // file variant
  const std::string path = "/tmp/sedplan_cfg_test.json";
  {
    std::ofstream out(path);
    out << R"({"mode": "lookahead", "env_p": 0.5})";
  }
  ExperimentConfig filed = cfg;
  apply_json_file(&filed, path);
  CHECK(filed.mode == AgentMode::kLookahead);
  CHECK(filed.env_p == 0.5);
  std::remove(path.c_str());
  CHECK_THROWS_AS(apply_json_file(&filed, "/tmp/sedplan_no_such.json"), ConfigError);
}

TEST_CASE("paired comparison aligns seeds and differences the runs") {
  ExperimentConfig a = toy_cfg(AgentMode::kBlueprint);
  ExperimentConfig b = toy_cfg(AgentMode::kExpected);
  a.episodes = b.episodes = 50;
  a.seed = b.seed = 21;
  CompareResult cmp = compare(a, b);
  CHECK(cmp.a.mode == "blueprint");
  CHECK(cmp.b.mode == "expected");
  CHECK(cmp.a.mean_return == 0.0);
  // standing pat is always 0 here, so the paired deltas are b's returns
  CHECK(cmp.mean_delta ==
        doctest::Approx(cmp.b.mean_return - cmp.a.mean_return).epsilon(1e-12));
  CHECK(cmp.mean_delta > 0.0);
  CHECK(cmp.stderr_delta > 0.0);
  // TSV carries one row per run plus the delta row
  const std::string tsv = cmp.to_tsv();
  CHECK(tsv.find("\ndelta\t") != std::string::npos);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 4);

  ExperimentConfig off = b;
  off.seed = 22;
  CHECK_THROWS_AS(compare(a, off), ConfigError);
  off = b;
  off.episodes = 49;
  CHECK_THROWS_AS(compare(a, off), ConfigError);
}

TEST_CASE("run artifacts land on disk and match the in-process serialization") {
  const std::filesystem::path dir = "/tmp/sedplan_t_art";
  std::filesystem::remove_all(dir);
  ExperimentConfig cfg = toy_cfg(AgentMode::kExpected);
  cfg.episodes = 12;
  cfg.seed = 3;
  cfg.out_dir = dir.string();
  cfg.run_name = "toy";
  RunResult res = run_experiment(cfg);
  auto game = make_game(cfg);

  std::string jsonl;
  for (const EpisodeRecord& rec : res.episodes) jsonl += episode_to_json(*game, rec) + "\n";
  CHECK(slurp(dir / "toy.jsonl") == jsonl);
  CHECK(slurp(dir / "toy.summary.tsv") == res.summary.to_tsv());
  CHECK(slurp(dir / "toy.config.json") == config_to_json(cfg) + "\n");

  // summary TSV is a header plus one row with the right column count
  std::istringstream tsv(res.summary.to_tsv());
  std::string header, row;
  REQUIRE(std::getline(tsv, header));
  REQUIRE(std::getline(tsv, row));
  CHECK(std::count(header.begin(), header.end(), '\t') ==
        std::count(row.begin(), row.end(), '\t'));

  // the jsonl parses line by line and echoes the record fields
  std::istringstream lines(jsonl);
  std::string line;
  int idx = 0;
  while (std::getline(lines, line)) {
    json j = json::parse(line);
    CHECK(j["index"] == idx);
    CHECK(j["turns"] == 2);
    idx += 1;
  }
  CHECK(idx == 12);
  std::filesystem::remove_all(dir);
}

TEST_CASE("planned card-game episodes stay replayable and count their chains") {
  ExperimentConfig cfg;
  cfg.env = "mini-hanabi";
  cfg.mode = AgentMode::kExpected;
  cfg.episodes = 2;
  cfg.seed = 0;
  cfg.planner.M = 40;
  cfg.planner.N = 8;
  cfg.planner.K = 32;
  cfg.planner.restrict_relay = true;
  auto game = make_game(cfg);
  const auto& hanabi = dynamic_cast<const MiniHanabiGame&>(*game);
  RunResult res = run_experiment(cfg);
  for (const EpisodeRecord& rec : res.episodes) {
    CHECK(replay_return(*game, rec.history) == doctest::Approx(rec.ret).epsilon(1e-9));
    CHECK(rec.finesses ==
          static_cast<int>(classify_finesses(hanabi, rec.history).size()));
    CHECK(rec.ret >= 0.0);
    CHECK(rec.ret <= 9.0);
    CHECK(static_cast<int>(rec.events.size()) == rec.deviations);
  }
}

TEST_CASE("interactive play follows forced, automatic and quit commands") {
  ExperimentConfig cfg = toy_cfg(AgentMode::kBlueprint);
  cfg.seed = 2;

  // everything automatic: the stand-pat line is worth 0
  std::istringstream empty_in("");
  std::ostringstream out1;
  play_interactive(cfg, empty_in, out1);
  CHECK(out1.str().find("commands:") != std::string::npos);
  CHECK(out1.str().find("engine plays") != std::string::npos);
  CHECK(out1.str().find("final return 0") != std::string::npos);

  // forcing an illegal id reprompts, then a forced jump goes through
  std::istringstream in2("9\nnope\n1\nauto\n");
  std::ostringstream out2;
  play_interactive(cfg, in2, out2);
  CHECK(out2.str().find("illegal:") != std::string::npos);
  CHECK(out2.str().find("unrecognized input") != std::string::npos);
  CHECK(out2.str().find("seat 0 plays") != std::string::npos);
  CHECK(out2.str().find("final return") != std::string::npos);

  // quitting stops before any move lands
  std::istringstream in3("q\n");
  std::ostringstream out3;
  play_interactive(cfg, in3, out3);
  CHECK(out3.str().find("stopped after 0 moves") != std::string::npos);
}
