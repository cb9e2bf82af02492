#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "sedplan/belief.hpp"
#include "sedplan/blueprint.hpp"
#include "sedplan/game.hpp"
#include "sedplan/planner.hpp"

namespace sed {

// Who plans during an episode and how.
enum class AgentMode {
  kBlueprint,    // everyone follows the joint policy
  kExpected,     // deviation planning, responses scored by pooled value
  kImprovement,  // deviation planning, responses scored by improvement odds
  kLookahead,    // unilateral one-step lookahead, no coordinated response
};

AgentMode agent_mode_from_string(const std::string& s);
std::string to_string(AgentMode m);

struct ExperimentConfig {
  std::string env = "trampoline";  // "trampoline", "two-turn[:seed]", "mini-hanabi"
  std::string blueprint;           // empty = the environment's default
  AgentMode mode = AgentMode::kBlueprint;
  int episodes = 100;
  uint64_t seed = 1;
  PlannerConfig planner;
  bool share_f = true;   // responder reuses the deviator's published response map
  int plan_turn = -1;    // plan only at this public turn; -1 = every turn
  double env_p = 0.1;    // toy environments' hidden-state probability knob
  // Episode i normally runs on a seed derived from (seed, i); raw_seed makes
  // it run on seed + i literally, so a run can target episodes found by a
  // seed scan (e.g. mined situations).
  bool raw_seed = false;
  std::string out_dir;   // run artifacts land here; empty = no files
  std::string run_name = "run";
};

// Defaults, with out_dir seeded from $SEDPLAN_OUT_DIR when set.
ExperimentConfig default_config();

// JSON round-trip. apply_json overlays only the keys present in the text, so
// precedence is defaults < config file < explicit flags.
std::string config_to_json(const ExperimentConfig& cfg);
void apply_json(ExperimentConfig* cfg, const std::string& json_text);
void apply_json_file(ExperimentConfig* cfg, const std::string& path);

// Environment / blueprint factories for the names ExperimentConfig uses.
std::unique_ptr<Game> make_game(const ExperimentConfig& cfg);
std::string default_blueprint_for(const std::string& env);

// The planner configuration an experiment hands a seat: response mode derived
// from the agent mode, environment-specific eps_q default resolved, and the
// given per-seat seed installed.
PlannerConfig resolve_planner_config(const ExperimentConfig& cfg, uint64_t seed,
                                     bool force_exact);

// One planned excursion off the joint policy and what came of it.
struct DeviationEvent {
  int turn = -1;
  int deviator = -1;
  int responder = -1;
  Action a1 = -1;
  Action a2 = -1;           // the response, when one was played
  bool detected = false;    // responder's verdict at observation time
  bool responded = false;   // an off-policy response was actually played
  double planned_value = 0.0;
  double policy_value = 0.0;
};

struct EpisodeRecord {
  int index = 0;
  uint64_t seed = 0;
  double ret = 0.0;
  int turns = 0;
  int deviations = 0;
  int responses = 0;
  int finesses = 0;  // completed relay chains (mini-hanabi only)
  std::vector<DeviationEvent> events;
  History history;
  // Measured for operator logs only; deliberately left out of the serialized
  // record so reruns produce byte-identical artifacts.
  double wall_seconds = 0.0;
};

std::string episode_to_json(const Game& game, const EpisodeRecord& rec);

struct SummaryReport {
  std::string env, blueprint, mode;
  int episodes = 0;
  double mean_return = 0.0;
  double stderr_return = 0.0;
  double min_return = 0.0;
  double max_return = 0.0;
  int total_deviations = 0;
  int total_responses = 0;
  int total_finesses = 0;
  std::string to_tsv() const;  // header line + one data row
};

struct RunResult {
  std::vector<EpisodeRecord> episodes;
  SummaryReport summary;
};

// Run cfg.episodes episodes. Episode i is driven entirely by a seed derived
// from (cfg.seed, i): chance, agents and planner calls each get their own
// derived stream, so a rerun reproduces every artifact byte for byte. When
// cfg.out_dir is set, writes <run_name>.jsonl, <run_name>.summary.tsv and
// <run_name>.config.json there. `log` (when given) receives progress lines,
// including wall time; it is never part of the artifacts.
RunResult run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

// Run one episode in isolation (exposed for tests and bindings).
EpisodeRecord run_episode(const Game& game, const Blueprint& pi, const ExperimentConfig& cfg,
                          int index);

// Paired comparison: both configs run on the same derived episode seeds,
// deltas are per-episode b - a.
struct CompareResult {
  SummaryReport a, b;
  double mean_delta = 0.0;
  double stderr_delta = 0.0;
  std::string to_tsv() const;
};
CompareResult compare(const ExperimentConfig& a, const ExperimentConfig& b,
                      std::ostream* log = nullptr);

// Exact expected episode value: enumerates every chance branch and replays
// the episode protocol along each, with planners forced to exact mode.
// Requires a deterministic blueprint.
double expected_episode_value(const ExperimentConfig& cfg);

// One episode on a terminal: each decision node prints the public state and
// the actor's view, then reads a command from `in`: an action id to force
// that move, "auto" (or an empty line / EOF) to let the configured mode act,
// "quit" to stop. Forced moves that differ from the engine's choice are fed
// to the belief trackers as uninformative, so they never contradict the
// tracked blueprint.
void play_interactive(const ExperimentConfig& cfg, std::istream& in, std::ostream& out);

}  // namespace sed
