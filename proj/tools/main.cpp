#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sedplan/envs/finesse.hpp"
#include "sedplan/envs/mini_hanabi.hpp"
#include "sedplan/harness.hpp"

namespace {

using sed::Action;
using sed::ExperimentConfig;

// Everything a subcommand needs to turn parsed flags into a config with the
// precedence defaults < config file < explicit flags.
struct ExperimentFlags {
  ExperimentConfig fv;  // flag values land here during parsing
  std::string mode_str = "blueprint";
  std::string config_path;
  bool quiet = false;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags* ef) {
  cmd->add_option("--env", ef->fv.env, "environment: trampoline|two-turn[:seed]|mini-hanabi");
  cmd->add_option("--blueprint", ef->fv.blueprint,
                  "blueprint name (noop|uniform|scripted-hanabi|tabular:<file>); "
                  "empty picks the environment default");
  cmd->add_option("--mode", ef->mode_str, "blueprint|expected|improvement|lookahead");
  cmd->add_option("--episodes", ef->fv.episodes, "episodes to run");
  cmd->add_option("--seed", ef->fv.seed, "root seed of the run's seed tree");
  cmd->add_option("-M,--deals", ef->fv.planner.M, "hidden-state draws per estimate");
  cmd->add_option("-N,--rollouts", ef->fv.planner.N, "rollouts per sampled value");
  cmd->add_option("-K,--decision-rollouts", ef->fv.planner.K,
                  "rollouts behind the final deviation decision (<=0 auto)");
  cmd->add_option("--eps-p", ef->fv.planner.eps_p, "deviation marginal threshold");
  cmd->add_option("--eps-q", ef->fv.planner.eps_q, "required value gain (<0 auto)");
  cmd->add_option("--temp", ef->fv.planner.temperature, "response softmax temperature (<=0 auto)");
  cmd->add_flag("--share-f,!--no-share-f", ef->fv.share_f,
                "responder reuses the deviator's response map");
  cmd->add_option("--plan-turn", ef->fv.plan_turn, "plan only at this public turn (-1 = all)");
  cmd->add_option("--env-p", ef->fv.env_p, "toy environments' hidden-state probability");
  cmd->add_flag("--raw-seed", ef->fv.raw_seed,
                "episode i runs on seed+i literally (targets seed-scan finds)");
  cmd->add_flag("--exact", ef->fv.planner.exact, "exact enumeration instead of sampling");
  cmd->add_flag("--restrict-relay", ef->fv.planner.restrict_relay,
                "search only relay-directed hints / play responses");
  cmd->add_option("--out", ef->fv.out_dir, "directory for run artifacts");
  cmd->add_option("--name", ef->fv.run_name, "artifact base name");
  cmd->add_option("--config", ef->config_path, "JSON config file (flags override it)");
  cmd->add_flag("--quiet", ef->quiet, "suppress progress lines on stderr");
}

ExperimentConfig finalize_config(const CLI::App& cmd, const ExperimentFlags& ef) {
  ExperimentConfig cfg = sed::default_config();
  if (!ef.config_path.empty()) sed::apply_json_file(&cfg, ef.config_path);
  if (cmd.count("--env")) cfg.env = ef.fv.env;
  if (cmd.count("--blueprint")) cfg.blueprint = ef.fv.blueprint;
  if (cmd.count("--mode")) cfg.mode = sed::agent_mode_from_string(ef.mode_str);
  if (cmd.count("--episodes")) cfg.episodes = ef.fv.episodes;
  if (cmd.count("--seed")) cfg.seed = ef.fv.seed;
  if (cmd.count("--deals")) cfg.planner.M = ef.fv.planner.M;
  if (cmd.count("--rollouts")) cfg.planner.N = ef.fv.planner.N;
  if (cmd.count("--decision-rollouts")) cfg.planner.K = ef.fv.planner.K;
  if (cmd.count("--eps-p")) cfg.planner.eps_p = ef.fv.planner.eps_p;
  if (cmd.count("--eps-q")) cfg.planner.eps_q = ef.fv.planner.eps_q;
  if (cmd.count("--temp")) cfg.planner.temperature = ef.fv.planner.temperature;
  if (cmd.count("--share-f") || cmd.count("--no-share-f")) cfg.share_f = ef.fv.share_f;
  if (cmd.count("--plan-turn")) cfg.plan_turn = ef.fv.plan_turn;
  if (cmd.count("--env-p")) cfg.env_p = ef.fv.env_p;
  if (cmd.count("--raw-seed")) cfg.raw_seed = ef.fv.raw_seed;
  if (cmd.count("--exact")) cfg.planner.exact = ef.fv.planner.exact;
  if (cmd.count("--restrict-relay")) cfg.planner.restrict_relay = ef.fv.planner.restrict_relay;
  if (cmd.count("--out")) cfg.out_dir = ef.fv.out_dir;
  if (cmd.count("--name")) cfg.run_name = ef.fv.run_name;
  return cfg;
}

void print_table(std::ostream& out, const char* title, const sed::Game& game, int deviator,
                 int responder, const sed::QEstimates& est,
                 const std::vector<std::vector<double>>& table) {
  out << title << " (rows: deviations, cols: responses)\n";
  for (size_t di = 0; di < est.sets.deviations.size(); ++di) {
    out << "  " << game.action_name(deviator, est.sets.deviations[di]) << ":";
    for (size_t ri = 0; ri < est.sets.responses.size(); ++ri) {
      out << "  " << game.action_name(responder, est.sets.responses[ri]) << "="
          << table[di][ri];
    }
    out << "\n";
  }
}

int cmd_oracle(const ExperimentConfig& cfg, int turn, int deviator_flag) {
  std::unique_ptr<sed::Game> game = sed::make_game(cfg);
  const std::string bp_name =
      cfg.blueprint.empty() ? sed::default_blueprint_for(cfg.env) : cfg.blueprint;
  std::unique_ptr<sed::Blueprint> pi = sed::make_blueprint(*game, bp_name);
  const uint64_t ep_seed = sed::Rng::derive(cfg.seed, 0);
  std::unique_ptr<sed::State> state = game->new_initial_state();
  sed::Rng chance(sed::Rng::derive(ep_seed, sed::kChanceStream));
  std::vector<sed::Rng> agent_rng;
  const int players = game->num_players();
  for (int p = 0; p < players; ++p) {
    agent_rng.emplace_back(sed::Rng::derive(ep_seed, sed::kAgentStreamBase + p));
  }
  std::vector<std::unique_ptr<sed::BeliefTracker>> trackers;
  for (int i = 0; i < players; ++i) {
    sed::PinSet pins;
    pins.part.assign(players, nullptr);
    for (int j = 0; j < players; ++j) {
      if (j != i && j != (i + 1) % players) pins.part[j] = &state->deal().part[j];
    }
    trackers.push_back(std::make_unique<sed::BeliefTracker>(*game, *pi, pins));
  }
  auto feed = [&](const sed::PublicEvent& ev) {
    for (auto& t : trackers) t->observe(ev);
  };
  while (!state->is_terminal()) {
    if (state->is_chance()) {
      feed(state->apply_chance(state->sample_chance_payload(chance)).event);
      continue;
    }
    const int p = state->current_player();
    if (state->public_context().turn() >= turn && (deviator_flag < 0 || deviator_flag == p)) {
      break;
    }
    feed(state
             ->apply_action(
                 pi->act(nullptr, p, state->public_context(), state->deal(), *game, agent_rng[p]))
             .event);
  }
  if (state->is_terminal()) {
    std::cerr << "episode ended before reaching the requested decision point\n";
    return 1;
  }
  const int d = state->current_player();
  const int r = (d + 1) % players;
  std::ostream& out = std::cout;
  out << game->describe_public(state->public_context()) << "\n";
  out << "deviator seat " << d << ", responder seat " << r << ", true view "
      << game->describe_view(d, state->deal()) << "\n";

  sed::Planner planner(
      *game, *pi,
      sed::resolve_planner_config(cfg, sed::Rng::derive(ep_seed, sed::kPlannerStreamBase + d),
                                  false));
  const sed::PublicBelief& b = trackers[d]->belief();
  const sed::PublicContext& ctx = trackers[d]->context();
  out << "pair belief support: " << b.support.size() << " deals\n";

  sed::QEstimates est = planner.estimate(b, ctx, d, r);
  out << "policy value: " << est.policy_value << (est.exact ? " (exact)" : " (sampled)") << "\n";
  out << "deviations:";
  for (Action a : est.sets.deviations) {
    out << "  " << game->action_name(d, a) << " [marginal " << est.sets.marginal[a] << "]";
  }
  out << "\nresponses:";
  for (Action a : est.sets.responses) out << "  " << game->action_name(r, a);
  out << "\n";
  if (est.sets.deviations.empty() || est.sets.responses.empty()) {
    out << "no deviation pairs available here\n";
    return 0;
  }
  print_table(out, "pooled expected value", *game, d, r, est, est.pooled_value);
  print_table(out, "pooled improvement odds", *game, d, r, est, est.pooled_improve);
  const sed::ResponseFunction f = planner.response_function(est);
  out << "response map (temperature " << f.temperature << "):\n";
  for (size_t di = 0; di < f.deviations.size(); ++di) {
    out << "  " << game->action_name(d, f.deviations[di]) << " ->";
    for (size_t ri = 0; ri < f.responses.size(); ++ri) {
      out << "  " << game->action_name(r, f.responses[ri]) << "=" << f.prob[di][ri];
    }
    out << "\n";
  }
  const sed::Decision dec = planner.decide(b, ctx, d, r, game->view_key(d, state->deal()));
  out << "decision: " << game->action_name(d, dec.action)
      << (dec.deviated ? " (deviates)" : " (stays on policy)") << ", value " << dec.value
      << " vs policy " << dec.policy_value << "\n";
  return 0;
}

int cmd_mine(const ExperimentConfig& cfg, int count, uint64_t start_seed, int min_turn,
             uint64_t max_seeds, bool verify, const std::string& out_path, bool quiet) {
  std::unique_ptr<sed::Game> game = sed::make_game(cfg);
  const auto* mh = dynamic_cast<const sed::MiniHanabiGame*>(game.get());
  if (mh == nullptr) throw sed::ConfigError("mine needs --env mini-hanabi");
  const std::string bp_name =
      cfg.blueprint.empty() ? sed::default_blueprint_for(cfg.env) : cfg.blueprint;
  std::unique_ptr<sed::Blueprint> pi = sed::make_blueprint(*game, bp_name);
  std::unique_ptr<std::ofstream> file;
  if (!out_path.empty()) {
    file = std::make_unique<std::ofstream>(out_path, std::ios::binary);
    if (!*file) throw sed::ConfigError("cannot write " + out_path);
  }
  std::ostream& sink = file ? *file : std::cout;
  int found = 0;
  uint64_t scanned = 0;
  for (uint64_t s = start_seed; found < count && scanned < max_seeds; ++s, ++scanned) {
    for (const sed::FinesseSituation& sit : mine_finesse(*mh, *pi, s, min_turn, true)) {
      if (verify && !finesse_completes(*mh, *pi, sit)) continue;
      nlohmann::json j;
      j["seed"] = sit.seed;
      j["turn"] = sit.turn;
      j["deviator"] = sit.deviator;
      j["responder"] = sit.responder;
      j["relay"] = sit.relay;
      j["hint"] = sit.hint;
      j["hint_name"] = game->action_name(sit.deviator, sit.hint);
      j["responder_slot"] = sit.responder_slot;
      j["relay_slot"] = sit.relay_slot;
      j["deal"] = sit.deal;
      sink << j.dump() << "\n";
      found += 1;
    }
  }
  if (!quiet) {
    std::cerr << "found " << found << " situation(s) in " << scanned << " seed(s)\n";
  }
  return found == count ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planners that coordinate through legible deviations from a shared policy"};
  app.require_subcommand(1);

  ExperimentFlags run_ef;
  CLI::App* run = app.add_subcommand("run", "run an experiment and print its summary");
  add_experiment_flags(run, &run_ef);

  ExperimentFlags cmp_ef;
  std::string mode_a = "blueprint", mode_b = "expected";
  CLI::App* cmp = app.add_subcommand("compare", "paired comparison of two modes on shared seeds");
  add_experiment_flags(cmp, &cmp_ef);
  cmp->add_option("--mode-a", mode_a, "first run's mode");
  cmp->add_option("--mode-b", mode_b, "second run's mode");

  ExperimentFlags play_ef;
  CLI::App* play = app.add_subcommand("play", "step through one episode interactively");
  add_experiment_flags(play, &play_ef);

  ExperimentFlags oracle_ef;
  int oracle_turn = 0;
  int oracle_deviator = -1;
  CLI::App* oracle =
      app.add_subcommand("oracle", "dump the planner's tables at one decision point");
  add_experiment_flags(oracle, &oracle_ef);
  oracle->add_option("--turn", oracle_turn, "public turn to stop the blueprint replay at");
  oracle->add_option("--deviator", oracle_deviator, "required acting seat (-1 = whoever acts)");

  ExperimentFlags mine_ef;
  int mine_count = 10;
  uint64_t mine_start = 0, mine_max = 100000;
  int mine_min_turn = 2;
  bool mine_verify = false;
  std::string mine_out;
  CLI::App* mine = app.add_subcommand("mine", "scan seeds for relay-chain situations");
  add_experiment_flags(mine, &mine_ef);
  mine->add_option("--count", mine_count, "situations to collect");
  mine->add_option("--start-seed", mine_start, "first seed to scan");
  mine->add_option("--max-seeds", mine_max, "seed scan budget");
  mine->add_option("--min-turn", mine_min_turn, "earliest qualifying public turn");
  mine->add_flag("--verify", mine_verify, "keep only situations whose chain completes");
  mine->add_option("--mine-out", mine_out, "write situations to this file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const ExperimentConfig cfg = finalize_config(*run, run_ef);
      const sed::RunResult res = sed::run_experiment(cfg, run_ef.quiet ? nullptr : &std::cerr);
      std::cout << res.summary.to_tsv();
      return 0;
    }
    if (cmp->parsed()) {
      ExperimentConfig base = finalize_config(*cmp, cmp_ef);
      ExperimentConfig a = base, b = base;
      a.mode = sed::agent_mode_from_string(mode_a);
      b.mode = sed::agent_mode_from_string(mode_b);
      a.run_name = base.run_name + "_a";
      b.run_name = base.run_name + "_b";
      const sed::CompareResult res = sed::compare(a, b, cmp_ef.quiet ? nullptr : &std::cerr);
      std::cout << res.to_tsv();
      return 0;
    }
    if (play->parsed()) {
      sed::play_interactive(finalize_config(*play, play_ef), std::cin, std::cout);
      return 0;
    }
    if (oracle->parsed()) {
      return cmd_oracle(finalize_config(*oracle, oracle_ef), oracle_turn, oracle_deviator);
    }
    if (mine->parsed()) {
      return cmd_mine(finalize_config(*mine, mine_ef), mine_count, mine_start, mine_min_turn,
                      mine_max, mine_verify, mine_out, mine_ef.quiet);
    }
  } catch (const sed::SedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
