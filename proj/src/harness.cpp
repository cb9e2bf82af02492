#include "sedplan/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "sedplan/envs/finesse.hpp"
#include "sedplan/envs/mini_hanabi.hpp"
#include "sedplan/envs/trampoline_tiger.hpp"
#include "sedplan/envs/two_turn.hpp"

namespace sed {
namespace {

using nlohmann::json;

// Drives one episode under the configured mode: maintains the authoritative
// state, one pair belief tracker per (deviator, next seat) pair, and the
// single-unresolved-deviation protocol. All trackers receive every public
// event with a common informative flag, so every agent's belief stays a
// deterministic function of the public transcript.
class Referee {
 public:
  struct Move {
    Action a = -1;
    bool informative = true;
  };

  Referee(const Game& game, const Blueprint& pi, const ExperimentConfig& cfg,
          uint64_t episode_seed, bool force_exact)
      : game_(game), pi_(pi), cfg_(cfg), chance_rng_(Rng::derive(episode_seed, kChanceStream)) {
    state_ = game.new_initial_state();
    const int players = game.num_players();
    for (int p = 0; p < players; ++p) {
      agent_rng_.emplace_back(Rng::derive(episode_seed, kAgentStreamBase + p));
    }
    if (cfg.mode != AgentMode::kBlueprint) {
      for (int p = 0; p < players; ++p) {
        planners_.push_back(std::make_unique<Planner>(
            game, pi,
            resolve_planner_config(cfg, Rng::derive(episode_seed, kPlannerStreamBase + p),
                                   force_exact)));
      }
      // Pair tracker i covers (deviator i, responder i+1); every other seat
      // is pinned live against the authoritative deal, which the trackers
      // observe synchronously after each applied event.
      for (int i = 0; i < players; ++i) {
        PinSet pins;
        pins.part.assign(players, nullptr);
        for (int j = 0; j < players; ++j) {
          if (j != i && j != (i + 1) % players) pins.part[j] = &state_->deal().part[j];
        }
        trackers_.push_back(std::make_unique<BeliefTracker>(game, pi, pins));
      }
    }
  }

  Referee(const Referee&) = delete;
  Referee& operator=(const Referee&) = delete;

  bool done() const { return state_->is_terminal(); }
  bool at_chance() const { return state_->is_chance(); }
  const State& state() const { return *state_; }
  int current_player() const { return state_->current_player(); }
  std::vector<ChanceOutcome> chance_outcomes() const { return state_->chance_outcomes(); }

  void step_chance(const std::vector<int>& payload) {
    StepResult res = state_->apply_chance(payload);
    rec.history.entries.push_back({res.event, payload, res.reward});
    rec.ret += res.reward;
    feed(res.event, true);
  }

  void step_chance_sampled() { step_chance(state_->sample_chance_payload(chance_rng_)); }

  // Decision logic for the seat to act. Mutates only referee bookkeeping
  // (pending deviation, event records, planner call counters), never the
  // game state; call exactly once per decision node.
  Move choose_move() {
    const int p = state_->current_player();
    const int players = game_.num_players();
    const Deal& deal = state_->deal();
    const PublicContext& ctx = state_->public_context();

    // Response duty comes first and consumes the pending deviation.
    if (pending_ && pending_->responder == p) {
      Pending pd = std::move(*pending_);
      pending_.reset();
      DeviationEvent& ev = rec.events[pd.event_index];
      if (pd.detected) {
        // The responder reconstructs the response map from the pair belief
        // as it stood when the deviation was observed.
        const ResponseFunction* f = &pd.f;
        ResponseFunction local;
        if (!cfg_.share_f) {
          local = planners_[p]->response_function(
              planners_[p]->estimate(pd.belief_before, *pd.ctx_before, pd.deviator, p));
          f = &local;
        }
        if (f->has(pd.a1) && !f->responses.empty()) {
          ev.a2 = f->argmax_response(pd.a1);
          ev.responded = true;
          rec.responses += 1;
          return {ev.a2, false};
        }
      }
      return {blueprint_action(p), true};
    }

    const bool plan_now = !planners_.empty() && !pending_ &&
                          (cfg_.plan_turn < 0 || ctx.turn() == cfg_.plan_turn);

    if (plan_now &&
        (cfg_.mode == AgentMode::kExpected || cfg_.mode == AgentMode::kImprovement)) {
      const int responder = (p + 1) % players;
      const BeliefTracker& tr = *trackers_[p];
      Decision dec =
          planners_[p]->decide(tr.belief(), tr.context(), p, responder, game_.view_key(p, deal));
      if (dec.deviated) {
        Pending pd;
        pd.deviator = p;
        pd.responder = responder;
        pd.a1 = dec.action;
        pd.f = dec.f;
        pd.detected = detection_verdict(tr, p, responder, dec.action);
        pd.belief_before = tr.belief();
        pd.ctx_before = tr.context().clone();
        pd.event_index = rec.events.size();
        DeviationEvent ev;
        ev.turn = ctx.turn();
        ev.deviator = p;
        ev.responder = responder;
        ev.a1 = dec.action;
        ev.detected = pd.detected;
        ev.planned_value = dec.value;
        ev.policy_value = dec.policy_value;
        rec.events.push_back(ev);
        rec.deviations += 1;
        pending_ = std::move(pd);
        return {dec.action, false};
      }
      return {dec.action, true};
    }

    if (plan_now && cfg_.mode == AgentMode::kLookahead) {
      const BeliefTracker& tr = *trackers_[p];
      Decision dec = planners_[p]->lookahead_step(tr.belief(), tr.context(), p,
                                                  game_.view_key(p, deal));
      if (dec.deviated) {
        DeviationEvent ev;
        ev.turn = ctx.turn();
        ev.deviator = p;
        ev.a1 = dec.action;
        ev.planned_value = dec.value;
        ev.policy_value = dec.policy_value;
        rec.events.push_back(ev);
        rec.deviations += 1;
        return {dec.action, false};
      }
      return {dec.action, true};
    }

    return {blueprint_action(p), true};
  }

  void apply_move(const Move& mv) {
    StepResult res = state_->apply_action(mv.a);
    rec.history.entries.push_back({res.event, {}, res.reward});
    rec.ret += res.reward;
    rec.turns += 1;
    feed(res.event, mv.informative);
  }

  // User-forced move for interactive play: clears any response duty and
  // picks the informative flag from the action's blueprint likelihood so the
  // trackers are never contradicted.
  void force_move(Action a) {
    const int p = state_->current_player();
    if (pending_ && pending_->responder == p) pending_.reset();
    const double prob =
        pi_.action_prob(nullptr, p, state_->public_context(), state_->deal(), game_, a);
    apply_move({a, prob > 0.0});
  }

  EpisodeRecord rec;

 private:
  struct Pending {
    int deviator = -1;
    int responder = -1;
    Action a1 = -1;
    ResponseFunction f;
    bool detected = false;
    PublicBelief belief_before;  // pair belief at the deviation point
    std::unique_ptr<PublicContext> ctx_before;
    size_t event_index = 0;
  };

  void feed(const PublicEvent& ev, bool informative) {
    for (auto& t : trackers_) t->observe(ev, informative);
  }

  Action blueprint_action(int p) {
    return pi_.act(nullptr, p, state_->public_context(), state_->deal(), game_, agent_rng_[p]);
  }

  // The responder's own verdict on an observed action: impossible (up to
  // eps_p) under the policy given the responder's belief, which refines the
  // pair belief by the responder's private view.
  bool detection_verdict(const BeliefTracker& tr, int deviator, int responder, Action a1) const {
    const std::string rview = game_.view_key(responder, state_->deal());
    const ConditionalBelief cb = condition(game_, tr.belief(), responder, rview);
    const BlueprintMarginal m = marginal(pi_, game_, cb.dist, tr.context(), deviator, 0, 0);
    return m.prob[a1] <= cfg_.planner.eps_p;
  }

  const Game& game_;
  const Blueprint& pi_;
  const ExperimentConfig& cfg_;
  Rng chance_rng_;
  std::unique_ptr<State> state_;
  std::vector<Rng> agent_rng_;
  std::vector<std::unique_ptr<Planner>> planners_;
  std::vector<std::unique_ptr<BeliefTracker>> trackers_;
  std::optional<Pending> pending_;
};

std::string format_double(double v, int precision = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

SummaryReport summarize(const ExperimentConfig& cfg, const std::string& bp_name,
                        const std::vector<EpisodeRecord>& eps) {
  SummaryReport s;
  s.env = cfg.env;
  s.blueprint = bp_name;
  s.mode = to_string(cfg.mode);
  s.episodes = static_cast<int>(eps.size());
  if (eps.empty()) return s;
  double sum = 0.0;
  s.min_return = eps.front().ret;
  s.max_return = eps.front().ret;
  for (const EpisodeRecord& e : eps) {
    sum += e.ret;
    s.min_return = std::min(s.min_return, e.ret);
    s.max_return = std::max(s.max_return, e.ret);
    s.total_deviations += e.deviations;
    s.total_responses += e.responses;
    s.total_finesses += e.finesses;
  }
  s.mean_return = sum / static_cast<double>(eps.size());
  if (eps.size() > 1) {
    double ss = 0.0;
    for (const EpisodeRecord& e : eps) {
      const double d = e.ret - s.mean_return;
      ss += d * d;
    }
    s.stderr_return = std::sqrt(ss / static_cast<double>(eps.size() - 1)) /
                      std::sqrt(static_cast<double>(eps.size()));
  }
  return s;
}

void write_artifacts(const ExperimentConfig& cfg, const Game& game, const RunResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  {
    std::ofstream out(dir / (cfg.run_name + ".jsonl"), std::ios::binary);
    if (!out) throw ConfigError("cannot write episodes under " + cfg.out_dir);
    for (const EpisodeRecord& e : result.episodes) out << episode_to_json(game, e) << "\n";
  }
  {
    std::ofstream out(dir / (cfg.run_name + ".summary.tsv"), std::ios::binary);
    out << result.summary.to_tsv();
  }
  {
    std::ofstream out(dir / (cfg.run_name + ".config.json"), std::ios::binary);
    out << config_to_json(cfg) << "\n";
  }
}

}  // namespace

AgentMode agent_mode_from_string(const std::string& s) {
  if (s == "blueprint") return AgentMode::kBlueprint;
  if (s == "expected") return AgentMode::kExpected;
  if (s == "improvement") return AgentMode::kImprovement;
  if (s == "lookahead") return AgentMode::kLookahead;
  throw ConfigError("unknown mode '" + s +
                    "' (expected blueprint|expected|improvement|lookahead)");
}

std::string to_string(AgentMode m) {
  switch (m) {
    case AgentMode::kBlueprint: return "blueprint";
    case AgentMode::kExpected: return "expected";
    case AgentMode::kImprovement: return "improvement";
    case AgentMode::kLookahead: return "lookahead";
  }
  throw ConfigError("unhandled mode");
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  if (const char* dir = std::getenv("SEDPLAN_OUT_DIR"); dir != nullptr && *dir != '\0') {
    cfg.out_dir = dir;
  }
  return cfg;
}

std::unique_ptr<Game> make_game(const ExperimentConfig& cfg) {
  if (cfg.env == "trampoline") {
    TrampolineTigerParams tp;
    tp.p = cfg.env_p;
    return build_trampoline_tiger(tp);
  }
  if (cfg.env == "mini-hanabi") return std::make_unique<MiniHanabiGame>();
  const std::string prefix = "two-turn";
  if (cfg.env.rfind(prefix, 0) == 0) {
    uint64_t seed = 1;
    if (cfg.env.size() > prefix.size()) {
      if (cfg.env[prefix.size()] != ':') throw ConfigError("unknown env '" + cfg.env + "'");
      try {
        seed = std::stoull(cfg.env.substr(prefix.size() + 1));
      } catch (const std::exception&) {
        throw ConfigError("bad seed in env '" + cfg.env + "'");
      }
    }
    return std::make_unique<TwoTurnGame>(make_random_two_turn(seed));
  }
  throw ConfigError("unknown env '" + cfg.env + "' (expected trampoline|two-turn[:seed]|mini-hanabi)");
}

std::string default_blueprint_for(const std::string& env) {
  return env == "mini-hanabi" ? "scripted-hanabi" : "noop";
}

PlannerConfig resolve_planner_config(const ExperimentConfig& cfg, uint64_t seed,
                                     bool force_exact) {
  PlannerConfig pc = cfg.planner;
  pc.mode = cfg.mode == AgentMode::kImprovement ? PlannerConfig::Mode::kImprovement
                                                : PlannerConfig::Mode::kExpected;
  // The card game's returns span [0, 9]; a range-relative deviation gate
  // would demand nearly half a point of evidence, so it gets an absolute one.
  if (pc.eps_q < 0.0 && cfg.env == "mini-hanabi") pc.eps_q = 0.05;
  pc.seed = seed;
  if (force_exact) pc.exact = true;
  return pc;
}

std::string episode_to_json(const Game& game, const EpisodeRecord& rec) {
  json j;
  j["index"] = rec.index;
  j["seed"] = rec.seed;
  j["return"] = rec.ret;
  j["turns"] = rec.turns;
  j["deviations"] = rec.deviations;
  j["responses"] = rec.responses;
  j["finesses"] = rec.finesses;
  j["deal"] = rec.history.initial.part;
  json events = json::array();
  for (const DeviationEvent& e : rec.events) {
    json je;
    je["turn"] = e.turn;
    je["deviator"] = e.deviator;
    je["responder"] = e.responder;
    je["a1"] = e.a1;
    je["a1_name"] = game.action_name(e.deviator, e.a1);
    je["a2"] = e.a2;
    if (e.a2 >= 0 && e.responder >= 0) je["a2_name"] = game.action_name(e.responder, e.a2);
    je["detected"] = e.detected;
    je["responded"] = e.responded;
    je["planned_value"] = e.planned_value;
    je["policy_value"] = e.policy_value;
    events.push_back(std::move(je));
  }
  j["events"] = std::move(events);
  json hist = json::array();
  for (const HistoryEntry& h : rec.history.entries) {
    json jh;
    jh["kind"] = h.event.kind == PublicEvent::kChance ? "chance" : "action";
    jh["actor"] = h.event.actor;
    if (h.event.kind == PublicEvent::kAction) {
      jh["action"] = h.event.action;
      jh["name"] = game.action_name(h.event.actor, h.event.action);
    }
    jh["payload"] = h.event.payload;
    if (!h.chance_payload.empty()) jh["drawn"] = h.chance_payload;
    jh["reward"] = h.reward;
    hist.push_back(std::move(jh));
  }
  j["history"] = std::move(hist);
  return j.dump();
}

std::string SummaryReport::to_tsv() const {
  std::ostringstream os;
  os << "env\tblueprint\tmode\tepisodes\tmean_return\tstderr_return\tmin_return\tmax_return"
     << "\tdeviations\tresponses\tfinesses\n";
  os << env << "\t" << blueprint << "\t" << mode << "\t" << episodes << "\t"
     << format_double(mean_return) << "\t" << format_double(stderr_return) << "\t"
     << format_double(min_return) << "\t" << format_double(max_return) << "\t"
     << total_deviations << "\t" << total_responses << "\t" << total_finesses << "\n";
  return os.str();
}

std::string CompareResult::to_tsv() const {
  std::ostringstream os;
  os << "run\tenv\tblueprint\tmode\tepisodes\tmean_return\tstderr_return\tmin_return"
     << "\tmax_return\tdeviations\tresponses\tfinesses\n";
  const auto row = [&os](const char* tag, const SummaryReport& s) {
    os << tag << "\t" << s.env << "\t" << s.blueprint << "\t" << s.mode << "\t" << s.episodes
       << "\t" << format_double(s.mean_return) << "\t" << format_double(s.stderr_return) << "\t"
       << format_double(s.min_return) << "\t" << format_double(s.max_return) << "\t"
       << s.total_deviations << "\t" << s.total_responses << "\t" << s.total_finesses << "\n";
  };
  row("a", a);
  row("b", b);
  os << "delta\t" << a.env << "\t-\t-\t" << a.episodes << "\t" << format_double(mean_delta)
     << "\t" << format_double(stderr_delta) << "\t-\t-\t-\t-\t-\n";
  return os.str();
}

EpisodeRecord run_episode(const Game& game, const Blueprint& pi, const ExperimentConfig& cfg,
                          int index) {
  const uint64_t ep_seed = cfg.raw_seed ? cfg.seed + static_cast<uint64_t>(index)
                                        : Rng::derive(cfg.seed, static_cast<uint64_t>(index));
  const auto t0 = std::chrono::steady_clock::now();
  Referee ref(game, pi, cfg, ep_seed, /*force_exact=*/false);
  ref.rec.index = index;
  ref.rec.seed = ep_seed;
  bool initial_captured = false;
  while (!ref.done()) {
    if (ref.at_chance()) {
      ref.step_chance_sampled();
      continue;
    }
    if (!initial_captured) {
      ref.rec.history.initial = ref.state().deal();
      initial_captured = true;
    }
    ref.apply_move(ref.choose_move());
  }
  ref.rec.history.total_return = ref.rec.ret;
  if (const auto* mh = dynamic_cast<const MiniHanabiGame*>(&game)) {
    ref.rec.finesses = static_cast<int>(classify_finesses(*mh, ref.rec.history).size());
  }
  ref.rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return std::move(ref.rec);
}

RunResult run_experiment(const ExperimentConfig& cfg, std::ostream* log) {
  std::unique_ptr<Game> game = make_game(cfg);
  const std::string bp_name =
      cfg.blueprint.empty() ? default_blueprint_for(cfg.env) : cfg.blueprint;
  std::unique_ptr<Blueprint> pi = make_blueprint(*game, bp_name);
  RunResult out;
  out.episodes.reserve(static_cast<size_t>(std::max(cfg.episodes, 0)));
  for (int i = 0; i < cfg.episodes; ++i) {
    out.episodes.push_back(run_episode(*game, *pi, cfg, i));
    if (log) {
      const EpisodeRecord& e = out.episodes.back();
      *log << "episode " << e.index << " return " << e.ret << " deviations " << e.deviations
           << " responses " << e.responses << " finesses " << e.finesses << " wall "
           << format_double(e.wall_seconds, 3) << "s\n";
    }
  }
  out.summary = summarize(cfg, bp_name, out.episodes);
  if (!cfg.out_dir.empty()) write_artifacts(cfg, *game, out);
  return out;
}

CompareResult compare(const ExperimentConfig& a, const ExperimentConfig& b, std::ostream* log) {
  if (a.episodes != b.episodes || a.seed != b.seed) {
    throw ConfigError("compare: both runs need the same seed and episode count");
  }
  RunResult ra = run_experiment(a, log);
  RunResult rb = run_experiment(b, log);
  CompareResult out;
  out.a = ra.summary;
  out.b = rb.summary;
  const int n = a.episodes;
  if (n > 0) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rb.episodes[i].ret - ra.episodes[i].ret;
    out.mean_delta = sum / n;
    if (n > 1) {
      double ss = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = rb.episodes[i].ret - ra.episodes[i].ret - out.mean_delta;
        ss += d * d;
      }
      out.stderr_delta = std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
    }
  }
  return out;
}

double expected_episode_value(const ExperimentConfig& cfg) {
  std::unique_ptr<Game> game = make_game(cfg);
  const std::string bp_name =
      cfg.blueprint.empty() ? default_blueprint_for(cfg.env) : cfg.blueprint;
  std::unique_ptr<Blueprint> pi = make_blueprint(*game, bp_name);
  if (!pi->deterministic()) {
    throw ConfigError("expected_episode_value needs a deterministic blueprint");
  }
  // Depth-first enumeration of chance paths; each path replays the whole
  // protocol from scratch (the trackers cannot rewind), with planners forced
  // to exact mode so the replay is a deterministic function of the path.
  std::vector<int> path;
  std::function<double()> eval = [&]() -> double {
    Referee ref(*game, *pi, cfg, cfg.seed, /*force_exact=*/true);
    size_t consumed = 0;
    while (!ref.done()) {
      if (ref.at_chance()) {
        const std::vector<ChanceOutcome> outs = ref.chance_outcomes();
        if (consumed < path.size()) {
          ref.step_chance(outs[static_cast<size_t>(path[consumed])].payload);
          consumed += 1;
          continue;
        }
        double v = 0.0;
        for (size_t oi = 0; oi < outs.size(); ++oi) {
          if (outs[oi].prob <= 0.0) continue;
          path.push_back(static_cast<int>(oi));
          v += outs[oi].prob * eval();
          path.pop_back();
        }
        return v;
      }
      ref.apply_move(ref.choose_move());
    }
    return ref.rec.ret;
  };
  return eval();
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["env"] = cfg.env;
  j["blueprint"] = cfg.blueprint;
  j["mode"] = to_string(cfg.mode);
  j["episodes"] = cfg.episodes;
  j["seed"] = cfg.seed;
  j["share_f"] = cfg.share_f;
  j["plan_turn"] = cfg.plan_turn;
  j["env_p"] = cfg.env_p;
  j["raw_seed"] = cfg.raw_seed;
  j["out_dir"] = cfg.out_dir;
  j["run_name"] = cfg.run_name;
  json p;
  p["M"] = cfg.planner.M;
  p["N"] = cfg.planner.N;
  p["K"] = cfg.planner.K;
  p["eps_p"] = cfg.planner.eps_p;
  p["eps_q"] = cfg.planner.eps_q;
  p["temperature"] = cfg.planner.temperature;
  p["exact"] = cfg.planner.exact;
  p["restrict_relay"] = cfg.planner.restrict_relay;
  p["exact_budget"] = cfg.planner.exact_budget;
  j["planner"] = std::move(p);
  return j.dump(2);
}

void apply_json(ExperimentConfig* cfg, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config json: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config json must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "env") cfg->env = value.get<std::string>();
      else if (key == "blueprint") cfg->blueprint = value.get<std::string>();
      else if (key == "mode") cfg->mode = agent_mode_from_string(value.get<std::string>());
      else if (key == "episodes") cfg->episodes = value.get<int>();
      else if (key == "seed") cfg->seed = value.get<uint64_t>();
      else if (key == "share_f") cfg->share_f = value.get<bool>();
      else if (key == "plan_turn") cfg->plan_turn = value.get<int>();
      else if (key == "env_p") cfg->env_p = value.get<double>();
      else if (key == "raw_seed") cfg->raw_seed = value.get<bool>();
      else if (key == "out_dir") cfg->out_dir = value.get<std::string>();
      else if (key == "run_name") cfg->run_name = value.get<std::string>();
      else if (key == "planner") {
        if (!value.is_object()) throw ConfigError("config key 'planner' must be an object");
        for (const auto& [pk, pv] : value.items()) {
          if (pk == "M") cfg->planner.M = pv.get<int>();
          else if (pk == "N") cfg->planner.N = pv.get<int>();
          else if (pk == "K") cfg->planner.K = pv.get<int>();
          else if (pk == "eps_p") cfg->planner.eps_p = pv.get<double>();
          else if (pk == "eps_q") cfg->planner.eps_q = pv.get<double>();
          else if (pk == "temperature") cfg->planner.temperature = pv.get<double>();
          else if (pk == "exact") cfg->planner.exact = pv.get<bool>();
          else if (pk == "restrict_relay") cfg->planner.restrict_relay = pv.get<bool>();
          else if (pk == "exact_budget") cfg->planner.exact_budget = pv.get<int>();
          else throw ConfigError("unknown planner config key '" + pk + "'");
        }
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

void apply_json_file(ExperimentConfig* cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_json(cfg, buf.str());
}

void play_interactive(const ExperimentConfig& cfg, std::istream& in, std::ostream& out) {
  std::unique_ptr<Game> game = make_game(cfg);
  const std::string bp_name =
      cfg.blueprint.empty() ? default_blueprint_for(cfg.env) : cfg.blueprint;
  std::unique_ptr<Blueprint> pi = make_blueprint(*game, bp_name);
  const uint64_t ep_seed = Rng::derive(cfg.seed, 0);
  Referee ref(*game, *pi, cfg, ep_seed, /*force_exact=*/false);
  out << game->name() << " | blueprint " << bp_name << " | mode " << to_string(cfg.mode)
      << " | episode seed " << ep_seed << "\n";
  out << "commands: <action id> forces a move, empty/auto lets the engine move, quit stops\n";
  while (!ref.done()) {
    if (ref.at_chance()) {
      ref.step_chance_sampled();
      continue;
    }
    const int p = ref.current_player();
    out << "\n" << game->describe_public(ref.state().public_context()) << "\n";
    out << "seat " << p << " sees: " << game->describe_view(p, ref.state().deal()) << "\n";
    out << "legal:";
    for (Action a :
         game->legal_actions_for(p, ref.state().public_context(), ref.state().deal())) {
      out << "  " << a << "=" << game->action_name(p, a);
    }
    out << "\nseat " << p << "> " << std::flush;
    std::string line;
    if (!std::getline(in, line)) line = "auto";
    const auto first = line.find_first_not_of(" \t\r\n");
    line = first == std::string::npos ? "" : line.substr(first, line.find_last_not_of(" \t\r\n") - first + 1);
    if (line == "quit" || line == "q") {
      out << "stopped after " << ref.rec.turns << " moves, return so far " << ref.rec.ret << "\n";
      return;
    }
    if (line.empty() || line == "auto") {
      const Referee::Move mv = ref.choose_move();
      out << "engine plays " << game->action_name(p, mv.a) << "\n";
      ref.apply_move(mv);
      continue;
    }
    Action forced = -1;
    try {
      forced = std::stoi(line);
    } catch (const std::exception&) {
      out << "unrecognized input '" << line << "'\n";
      continue;
    }
    try {
      ref.force_move(forced);
      out << "seat " << p << " plays " << game->action_name(p, forced) << "\n";
    } catch (const IllegalActionError& e) {
      out << "illegal: " << e.what() << "\n";
    }
  }
  out << "\nfinal return " << ref.rec.ret << " after " << ref.rec.turns << " moves\n";
}

}  // namespace sed
