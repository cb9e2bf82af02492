#include "sedplan/envs/finesse.hpp"

#include <memory>

#include "sedplan/belief.hpp"

namespace sed {
namespace {

const MiniHanabiContext& as_hanabi(const PublicContext& ctx) {
  return dynamic_cast<const MiniHanabiContext&>(ctx);
}

// Structural half of the situation test at a decision point (everything
// except the zero-marginal requirement).
bool match_situation(const MiniHanabiGame& g, const MiniHanabiContext& h, const Deal& deal,
                     int deviator, FinesseSituation* sit) {
  const int players = g.num_players();
  const int responder = (deviator + 1) % players;
  const int relay = (deviator + 2) % players;
  if (h.hint_tokens < 1) return false;
  if (h.hand_count[responder] <= 0 || h.hand_count[relay] <= 0) return false;
  const int s2 = h.hand_count[responder] - 1;
  const int x = deal.part[responder][s2];
  if (!h.playable(x) || h.hinted[responder][s2]) return false;
  if (g.card_rank(x) + 1 >= g.params().ranks) return false;
  const int y = x + 1;  // direct successor: same color, next rank
  // The relay must owe no plays, so the new promise is its next move.
  for (char pr : h.promised[relay]) {
    if (pr) return false;
  }
  const std::vector<int>& relay_hand = deal.part[relay];
  for (int u = 0; u < static_cast<int>(relay_hand.size()); ++u) {
    if (relay_hand[u] != y || h.hinted[relay][u]) continue;
    for (int type = 0; type < 2; ++type) {
      const int value = type == 0 ? g.card_color(y) : g.card_rank(y);
      const Action a = g.hint_action(2, type, value);
      const int mask = g.hint_mask(a, relay_hand);
      int newly = 0;
      int only = -1;
      for (int v = 0; v < static_cast<int>(relay_hand.size()); ++v) {
        if (((mask >> v) & 1) && !h.hinted[relay][v]) {
          newly += 1;
          only = v;
        }
      }
      if (newly == 1 && only == u) {
        sit->deviator = deviator;
        sit->responder = responder;
        sit->relay = relay;
        sit->hint = a;
        sit->responder_slot = s2;
        sit->relay_slot = u;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<FinesseSituation> mine_finesse(const MiniHanabiGame& game, const Blueprint& policy,
                                           uint64_t seed, int min_turn, bool first_only) {
  if (game.num_players() < 3) throw ConfigError("finesse mining needs at least three seats");
  if (!policy.deterministic()) throw ConfigError("finesse mining needs a deterministic policy");
  std::vector<FinesseSituation> out;
  std::unique_ptr<State> state = game.new_initial_state();
  Rng chance(Rng::derive(seed, kChanceStream));
  Rng actor_rng(Rng::derive(seed, kAgentStreamBase));
  const int players = game.num_players();

  // Pair beliefs: tracker[i] conditions on every seat outside {i, i+1},
  // pinned live against the authoritative deal.
  std::vector<std::unique_ptr<BeliefTracker>> trackers;
  for (int i = 0; i < players; ++i) {
    PinSet pins;
    pins.part.assign(players, nullptr);
    for (int j = 0; j < players; ++j) {
      if (j != i && j != (i + 1) % players) pins.part[j] = &state->deal().part[j];
    }
    trackers.push_back(std::make_unique<BeliefTracker>(game, policy, pins));
  }
  auto feed = [&](const PublicEvent& ev) {
    for (auto& t : trackers) t->observe(ev);
  };

  while (!state->is_terminal()) {
    if (state->is_chance()) {
      feed(state->apply_chance(state->sample_chance_payload(chance)).event);
      continue;
    }
    const int p = state->current_player();
    const MiniHanabiContext& h = as_hanabi(state->public_context());
    if (h.turn_count >= min_turn) {
      FinesseSituation sit;
      if (match_situation(game, h, state->deal(), p, &sit)) {
        // The hint must be impossible under the convention given everything
        // the pair commonly knows.
        const BlueprintMarginal m = marginal(policy, game, trackers[p]->belief(), h, p, 0, 0);
        if (m.prob[sit.hint] == 0.0) {
          sit.seed = seed;
          sit.turn = h.turn_count;
          sit.deal = state->deal().encode();
          out.push_back(sit);
          if (first_only) return out;
        }
      }
    }
    feed(state->apply_action(policy.act(nullptr, p, h, state->deal(), game, actor_rng)).event);
  }
  return out;
}

bool finesse_completes(const MiniHanabiGame& game, const Blueprint& policy,
                       const FinesseSituation& sit) {
  std::unique_ptr<State> state = game.new_initial_state();
  Rng chance(Rng::derive(sit.seed, kChanceStream));
  Rng actor_rng(Rng::derive(sit.seed, kAgentStreamBase));
  while (true) {
    if (state->is_terminal()) throw ProtocolError("episode ended before the recorded turn");
    if (state->is_chance()) {
      state->apply_chance(state->sample_chance_payload(chance));
      continue;
    }
    if (as_hanabi(state->public_context()).turn_count == sit.turn) break;
    const int p = state->current_player();
    state->apply_action(
        policy.act(nullptr, p, state->public_context(), state->deal(), game, actor_rng));
  }
  if (state->current_player() != sit.deviator) {
    throw ProtocolError("wrong seat to act at the recorded turn");
  }
  if (state->deal().encode() != sit.deal) {
    throw ProtocolError("replayed deal differs from the recorded situation");
  }
  state->apply_action(sit.hint);
  auto skip_chance = [&]() {
    while (!state->is_terminal() && state->is_chance()) {
      state->apply_chance(state->sample_chance_payload(chance));
    }
  };
  skip_chance();
  if (state->is_terminal() || state->current_player() != sit.responder) return false;
  if (state->apply_action(game.play_action(sit.responder_slot)).reward != 1.0) return false;
  skip_chance();
  if (state->is_terminal() || state->current_player() != sit.relay) return false;
  const Action a3 = policy.act(nullptr, sit.relay, state->public_context(), state->deal(), game,
                               actor_rng);
  if (a3 != game.play_action(sit.relay_slot)) return false;
  return state->apply_action(a3).reward == 1.0;
}

std::vector<FinesseRecord> classify_finesses(const MiniHanabiGame& game, const History& history) {
  std::vector<FinesseRecord> out;
  const int players = game.num_players();
  struct Step {
    MiniHanabiContext before;
    PublicEvent ev;
    double reward;
  };
  MiniHanabiContext ctx(game.params());
  std::vector<Step> steps;
  for (const HistoryEntry& e : history.entries) {
    if (e.event.kind == PublicEvent::kAction) steps.push_back({ctx, e.event, e.reward});
    ctx.on_event(e.event);
  }
  for (size_t k = 0; k + 2 < steps.size(); ++k) {
    const Step& s0 = steps[k];
    if (!game.is_hint(s0.ev.action)) continue;
    const int d = s0.ev.actor;
    const int responder = (d + 1) % players;
    const int relay = (d + 2) % players;
    if ((d + game.hint_offset(s0.ev.action)) % players != relay) continue;
    const int mask = s0.ev.payload[0];
    int newly = 0;
    int slot = -1;
    for (int v = 0; v < static_cast<int>(s0.before.hinted[relay].size()); ++v) {
      if (((mask >> v) & 1) && !s0.before.hinted[relay][v]) {
        newly += 1;
        slot = v;
      }
    }
    if (newly != 1) continue;
    const int n2 = s0.before.hand_count[responder];
    if (n2 <= 0 || s0.before.promised[responder][n2 - 1]) continue;
    const Step& s1 = steps[k + 1];
    if (s1.ev.actor != responder || !game.is_play(s1.ev.action)) continue;
    if (game.play_slot(s1.ev.action) != n2 - 1 || s1.reward != 1.0) continue;
    const Step& s2 = steps[k + 2];
    if (s2.ev.actor != relay || !game.is_play(s2.ev.action)) continue;
    if (game.play_slot(s2.ev.action) != slot || s2.reward != 1.0) continue;
    out.push_back({s0.before.turn_count, d, responder, relay, slot});
  }
  return out;
}

}  // namespace sed
