#include "sedplan/envs/two_turn.hpp"

#include <algorithm>

namespace sed {
namespace {

class TwoTurnContext : public PublicContext {
 public:
  std::unique_ptr<PublicContext> clone() const override {
    return std::make_unique<TwoTurnContext>(*this);
  }
  void on_event(const PublicEvent& ev) override {
    if (ev.kind == PublicEvent::kChance) {
      dealt = true;
      return;
    }
    actions.push_back(ev.action);
  }
  bool terminal() const override { return actions.size() >= 2; }
  int player_to_act() const override { return terminal() ? -1 : static_cast<int>(actions.size()); }
  int turn() const override { return static_cast<int>(actions.size()); }

  bool dealt = false;
  std::vector<Action> actions;
};

class TwoTurnState : public State {
 public:
  TwoTurnState(const TwoTurnGame* game, TwoTurnContext ctx, Deal deal)
      : game_(game), ctx_(std::move(ctx)), deal_(std::move(deal)) {}

  std::unique_ptr<State> clone() const override { return std::make_unique<TwoTurnState>(*this); }
  bool is_chance() const override { return !ctx_.dealt; }
  bool is_terminal() const override { return ctx_.terminal(); }
  int current_player() const override { return ctx_.player_to_act(); }

  std::vector<Action> legal_actions() const override {
    return game_->legal_actions_for(current_player(), ctx_, deal_);
  }

  std::vector<ChanceOutcome> chance_outcomes() const override {
    const auto& s = game_->spec();
    std::vector<ChanceOutcome> out;
    out.reserve(s.chance.size());
    for (int v1 = 0; v1 < s.n1; ++v1)
      for (int v2 = 0; v2 < s.n2; ++v2) {
        double w = s.chance[v1 * s.n2 + v2];
        if (w > 0.0) out.push_back({{v1, v2}, w / game_->chance_total()});
      }
    return out;
  }

  StepResult apply_chance(const std::vector<int>& payload) override {
    if (ctx_.dealt) throw IllegalActionError("two-turn: not at chance node");
    deal_.part = {{payload[0]}, {payload[1]}};
    StepResult r;
    r.event = PublicEvent{PublicEvent::kChance, -1, -1, {}};
    ctx_.on_event(r.event);
    return r;
  }

  StepResult apply_action(Action a) override {
    if (!ctx_.dealt || ctx_.terminal()) throw IllegalActionError("two-turn: no decision pending");
    int player = ctx_.player_to_act();
    if (!game_->legal(player, deal_.part[player][0], a))
      throw IllegalActionError("two-turn: illegal action " + std::to_string(a));
    StepResult r;
    r.event = PublicEvent{PublicEvent::kAction, player, a, {}};
    ctx_.on_event(r.event);
    if (ctx_.terminal())
      r.reward = game_->reward_at(deal_.part[0][0], deal_.part[1][0], ctx_.actions[0],
                                  ctx_.actions[1]);
    return r;
  }

  const Deal& deal() const override { return deal_; }
  const PublicContext& public_context() const override { return ctx_; }

 private:
  const TwoTurnGame* game_;
  TwoTurnContext ctx_;
  Deal deal_;
};

}  // namespace

TwoTurnGame::TwoTurnGame(TwoTurnSpec spec) : spec_(std::move(spec)) {
  if (spec_.chance.size() != static_cast<size_t>(spec_.n1 * spec_.n2))
    throw ConfigError("two-turn: chance table size mismatch");
  size_t want = static_cast<size_t>(spec_.n1) * spec_.n2 * spec_.a1_names.size() *
                spec_.a2_names.size();
  if (spec_.reward.size() != want) throw ConfigError("two-turn: reward table size mismatch");
  min_reward_ = *std::min_element(spec_.reward.begin(), spec_.reward.end());
  max_reward_ = *std::max_element(spec_.reward.begin(), spec_.reward.end());
  for (double w : spec_.chance) {
    if (w < 0.0) throw ConfigError("two-turn: negative chance weight");
    chance_total_ += w;
  }
  if (chance_total_ <= 0.0) throw ConfigError("two-turn: empty chance table");
}

int TwoTurnGame::num_actions(int player) const {
  return static_cast<int>(player == 0 ? spec_.a1_names.size() : spec_.a2_names.size());
}

std::string TwoTurnGame::action_name(int player, Action a) const {
  return player == 0 ? spec_.a1_names.at(a) : spec_.a2_names.at(a);
}

bool TwoTurnGame::legal(int player, int v, Action a) const {
  const auto& mask = player == 0 ? spec_.legal1 : spec_.legal2;
  if (mask.empty()) return a >= 0 && a < num_actions(player);
  return mask[v * num_actions(player) + a] != 0;
}

std::unique_ptr<State> TwoTurnGame::new_initial_state() const {
  return std::make_unique<TwoTurnState>(this, TwoTurnContext{}, Deal{{{}, {}}});
}

std::unique_ptr<State> TwoTurnGame::state_from(const PublicContext& ctx, const Deal& deal) const {
  const auto& c = static_cast<const TwoTurnContext&>(ctx);
  if (!c.dealt) throw InconsistentDealError("two-turn: context precedes the deal");
  if (deal.part.size() != 2 || deal.part[0].size() != 1 || deal.part[1].size() != 1)
    throw InconsistentDealError("two-turn: malformed deal");
  for (size_t i = 0; i < c.actions.size(); ++i)
    if (!legal(static_cast<int>(i), deal.part[i][0], c.actions[i]))
      throw InconsistentDealError("two-turn: transcript action illegal under deal");
  return std::make_unique<TwoTurnState>(this, c, deal);
}

std::unique_ptr<PublicContext> TwoTurnGame::initial_public_context() const {
  return std::make_unique<TwoTurnContext>();
}

void TwoTurnGame::initial_support(const PinSet* pins, std::vector<Deal>* deals,
                                  std::vector<double>* probs) const {
  for (int v1 = 0; v1 < spec_.n1; ++v1) {
    if (pins && pins->at(0) && !pins->at(0)->empty() && (*pins->at(0))[0] != v1) continue;
    for (int v2 = 0; v2 < spec_.n2; ++v2) {
      if (pins && pins->at(1) && !pins->at(1)->empty() && (*pins->at(1))[0] != v2) continue;
      double w = spec_.chance[v1 * spec_.n2 + v2];
      if (w <= 0.0) continue;
      deals->push_back(Deal{{{v1}, {v2}}});
      probs->push_back(w / chance_total_);
    }
  }
}

void TwoTurnGame::advance_deal(const PublicContext& before, const Deal& deal,
                               const PublicEvent& ev, const PinSet* pins,
                               std::vector<Deal>* deals, std::vector<double>* probs) const {
  if (ev.kind == PublicEvent::kChance) {
    if (!deal.part.empty() && !deal.part[0].empty()) {
      deals->push_back(deal);  // already dealt: nothing publicly new
      probs->push_back(1.0);
      return;
    }
    initial_support(pins, deals, probs);
    return;
  }
  // Action events carry no hidden reveal here, but they do rule out deals
  // under which the action would have been illegal.
  if (!legal(ev.actor, deal.part[ev.actor][0], ev.action)) return;
  deals->push_back(deal);
  probs->push_back(1.0);
}

std::vector<Action> TwoTurnGame::legal_actions_for(int player, const PublicContext&,
                                                   const Deal& deal) const {
  std::vector<Action> out;
  for (Action a = 0; a < num_actions(player); ++a)
    if (legal(player, deal.part[player][0], a)) out.push_back(a);
  return out;
}

std::string TwoTurnGame::view_key(int player, const Deal& deal) const {
  return encode_ints(deal.part[player]);
}

std::string TwoTurnGame::common_view_key(int, int, const Deal&) const { return ""; }

std::string TwoTurnGame::infostate_key(int player, const PublicContext& ctx,
                                       const Deal& deal) const {
  const auto& c = static_cast<const TwoTurnContext&>(ctx);
  return "p" + std::to_string(player) + "/" + encode_ints(c.actions) + "/" +
         view_key(player, deal);
}

std::string TwoTurnGame::describe_public(const PublicContext& ctx) const {
  const auto& c = static_cast<const TwoTurnContext&>(ctx);
  std::string s = "turn " + std::to_string(c.turn()) + "; actions:";
  for (size_t i = 0; i < c.actions.size(); ++i)
    s += " " + action_name(static_cast<int>(i), c.actions[i]);
  return s;
}

TwoTurnSpec make_random_two_turn(uint64_t seed) {
  Rng rng(Rng::derive(seed, 0x7707));
  TwoTurnSpec s;
  s.name = "random-two-turn-" + std::to_string(seed);
  s.n1 = 2 + static_cast<int>(rng.uniform_int(3));
  s.n2 = 2 + static_cast<int>(rng.uniform_int(3));
  int a1 = 2 + static_cast<int>(rng.uniform_int(2));
  int a2 = 2 + static_cast<int>(rng.uniform_int(2));
  for (int i = 0; i < a1; ++i) s.a1_names.push_back("x" + std::to_string(i));
  for (int i = 0; i < a2; ++i) s.a2_names.push_back("y" + std::to_string(i));
  for (int i = 0; i < s.n1 * s.n2; ++i) s.chance.push_back(0.2 + rng.next_double());
  for (int i = 0; i < s.n1 * s.n2 * a1 * a2; ++i)
    s.reward.push_back(2.0 * rng.next_double() - 1.0);
  return s;
}

}  // namespace sed
