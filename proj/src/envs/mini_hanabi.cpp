#include "sedplan/envs/mini_hanabi.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace sed {

namespace {

const MiniHanabiContext& as_hanabi(const PublicContext& ctx) {
  const auto* h = dynamic_cast<const MiniHanabiContext*>(&ctx);
  if (h == nullptr) throw ConfigError("public context is not a mini-hanabi context");
  return *h;
}

// Copies of each card id still unseen under a hypothesis: full deck minus
// publicly removed cards minus the hypothesised hands.
std::vector<int> remaining_counts(const MiniHanabiGame& g, const MiniHanabiContext& ctx,
                                  const Deal& deal) {
  std::vector<int> left(g.num_card_types());
  for (int c = 0; c < g.num_card_types(); ++c) left[c] = g.card_copies(c) - ctx.gone[c];
  for (const auto& part : deal.part) {
    for (int id : part) left[id] -= 1;
  }
  return left;
}

}  // namespace

// ---------- context ----------

MiniHanabiContext::MiniHanabiContext(const MiniHanabiParams& p) : params(p) {
  hint_tokens = p.hint_tokens;
  lives = p.lives;
  pile.assign(p.colors, 0);
  gone.assign(p.colors * p.ranks, 0);
  hand_count.assign(p.players, 0);
  hinted.assign(p.players, {});
  promised.assign(p.players, {});
  int per_color = 0;
  for (int r = 0; r < p.ranks; ++r) per_color += p.dups[r];
  deck_remaining = per_color * p.colors;
}

std::unique_ptr<PublicContext> MiniHanabiContext::clone() const {
  return std::make_unique<MiniHanabiContext>(*this);
}

bool MiniHanabiContext::playable(int card) const {
  return pile[card / params.ranks] == card % params.ranks;
}

void MiniHanabiContext::on_event(const PublicEvent& ev) {
  if (ev.kind == PublicEvent::kChance) {
    const int r = ev.actor;
    hand_count[r] += 1;
    hinted[r].push_back(0);
    promised[r].push_back(0);
    deck_remaining -= 1;
    cards_dealt += 1;
    if (!dealt && cards_dealt == params.players * params.hand) dealt = true;
    if (dealt && deck_remaining == 0 && grace_left < 0) grace_left = params.players;
    return;
  }
  const int actor = ev.actor;
  const Action a = ev.action;
  const int hand = params.hand;
  if (a < hand) {  // play slot a
    const int card = ev.payload[0];
    gone[card] += 1;
    hinted[actor].erase(hinted[actor].begin() + a);
    promised[actor].erase(promised[actor].begin() + a);
    hand_count[actor] -= 1;
    if (playable(card)) {
      pile[card / params.ranks] += 1;
      score += 1;
    } else {
      lives -= 1;
      if (lives == 0) bombed = true;
    }
  } else if (a < 2 * hand) {  // discard slot a-hand
    const int s = a - hand;
    gone[ev.payload[0]] += 1;
    hinted[actor].erase(hinted[actor].begin() + s);
    promised[actor].erase(promised[actor].begin() + s);
    hand_count[actor] -= 1;
    hint_tokens = std::min(params.hint_tokens, hint_tokens + 1);
  } else {  // hint; payload carries the touch mask
    const int stride = params.colors + params.ranks;
    const int offset = (a - 2 * hand) / stride + 1;
    const int target = (actor + offset) % params.players;
    const int mask = ev.payload[0];
    hint_tokens -= 1;
    for (int s = 0; s < static_cast<int>(hinted[target].size()); ++s) {
      if (!((mask >> s) & 1)) continue;
      if (!hinted[target][s]) promised[target][s] = 1;
      hinted[target][s] = 1;
    }
  }
  turn_count += 1;
  to_act = (actor + 1) % params.players;
  if (grace_left > 0) grace_left -= 1;
}

bool MiniHanabiContext::terminal() const {
  return bombed || score == params.colors * params.ranks || grace_left == 0 ||
         turn_count >= params.max_turns;
}

int MiniHanabiContext::player_to_act() const { return terminal() ? -1 : to_act; }

// ---------- state ----------

class MiniHanabiState : public State {
 public:
  explicit MiniHanabiState(const MiniHanabiGame& game) : game_(game), ctx_(game.params()) {
    deal_.part.assign(game.params().players, {});
  }
  MiniHanabiState(const MiniHanabiGame& game, const MiniHanabiContext& ctx, Deal deal)
      : game_(game), ctx_(ctx), deal_(std::move(deal)) {}

  std::unique_ptr<State> clone() const override { return std::make_unique<MiniHanabiState>(*this); }

  bool is_terminal() const override { return ctx_.terminal(); }
  bool is_chance() const override {
    return !is_terminal() && (!ctx_.dealt || pending_draw_ >= 0);
  }
  int current_player() const override {
    return (is_terminal() || is_chance()) ? -1 : ctx_.to_act;
  }

  std::vector<Action> legal_actions() const override {
    return game_.legal_actions_for(ctx_.to_act, ctx_, deal_);
  }

  std::vector<ChanceOutcome> chance_outcomes() const override {
    if (!is_chance()) return {};
    const std::vector<int> left = remaining_counts(game_, ctx_, deal_);
    const int total = std::accumulate(left.begin(), left.end(), 0);
    std::vector<ChanceOutcome> out;
    for (int c = 0; c < game_.num_card_types(); ++c) {
      if (left[c] <= 0) continue;
      out.push_back({{c}, static_cast<double>(left[c]) / total});
    }
    return out;
  }

  StepResult apply_chance(const std::vector<int>& payload) override {
    if (!is_chance()) throw IllegalActionError("no chance event pending");
    const int r = draw_target();
    const int card = payload.at(0);
    if (card < 0 || card >= game_.num_card_types() ||
        remaining_counts(game_, ctx_, deal_)[card] <= 0) {
      throw InconsistentDealError("drawn card is not available in the deck");
    }
    deal_.part[r].push_back(card);
    pending_draw_ = -1;
    PublicEvent ev;
    ev.kind = PublicEvent::kChance;
    ev.actor = r;
    ctx_.on_event(ev);
    return {0.0, ev};
  }

  StepResult apply_action(Action a) override {
    if (is_terminal() || is_chance()) throw IllegalActionError("no decision pending");
    const int p = ctx_.to_act;
    const std::vector<Action> legal = legal_actions();
    if (std::find(legal.begin(), legal.end(), a) == legal.end()) {
      throw IllegalActionError("illegal action " + game_.action_name(p, a));
    }
    PublicEvent ev;
    ev.kind = PublicEvent::kAction;
    ev.actor = p;
    ev.action = a;
    double reward = 0.0;
    bool drew = false;
    if (game_.is_play(a)) {
      const int card = deal_.part[p][game_.play_slot(a)];
      ev.payload = {card};
      if (ctx_.playable(card)) {
        reward = 1.0;
      } else if (ctx_.lives == 1) {
        // Third misplay: cancel everything scored so far.
        reward = -static_cast<double>(ctx_.score);
      }
      deal_.part[p].erase(deal_.part[p].begin() + game_.play_slot(a));
      drew = true;
    } else if (game_.is_discard(a)) {
      const int s = game_.discard_slot(a);
      ev.payload = {deal_.part[p][s]};
      deal_.part[p].erase(deal_.part[p].begin() + s);
      drew = true;
    } else {
      const int target = (p + game_.hint_offset(a)) % game_.num_players();
      ev.payload = {game_.hint_mask(a, deal_.part[target])};
    }
    ctx_.on_event(ev);
    pending_draw_ = (drew && ctx_.deck_remaining > 0 && !ctx_.terminal()) ? p : -1;
    return {reward, ev};
  }

  const Deal& deal() const override { return deal_; }
  const PublicContext& public_context() const override { return ctx_; }

 private:
  int draw_target() const {
    if (!ctx_.dealt) {
      for (int p = 0; p < game_.num_players(); ++p) {
        if (static_cast<int>(deal_.part[p].size()) < game_.params().hand) return p;
      }
    }
    return pending_draw_;
  }

  const MiniHanabiGame& game_;
  MiniHanabiContext ctx_;
  Deal deal_;
  int pending_draw_ = -1;
};

// ---------- game ----------

MiniHanabiGame::MiniHanabiGame(MiniHanabiParams params) : params_(std::move(params)) {
  if (params_.colors < 1 || params_.ranks < 1 || params_.hand < 1 || params_.players < 2) {
    throw ConfigError("mini-hanabi dimensions must be positive (and at least two players)");
  }
  if (static_cast<int>(params_.dups.size()) != params_.ranks) {
    throw ConfigError("mini-hanabi needs one duplicate count per rank");
  }
  for (int d : params_.dups) {
    if (d < 1) throw ConfigError("every rank needs at least one copy");
  }
  if (params_.hand > 15) throw ConfigError("hand too large for bitmask payloads");
  if (deck_size() < params_.players * params_.hand + 1) {
    throw ConfigError("deck too small to deal the hands");
  }
}

int MiniHanabiGame::deck_size() const {
  int per_color = 0;
  for (int r = 0; r < params_.ranks; ++r) per_color += params_.dups[r];
  return per_color * params_.colors;
}

Action MiniHanabiGame::hint_action(int offset, int type, int value) const {
  const int stride = params_.colors + params_.ranks;
  return 2 * params_.hand + (offset - 1) * stride + (type == 0 ? value : params_.colors + value);
}

int MiniHanabiGame::hint_offset(Action a) const {
  return (a - 2 * params_.hand) / (params_.colors + params_.ranks) + 1;
}

int MiniHanabiGame::hint_type(Action a) const {
  const int rem = (a - 2 * params_.hand) % (params_.colors + params_.ranks);
  return rem < params_.colors ? 0 : 1;
}

int MiniHanabiGame::hint_value(Action a) const {
  const int rem = (a - 2 * params_.hand) % (params_.colors + params_.ranks);
  return rem < params_.colors ? rem : rem - params_.colors;
}

int MiniHanabiGame::hint_mask(Action a, const std::vector<int>& target_hand) const {
  const int type = hint_type(a);
  const int value = hint_value(a);
  int mask = 0;
  for (size_t u = 0; u < target_hand.size(); ++u) {
    const int match = type == 0 ? card_color(target_hand[u]) : card_rank(target_hand[u]);
    if (match == value) mask |= 1 << u;
  }
  return mask;
}

int MiniHanabiGame::num_actions(int /*player*/) const {
  return 2 * params_.hand + (params_.players - 1) * (params_.colors + params_.ranks);
}

std::string MiniHanabiGame::action_name(int player, Action a) const {
  std::ostringstream os;
  if (is_play(a)) {
    os << "play:" << play_slot(a);
  } else if (is_discard(a)) {
    os << "discard:" << discard_slot(a);
  } else {
    const int target = (player + hint_offset(a)) % params_.players;
    os << "hint@" << target << (hint_type(a) == 0 ? ":color=" : ":rank=") << hint_value(a);
  }
  return os.str();
}

std::unique_ptr<State> MiniHanabiGame::new_initial_state() const {
  return std::make_unique<MiniHanabiState>(*this);
}

std::unique_ptr<State> MiniHanabiGame::state_from(const PublicContext& ctx,
                                                  const Deal& deal) const {
  const MiniHanabiContext& h = as_hanabi(ctx);
  if (!h.dealt) throw InconsistentDealError("cannot reconstruct before the deal completes");
  if (static_cast<int>(deal.part.size()) != params_.players) {
    throw InconsistentDealError("deal has the wrong number of hands");
  }
  for (int p = 0; p < params_.players; ++p) {
    if (static_cast<int>(deal.part[p].size()) != h.hand_count[p]) {
      throw InconsistentDealError("hypothesised hand size disagrees with the transcript");
    }
    for (int id : deal.part[p]) {
      if (id < 0 || id >= num_card_types()) throw InconsistentDealError("card id out of range");
    }
  }
  for (int left : remaining_counts(*this, h, deal)) {
    if (left < 0) throw InconsistentDealError("hypothesis uses more copies than the deck holds");
  }
  return std::make_unique<MiniHanabiState>(*this, h, deal);
}

std::unique_ptr<PublicContext> MiniHanabiGame::initial_public_context() const {
  return std::make_unique<MiniHanabiContext>(params_);
}

void MiniHanabiGame::initial_support(const PinSet* pins, std::vector<Deal>* deals,
                                     std::vector<double>* probs) const {
  std::vector<int> left(num_card_types());
  for (int c = 0; c < num_card_types(); ++c) left[c] = card_copies(c);

  Deal deal;
  deal.part.assign(params_.players, {});
  // Deal in player-major, slot order; pinned hands are forced and consume
  // their cards, free slots branch over every available card type.
  std::vector<std::pair<int, int>> slots;  // (player, slot)
  for (int p = 0; p < params_.players; ++p) {
    for (int s = 0; s < params_.hand; ++s) slots.push_back({p, s});
  }
  const size_t guard = 2000000;

  std::function<void(size_t, double)> rec = [&](size_t i, double w) {
    if (i == slots.size()) {
      if (deals->size() >= guard) throw GuardError("initial support enumeration too large");
      deals->push_back(deal);
      probs->push_back(w);
      return;
    }
    const auto [p, s] = slots[i];
    const std::vector<int>* pin = pins ? pins->at(p) : nullptr;
    if (pin) {
      if (static_cast<int>(pin->size()) < params_.hand) {
        throw ConfigError("pinned hand shorter than the hand size");
      }
      const int c = (*pin)[s];
      if (left[c] <= 0) return;  // pin inconsistent with other pins
      left[c] -= 1;
      deal.part[p].push_back(c);
      rec(i + 1, w);
      deal.part[p].pop_back();
      left[c] += 1;
      return;
    }
    for (int c = 0; c < num_card_types(); ++c) {
      if (left[c] <= 0) continue;
      const double avail = static_cast<double>(left[c]);
      left[c] -= 1;
      deal.part[p].push_back(c);
      rec(i + 1, w * avail);
      deal.part[p].pop_back();
      left[c] += 1;
    }
  };
  rec(0, 1.0);

  double total = 0.0;
  for (double w : *probs) total += w;
  if (total <= 0.0) throw ContradictionError("no initial deal consistent with the pins");
  for (double& w : *probs) w /= total;
}

void MiniHanabiGame::advance_deal(const PublicContext& before, const Deal& deal,
                                  const PublicEvent& ev, const PinSet* pins,
                                  std::vector<Deal>* deals, std::vector<double>* probs) const {
  const MiniHanabiContext& h = as_hanabi(before);
  if (ev.kind == PublicEvent::kChance) {
    const int r = ev.actor;
    const std::vector<int>* pin = pins ? pins->at(r) : nullptr;
    const std::vector<int> left = remaining_counts(*this, h, deal);
    if (pin) {
      // Live pin: the authoritative hand already contains the drawn card at
      // the hypothesis's next index.
      const size_t idx = deal.part[r].size();
      if (idx >= pin->size()) return;
      const int card = (*pin)[idx];
      if (card < 0 || card >= num_card_types() || left[card] <= 0) return;
      Deal nd = deal;
      nd.part[r].push_back(card);
      deals->push_back(std::move(nd));
      probs->push_back(1.0);
      return;
    }
    for (int c = 0; c < num_card_types(); ++c) {
      if (left[c] <= 0) continue;
      Deal nd = deal;
      nd.part[r].push_back(c);
      deals->push_back(std::move(nd));
      probs->push_back(static_cast<double>(left[c]));
    }
    return;
  }
  const Action a = ev.action;
  const int actor = ev.actor;
  if (is_play(a) || is_discard(a)) {
    const int s = is_play(a) ? play_slot(a) : discard_slot(a);
    if (s >= static_cast<int>(deal.part[actor].size())) return;
    if (deal.part[actor][s] != ev.payload[0]) return;  // revealed card disagrees
    Deal nd = deal;
    nd.part[actor].erase(nd.part[actor].begin() + s);
    deals->push_back(std::move(nd));
    probs->push_back(1.0);
    return;
  }
  const int target = (actor + hint_offset(a)) % params_.players;
  if (hint_mask(a, deal.part[target]) != ev.payload[0]) return;  // mask disagrees
  deals->push_back(deal);
  probs->push_back(1.0);
}

std::vector<Action> MiniHanabiGame::legal_actions_for(int player, const PublicContext& ctx,
                                                      const Deal& deal) const {
  const MiniHanabiContext& h = as_hanabi(ctx);
  std::vector<Action> out;
  if (!h.dealt || h.terminal()) return out;
  const int n = static_cast<int>(deal.part[player].size());
  for (int s = 0; s < n; ++s) out.push_back(play_action(s));
  for (int s = 0; s < n; ++s) out.push_back(discard_action(s));
  if (h.hint_tokens >= 1) {
    for (int off = 1; off < params_.players; ++off) {
      const int t = (player + off) % params_.players;
      for (int type = 0; type < 2; ++type) {
        const int values = type == 0 ? params_.colors : params_.ranks;
        for (int v = 0; v < values; ++v) {
          const Action a = hint_action(off, type, v);
          if (hint_mask(a, deal.part[t]) != 0) out.push_back(a);
        }
      }
    }
    std::sort(out.begin(), out.end());
  }
  return out;
}

std::string MiniHanabiGame::view_key(int player, const Deal& deal) const {
  std::ostringstream os;
  for (int j = 0; j < params_.players; ++j) {
    if (j == player) continue;
    os << j << ":" << encode_ints(deal.part[j]) << ";";
  }
  return os.str();
}

std::string MiniHanabiGame::common_view_key(int p1, int p2, const Deal& deal) const {
  std::ostringstream os;
  for (int j = 0; j < params_.players; ++j) {
    if (j == p1 || j == p2) continue;
    os << j << ":" << encode_ints(deal.part[j]) << ";";
  }
  return os.str();
}

ActionTraits MiniHanabiGame::action_traits(int player, Action a) const {
  ActionTraits tr;
  if (is_play(a)) {
    tr.is_play = true;
  } else if (is_hint(a)) {
    tr.is_hint = true;
    tr.hint_target = (player + hint_offset(a)) % params_.players;
  }
  return tr;
}

std::string MiniHanabiGame::describe_public(const PublicContext& ctx) const {
  const MiniHanabiContext& h = as_hanabi(ctx);
  std::ostringstream os;
  os << "turn=" << h.turn_count << " to_act=" << h.to_act << " tokens=" << h.hint_tokens
     << " lives=" << h.lives << " score=" << h.score << " deck=" << h.deck_remaining
     << " pile=" << encode_ints(h.pile);
  return os.str();
}

std::string MiniHanabiGame::describe_view(int player, const Deal& deal) const {
  std::ostringstream os;
  os << "p" << player << " sees";
  for (int j = 0; j < params_.players; ++j) {
    if (j == player) continue;
    os << " p" << j << "=[";
    for (size_t s = 0; s < deal.part[j].size(); ++s) {
      if (s) os << " ";
      os << "c" << card_color(deal.part[j][s]) << "r" << card_rank(deal.part[j][s]);
    }
    os << "]";
  }
  return os.str();
}

// ---------- scripted convention ----------

void ScriptedHanabiBlueprint::action_distribution(const PublicBelief*, int player,
                                                  const PublicContext& ctx, const Deal& deal,
                                                  const Game& game,
                                                  std::vector<double>* out) const {
  const auto& g = dynamic_cast<const MiniHanabiGame&>(game);
  const MiniHanabiContext& h = as_hanabi(ctx);
  out->assign(g.num_actions(player), 0.0);

  Action chosen = -1;
  for (int s = 0; s < static_cast<int>(h.promised[player].size()); ++s) {
    if (h.promised[player][s]) {
      chosen = g.play_action(s);
      break;
    }
  }
  if (chosen < 0 && h.hint_tokens >= 1) {
    for (int off = 1; off < g.num_players() && chosen < 0; ++off) {
      const int t = (player + off) % g.num_players();
      const std::vector<int>& hand = deal.part[t];
      for (int s = 0; s < static_cast<int>(hand.size()) && chosen < 0; ++s) {
        if (h.hinted[t][s]) continue;
        if (!h.playable(hand[s])) continue;
        for (int type = 0; type < 2 && chosen < 0; ++type) {
          const int value = type == 0 ? g.card_color(hand[s]) : g.card_rank(hand[s]);
          const Action a = g.hint_action(off, type, value);
          const int mask = g.hint_mask(a, hand);
          int newly = 0;
          for (int u = 0; u < static_cast<int>(hand.size()); ++u) {
            if (((mask >> u) & 1) && !h.hinted[t][u]) newly += 1;
          }
          if (newly == 1) chosen = a;  // the single new touch is slot s itself
        }
      }
    }
  }
  if (chosen < 0 && h.hand_count[player] > 0) chosen = g.discard_action(0);
  if (chosen < 0) {
    const std::vector<Action> legal = g.legal_actions_for(player, ctx, deal);
    if (legal.empty()) throw ProtocolError("no legal action available");
    chosen = legal[0];
  }
  (*out)[chosen] = 1.0;
}

}  // namespace sed
