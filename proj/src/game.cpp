#include "sedplan/game.hpp"

#include <cmath>

namespace sed {

std::string encode_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string Deal::encode() const {
  std::string s;
  for (size_t p = 0; p < part.size(); ++p) {
    if (p) s += '|';
    s += encode_ints(part[p]);
  }
  return s;
}

std::vector<int> State::sample_chance_payload(Rng& rng) const {
  auto outcomes = chance_outcomes();
  std::vector<double> w(outcomes.size());
  double total = 0.0;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    w[i] = outcomes[i].prob;
    total += w[i];
  }
  return outcomes[rng.sample_discrete(w, total)].payload;
}

std::string Game::infostate_key(int player, const PublicContext& ctx, const Deal& deal) const {
  // Public part: the decision turn count alone is not enough; games that
  // need richer public digests override this. The default concatenates the
  // turn counter with the player's private view, which is sufficient for
  // the bundled one-shot games where the public action history has length
  // equal to the turn count and is implied by it.
  return "p" + std::to_string(player) + "/t" + std::to_string(ctx.turn()) + "/" +
         view_key(player, deal);
}

std::string Game::describe_view(int player, const Deal& deal) const {
  return view_key(player, deal);
}

double replay_return(const Game& game, const History& history) {
  auto state = game.new_initial_state();
  double total = 0.0;
  for (const auto& entry : history.entries) {
    if (state->is_terminal()) throw ProtocolError("replay: event after terminal state");
    StepResult step;
    if (entry.event.kind == PublicEvent::kChance) {
      if (!state->is_chance()) throw ProtocolError("replay: chance entry at decision node");
      step = state->apply_chance(entry.chance_payload);
    } else {
      if (state->is_chance()) throw ProtocolError("replay: action entry at chance node");
      step = state->apply_action(entry.event.action);
    }
    total += step.reward;
    if (std::abs(step.reward - entry.reward) > 1e-12)
      throw ProtocolError("replay: reward mismatch");
    if (!(step.event == entry.event)) throw ProtocolError("replay: public event mismatch");
  }
  if (std::abs(total - history.total_return) > 1e-9)
    throw ProtocolError("replay: total return mismatch");
  return total;
}

}  // namespace sed
