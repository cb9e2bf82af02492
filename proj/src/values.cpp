#include "sedplan/values.hpp"

namespace sed {
namespace {

double walk_exact(State& st, const Game& game, const Blueprint& pi,
                  const PublicBelief* pi_belief, const std::vector<Action>& prefix,
                  size_t prefix_idx, int* budget) {
  if (st.is_terminal()) return 0.0;
  if (--*budget < 0) throw GuardError("exact_return: node budget exhausted");
  double v = 0.0;
  if (st.is_chance()) {
    for (const auto& o : st.chance_outcomes()) {
      auto child = st.clone();
      StepResult r = child->apply_chance(o.payload);
      v += o.prob * (r.reward + walk_exact(*child, game, pi, pi_belief, prefix, prefix_idx, budget));
    }
    return v;
  }
  int player = st.current_player();
  if (prefix_idx < prefix.size()) {
    auto child = st.clone();
    StepResult r = child->apply_action(prefix[prefix_idx]);
    return r.reward + walk_exact(*child, game, pi, pi_belief, prefix, prefix_idx + 1, budget);
  }
  std::vector<double> dist;
  pi.action_distribution(pi_belief, player, st.public_context(), st.deal(), game, &dist);
  for (Action a = 0; a < static_cast<Action>(dist.size()); ++a) {
    if (dist[a] <= 0.0) continue;
    auto child = st.clone();
    StepResult r = child->apply_action(a);
    v += dist[a] * (r.reward + walk_exact(*child, game, pi, pi_belief, prefix, prefix_idx, budget));
  }
  return v;
}

}  // namespace

double rollout_return(const Game& game, const PublicContext& ctx, const Deal& deal,
                      const Blueprint& pi, const PublicBelief* pi_belief,
                      const std::vector<Action>& prefix, Rng& rng) {
  auto st = game.state_from(ctx, deal);
  size_t prefix_idx = 0;
  double total = 0.0;
  int guard = game.max_turns() * 4 + 16;
  while (!st->is_terminal()) {
    if (--guard < 0) throw SedError("rollout_return: exceeded step guard");
    StepResult r;
    if (st->is_chance()) {
      r = st->apply_chance(st->sample_chance_payload(rng));
    } else if (prefix_idx < prefix.size()) {
      r = st->apply_action(prefix[prefix_idx++]);
    } else {
      Action a = pi.act(pi_belief, st->current_player(), st->public_context(), st->deal(),
                        game, rng);
      r = st->apply_action(a);
    }
    total += r.reward;
  }
  return total;
}

double exact_return(const Game& game, const PublicContext& ctx, const Deal& deal,
                    const Blueprint& pi, const PublicBelief* pi_belief,
                    const std::vector<Action>& prefix, int* budget) {
  auto st = game.state_from(ctx, deal);
  return walk_exact(*st, game, pi, pi_belief, prefix, 0, budget);
}

}  // namespace sed
