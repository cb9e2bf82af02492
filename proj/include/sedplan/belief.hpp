#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sedplan/blueprint.hpp"
#include "sedplan/game.hpp"

namespace sed {

// Exact public belief: an exhaustively enumerated distribution over the
// deals consistent with everything publicly known (plus any pinned private
// knowledge it was conditioned on). Support is kept in canonical (sorted)
// order and weights sum to 1 within 1e-12.
struct PublicBelief {
  std::vector<Deal> support;
  std::vector<double> weight;

  void normalize();          // throws ContradictionError if total mass is 0
  void sort_canonical();     // sort by deal, merging duplicates
  void prune(double tol = 1e-12);
  double total() const;
  std::string dump() const;  // one "<deal> <weight>" line per element
};

// Conditional belief b(s1): the public belief restricted to deals matching
// one player's private view. Elements are full deals; what varies across
// them is exactly what the conditioning player cannot see.
struct ConditionalBelief {
  int player = -1;
  std::string view;
  PublicBelief dist;
};

// Distribution over initial deals before any public event.
PublicBelief initial_belief(const Game& game);

// Bayes-condition on `player` having private view `view`; throws
// ContradictionError when the view has zero mass in b.
ConditionalBelief condition(const Game& game, const PublicBelief& b, int player,
                            const std::string& view);

// Marginal probability of a view under b.
double view_marginal(const Game& game, const PublicBelief& b, int player,
                     const std::string& view);

// Reweight by the blueprint likelihood of an observed action (no support
// advance): w_i *= pi(action | deal_i). Throws ContradictionError when all
// weights vanish (the action is blueprint-impossible).
PublicBelief filter_update(const Game& game, const PublicBelief& b, const PublicContext& ctx,
                           const Blueprint& pi, int actor, Action action);

// m deals drawn i.i.d. from b.
std::vector<Deal> sample_belief(const PublicBelief& b, int m, Rng& rng);

// Incrementally maintained exact belief: advances a PublicContext together
// with the support through each public event, filtering by blueprint
// likelihood on informative action events and extending deals through
// chance. Pins condition the whole trajectory on the pinned players'
// authoritative sequences (their draws are treated as commonly observed).
class BeliefTracker {
 public:
  BeliefTracker(const Game& game, const Blueprint& pi, PinSet pins = {});

  void observe(const PublicEvent& ev, bool informative = true);

  const PublicBelief& belief() const { return belief_; }
  const PublicContext& context() const { return *ctx_; }
  const Game& game() const { return game_; }

 private:
  const Game& game_;
  const Blueprint& pi_;
  PinSet pins_;
  PublicBelief belief_;
  std::unique_ptr<PublicContext> ctx_;
};

}  // namespace sed
