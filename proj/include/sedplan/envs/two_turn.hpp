#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sedplan/game.hpp"

namespace sed {

// Generic two-turn game: chance draws a joint private pair (v1, v2) from a
// weight table, player 0 observes v1 and acts publicly, player 1 observes v2
// and acts, then the episode ends with reward R(v1, v2, a1, a2). Per-player
// legality may depend on the owner's private value. This covers the
// trampoline/tiger toy, the randomly generated evaluation games and the
// hand-constructed regression games.
struct TwoTurnSpec {
  std::string name = "two-turn";
  int n1 = 2, n2 = 1;
  std::vector<std::string> a1_names, a2_names;
  // chance[v1 * n2 + v2], need not be normalized.
  std::vector<double> chance;
  // reward[((v1 * n2 + v2) * |A1| + a1) * |A2| + a2]
  std::vector<double> reward;
  // Optional legality masks; empty = everything legal.
  std::vector<uint8_t> legal1;  // [v1 * |A1| + a1]
  std::vector<uint8_t> legal2;  // [v2 * |A2| + a2]
};

class TwoTurnGame : public Game {
 public:
  explicit TwoTurnGame(TwoTurnSpec spec);

  std::string name() const override { return spec_.name; }
  int num_players() const override { return 2; }
  int num_actions(int player) const override;
  std::string action_name(int player, Action a) const override;
  int max_turns() const override { return 2; }
  double min_return() const override { return min_reward_; }
  double max_return() const override { return max_reward_; }

  std::unique_ptr<State> new_initial_state() const override;
  std::unique_ptr<State> state_from(const PublicContext&, const Deal&) const override;
  std::unique_ptr<PublicContext> initial_public_context() const override;

  void initial_support(const PinSet* pins, std::vector<Deal>* deals,
                       std::vector<double>* probs) const override;
  void advance_deal(const PublicContext& before, const Deal& deal, const PublicEvent& ev,
                    const PinSet* pins, std::vector<Deal>* deals,
                    std::vector<double>* probs) const override;
  std::vector<Action> legal_actions_for(int player, const PublicContext&,
                                        const Deal&) const override;
  std::string view_key(int player, const Deal&) const override;
  std::string common_view_key(int p1, int p2, const Deal&) const override;
  std::string infostate_key(int player, const PublicContext&, const Deal&) const override;
  std::string describe_public(const PublicContext&) const override;

  const TwoTurnSpec& spec() const { return spec_; }
  double reward_at(int v1, int v2, Action a1, Action a2) const {
    return spec_.reward[((size_t)(v1 * spec_.n2 + v2) * spec_.a1_names.size() + a1) *
                            spec_.a2_names.size() +
                        a2];
  }
  bool legal(int player, int v, Action a) const;
  double chance_total() const { return chance_total_; }

 private:
  TwoTurnSpec spec_;
  double min_reward_ = 0.0, max_reward_ = 0.0, chance_total_ = 0.0;
};

// Deterministically generated random instance used by the evaluation suites:
// |S1|,|S2| in [2,4], |A1|,|A2| in [2,3], rewards uniform in [-1,1], strictly
// positive joint chance weights.
TwoTurnSpec make_random_two_turn(uint64_t seed);

}  // namespace sed
