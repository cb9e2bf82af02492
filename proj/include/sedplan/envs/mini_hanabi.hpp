#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sedplan/blueprint.hpp"
#include "sedplan/game.hpp"

namespace sed {

// Cooperative card game scaled down to stay enumerable: `colors` suits of
// `ranks` ranks with dups[r] copies of rank r per suit, fixed-size hands,
// hint tokens, and lives. Players see everyone's cards but their own; play
// proceeds clockwise one action per turn; each suit's pile must be built in
// rank order. The third misplay voids the score (a closing penalty reward
// cancels the points collected). Once the deck runs out every player gets
// one final turn.
struct MiniHanabiParams {
  int colors = 3;
  int ranks = 3;
  std::vector<int> dups = {2, 2, 1};  // copies of each rank, per color
  int hand = 2;
  int players = 3;
  int hint_tokens = 4;
  int lives = 3;
  int max_turns = 40;  // hard stop; unreachable under the rules above
};

class MiniHanabiGame;

// Public transcript digest: everything commonly observable. Card identities
// enter only through action payloads (a played or discarded card is shown;
// a hint publishes its touch mask); chance events only say who drew.
class MiniHanabiContext : public PublicContext {
 public:
  explicit MiniHanabiContext(const MiniHanabiParams& params);
  std::unique_ptr<PublicContext> clone() const override;
  void on_event(const PublicEvent& ev) override;
  bool terminal() const override;
  int player_to_act() const override;
  int turn() const override { return turn_count; }

  bool playable(int card) const;  // would this card extend its pile now?

  MiniHanabiParams params;
  bool dealt = false;           // initial hands fully dealt
  int cards_dealt = 0;          // chance events consumed so far
  int hint_tokens = 0;
  int lives = 0;
  int score = 0;
  int deck_remaining = 0;
  int grace_left = -1;          // final turns once the deck is empty; -1 off
  bool bombed = false;
  int turn_count = 0;
  int to_act = 0;
  std::vector<int> pile;                  // per color: next rank needed
  std::vector<int> gone;                  // per card id: copies played+discarded
  std::vector<int> hand_count;            // per player: cards currently held
  std::vector<std::vector<char>> hinted;    // per player/slot: ever touched
  std::vector<std::vector<char>> promised;  // per player/slot: owes a play
};

class MiniHanabiGame : public Game {
 public:
  explicit MiniHanabiGame(MiniHanabiParams params = {});

  const MiniHanabiParams& params() const { return params_; }

  // Card encoding: id = color * ranks + rank.
  int card_id(int color, int rank) const { return color * params_.ranks + rank; }
  int card_color(int id) const { return id / params_.ranks; }
  int card_rank(int id) const { return id % params_.ranks; }
  int num_card_types() const { return params_.colors * params_.ranks; }
  int card_copies(int id) const { return params_.dups[card_rank(id)]; }
  int deck_size() const;

  // Action encoding: plays, then discards, then hints grouped by target
  // offset with color values before rank values.
  Action play_action(int slot) const { return slot; }
  Action discard_action(int slot) const { return params_.hand + slot; }
  Action hint_action(int offset, int type, int value) const;  // type 0 color, 1 rank
  bool is_play(Action a) const { return a >= 0 && a < params_.hand; }
  int play_slot(Action a) const { return a; }
  bool is_discard(Action a) const { return a >= params_.hand && a < 2 * params_.hand; }
  int discard_slot(Action a) const { return a - params_.hand; }
  bool is_hint(Action a) const { return a >= 2 * params_.hand && a < num_actions(0); }
  int hint_offset(Action a) const;
  int hint_type(Action a) const;   // 0 = color, 1 = rank
  int hint_value(Action a) const;
  // Touch mask of a hint against a concrete hand; bit s = slot s matches.
  int hint_mask(Action a, const std::vector<int>& target_hand) const;

  std::string name() const override { return "mini-hanabi"; }
  int num_players() const override { return params_.players; }
  int num_actions(int player) const override;
  std::string action_name(int player, Action a) const override;
  int max_turns() const override { return params_.max_turns; }
  double min_return() const override { return 0.0; }
  double max_return() const override { return static_cast<double>(num_card_types()); }

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
  ActionTraits action_traits(int player, Action action) const override;
  std::string describe_public(const PublicContext&) const override;
  std::string describe_view(int player, const Deal&) const override;

 private:
  friend class MiniHanabiState;
  MiniHanabiParams params_;
};

// Deterministic convention everyone can verify:
//   1. play the lowest slot that owes a play (hint promises are sticky);
//   2. else, with a token available, scan partners in turn order and their
//      slots oldest-first for a currently playable, never-hinted card that a
//      single hint (color tried before rank) would newly touch alone, and
//      give that hint;
//   3. else discard the oldest slot.
// Reads only public state and the hands of other players, never the acting
// player's own cards.
class ScriptedHanabiBlueprint : public Blueprint {
 public:
  std::string name() const override { return "scripted-hanabi"; }
  bool deterministic() const override { return true; }
  void action_distribution(const PublicBelief*, int player, const PublicContext&, const Deal&,
                           const Game&, std::vector<double>* out) const override;
};

}  // namespace sed
