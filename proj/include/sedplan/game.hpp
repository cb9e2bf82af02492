#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "sedplan/rng.hpp"

namespace sed {

using Action = int;

struct SedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Action not legal for the acting player in the current state.
struct IllegalActionError : SedError { using SedError::SedError; };
// A (deal, transcript) pair that cannot coexist (e.g. a revealed card
// contradicts the hypothesised hand).
struct InconsistentDealError : SedError { using SedError::SedError; };
// Belief filtering drove every support weight to zero.
struct ContradictionError : SedError { using SedError::SedError; };
// Episode protocol violated (e.g. off-blueprint action nobody declared).
struct ProtocolError : SedError { using SedError::SedError; };
struct ConfigError : SedError { using SedError::SedError; };
// Exact enumeration would exceed its node budget.
struct GuardError : SedError { using SedError::SedError; };

// Joint hidden state as far as it has been dealt: one private component
// vector per player (a single private value in the one-shot games, the cards
// currently held in the card games). Support elements of public beliefs are
// Deals; games define how a component evolves through events.
struct Deal {
  std::vector<std::vector<int>> part;

  bool operator==(const Deal& o) const { return part == o.part; }
  bool operator<(const Deal& o) const { return part < o.part; }
  std::string encode() const;
};

// One publicly observable transcript entry. `payload` carries the public
// outcome of the event (revealed card, hint touch mask, ...), never hidden
// information: a chance event's payload says *that* something happened (and
// to whom), not what was drawn.
struct PublicEvent {
  enum Kind { kAction = 0, kChance = 1 };
  int kind = kAction;
  int actor = -1;   // acting player, or the player a chance event concerns
  Action action = -1;
  std::vector<int> payload;

  bool operator==(const PublicEvent& o) const {
    return kind == o.kind && actor == o.actor && action == o.action && payload == o.payload;
  }
};

using PublicTranscript = std::vector<PublicEvent>;

struct StepResult {
  double reward = 0.0;
  PublicEvent event;
};

// Digest of the public transcript: everything all players commonly know.
// Games advance it event by event; belief tracking and blueprints read it.
class PublicContext {
 public:
  virtual ~PublicContext() = default;
  virtual std::unique_ptr<PublicContext> clone() const = 0;
  virtual void on_event(const PublicEvent&) = 0;
  virtual bool terminal() const = 0;
  virtual int player_to_act() const = 0;  // next decision player; -1 if terminal
  virtual int turn() const = 0;           // decision actions taken so far
};

struct ChanceOutcome {
  std::vector<int> payload;
  double prob = 0.0;
};

// Coarse classification of an action, used when a deviation search is
// restricted to a particular shape (e.g. hints at a given seat / play moves).
struct ActionTraits {
  bool is_play = false;
  bool is_hint = false;
  int hint_target = -1;
};

// World state used for simulation. Chance that the real episode realized at
// initialization shows up as chance nodes when a state is reconstructed
// mid-game from a Deal (the unrealized remainder is drawn on demand), which
// gives sampling and exact enumeration one shared mechanism.
class State {
 public:
  virtual ~State() = default;
  virtual std::unique_ptr<State> clone() const = 0;
  virtual bool is_chance() const = 0;
  virtual bool is_terminal() const = 0;
  virtual int current_player() const = 0;
  virtual std::vector<Action> legal_actions() const = 0;
  virtual std::vector<ChanceOutcome> chance_outcomes() const = 0;
  virtual StepResult apply_action(Action a) = 0;
  virtual StepResult apply_chance(const std::vector<int>& payload) = 0;
  // Draw a chance payload without enumerating all outcomes (games override
  // this when enumeration is expensive, e.g. dealing a full hand set).
  virtual std::vector<int> sample_chance_payload(Rng& rng) const;
  virtual const Deal& deal() const = 0;
  virtual const PublicContext& public_context() const = 0;
};

// Authoritative per-player sequences a belief may be conditioned on
// ("pins"). A pinned player's component is forced to follow the given
// sequence; unpinned components stay free. Null pointer = unpinned.
struct PinSet {
  std::vector<const std::vector<int>*> part;
  const std::vector<int>* at(int p) const {
    return p < static_cast<int>(part.size()) ? part[p] : nullptr;
  }
  bool empty() const {
    for (auto* q : part)
      if (q) return false;
    return true;
  }
};

class Game {
 public:
  virtual ~Game() = default;

  virtual std::string name() const = 0;
  virtual int num_players() const = 0;
  virtual int num_actions(int player) const = 0;
  virtual std::string action_name(int player, Action a) const = 0;
  virtual int max_turns() const = 0;
  virtual double min_return() const = 0;
  virtual double max_return() const = 0;

  // Fresh state positioned at the initial chance node (nothing dealt yet).
  virtual std::unique_ptr<State> new_initial_state() const = 0;
  // Reconstruct a mid-game state from public context + hypothesised deal.
  // Unrealized chance (e.g. the undealt deck) is drawn on demand. Throws
  // InconsistentDealError when the deal cannot have produced the context.
  virtual std::unique_ptr<State> state_from(const PublicContext&, const Deal&) const = 0;

  virtual std::unique_ptr<PublicContext> initial_public_context() const = 0;

  // Enumerate the initial deal distribution, honouring pins when given.
  virtual void initial_support(const PinSet* pins, std::vector<Deal>* deals,
                               std::vector<double>* probs) const = 0;
  // Consistent extensions of `deal` through a public event, with relative
  // probabilities. Appends nothing if the event contradicts the deal.
  virtual void advance_deal(const PublicContext& before, const Deal& deal,
                            const PublicEvent& ev, const PinSet* pins,
                            std::vector<Deal>* deals, std::vector<double>* probs) const = 0;

  // Legality of `player`'s actions as a function of a hypothesised deal
  // (used both for true legality and for response-set intersections).
  virtual std::vector<Action> legal_actions_for(int player, const PublicContext&,
                                                const Deal&) const = 0;

  // Stable key of what `player` privately sees of the hidden state.
  virtual std::string view_key(int player, const Deal&) const = 0;
  // Stable key of what BOTH players see (their common private knowledge).
  virtual std::string common_view_key(int p1, int p2, const Deal&) const = 0;

  // Key identifying the acting player's information state (public transcript
  // digest + private view); tabular blueprints are keyed on this.
  virtual std::string infostate_key(int player, const PublicContext&, const Deal&) const;

  // Classification used by restricted deviation searches; the default says
  // "no structure" and disables such restrictions for the environment.
  virtual ActionTraits action_traits(int player, Action action) const {
    (void)player;
    (void)action;
    return {};
  }

  virtual std::string describe_public(const PublicContext&) const { return ""; }
  virtual std::string describe_view(int player, const Deal&) const;
};

// Replayable episode record: initial deal (as dealt), every event in order
// (with full chance payloads so the episode is a deterministic function of
// this record), and per-event rewards.
struct HistoryEntry {
  PublicEvent event;
  std::vector<int> chance_payload;  // full payload for chance entries
  double reward = 0.0;
};

struct History {
  Deal initial;
  std::vector<HistoryEntry> entries;
  double total_return = 0.0;
};

// Re-simulate a history and return its reward sum; throws if any recorded
// step is inconsistent with the rules (replay closure).
double replay_return(const Game& game, const History& history);

// Serialize helpers shared by dumps and infostate keys.
std::string encode_ints(const std::vector<int>& v);

}  // namespace sed
