#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sedplan/envs/mini_hanabi.hpp"

namespace sed {

// A mid-game situation where one hint can set up a two-play relay: the
// acting seat's next player (the responder) holds a currently playable,
// never-hinted card in their newest slot; the seat after them (the relay)
// holds its direct successor, also never hinted and with no outstanding
// promises; and a single hint at the relay would newly touch exactly the
// successor. The convention never gives that hint here — its exact policy
// marginal under the pair belief is zero — so giving it anyway is legible,
// and a responder who answers by blindly playing their newest card starts a
// chain the relay's promise then finishes.
struct FinesseSituation {
  uint64_t seed = 0;        // episode stream the situation was mined from
  int turn = -1;            // decision turn at which it occurs
  int deviator = -1;        // hinting seat
  int responder = -1;       // expected blind player (next seat)
  int relay = -1;           // hinted seat (seat after the responder)
  Action hint = -1;         // the designated relay hint
  int responder_slot = -1;  // responder's newest slot (the blind play)
  int relay_slot = -1;      // relay slot the hint newly touches
  std::string deal;         // encoded authoritative deal at that turn
};

// Replay a policy-only episode from `seed` (chance on the shared episode
// chance stream) and return the situations available at turns >= min_turn;
// with first_only, at most the earliest. The zero-marginal requirement is
// checked exactly against the pair belief (third seat pinned). Requires a
// deterministic policy and a three-player game.
std::vector<FinesseSituation> mine_finesse(const MiniHanabiGame& game, const Blueprint& policy,
                                           uint64_t seed, int min_turn = 2,
                                           bool first_only = true);

// Re-run the episode to the situation's turn, force the designated hint and
// the responder's newest-slot play, then let the convention take the relay's
// turn; true when both plays score and the relay indeed plays the touched
// slot. Throws ProtocolError when the recorded situation does not match the
// replayed state.
bool finesse_completes(const MiniHanabiGame& game, const Blueprint& policy,
                       const FinesseSituation& sit);

// One relay chain found in a finished episode: a hint to the seat two after
// the actor that newly touched exactly one slot while the next seat's newest
// slot was unpromised, followed by that seat successfully playing its newest
// slot and the hinted seat successfully playing the touched slot.
struct FinesseRecord {
  int hint_turn = -1;
  int deviator = -1;
  int responder = -1;
  int relay = -1;
  int relay_slot = -1;
};

std::vector<FinesseRecord> classify_finesses(const MiniHanabiGame& game, const History& history);

}  // namespace sed
