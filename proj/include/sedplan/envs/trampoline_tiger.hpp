#pragma once

#include <memory>

#include "sedplan/envs/two_turn.hpp"

namespace sed {

// Two-step coordination toy. Chance places either a tiger (prob 1-p) or a
// trampoline (prob p) below the window; player 0 sees which and publicly
// either jumps or stays put; player 1 then pulls the rescue lever or not.
// Outcomes: jumping without the lever is fatal (-10), jumping onto the tiger
// is fatal even with the lever (-10), pulling the lever while the tiger is
// loose is fatal (-10), jump+lever onto the trampoline pays +1, everything
// else is 0. The team optimum is therefore p; the safe equilibrium
// (stay, no pull) is worth 0.
struct TrampolineTigerParams {
  double p = 0.1;
  // reward[world][a1][a2], world 0 = tiger / 1 = trampoline,
  // a1 0 = "no-op" / 1 = "jump", a2 0 = "no-op" / 1 = "pull".
  double reward[2][2][2] = {
      {{0.0, -10.0}, {-10.0, -10.0}},  // tiger:  (noop,noop) (noop,pull) (jump,noop) (jump,pull)
      {{0.0, 0.0}, {-10.0, 1.0}},      // trampoline
  };
};

std::unique_ptr<TwoTurnGame> build_trampoline_tiger(const TrampolineTigerParams& params = {});

}  // namespace sed
