#pragma once

#include <vector>

#include "sedplan/belief.hpp"

namespace sed {

// Return-to-go of one sampled continuation: reconstruct a state from
// (ctx, deal), feed `prefix` to the next decision nodes in order, then follow
// the blueprint to termination; chance is drawn from `rng`. `pi_belief` is
// handed to the blueprint (bundled blueprints ignore it). Throws
// IllegalActionError if a prefix action is illegal where it lands.
double rollout_return(const Game& game, const PublicContext& ctx, const Deal& deal,
                      const Blueprint& pi, const PublicBelief* pi_belief,
                      const std::vector<Action>& prefix, Rng& rng);

// Exact expected return-to-go: full recursion over chance outcomes and
// stochastic blueprint branches. Decrements *budget once per visited node
// and throws GuardError when it runs out.
double exact_return(const Game& game, const PublicContext& ctx, const Deal& deal,
                    const Blueprint& pi, const PublicBelief* pi_belief,
                    const std::vector<Action>& prefix, int* budget);

}  // namespace sed
