#include "sedplan/envs/trampoline_tiger.hpp"

namespace sed {

std::unique_ptr<TwoTurnGame> build_trampoline_tiger(const TrampolineTigerParams& params) {
  if (params.p < 0.0 || params.p > 1.0)
    throw ConfigError("trampoline-tiger: p must lie in [0,1]");
  TwoTurnSpec s;
  s.name = "trampoline-tiger";
  s.n1 = 2;  // player 0 privately sees the world
  s.n2 = 1;  // player 1 has no private information
  s.a1_names = {"no-op", "jump"};
  s.a2_names = {"no-op", "pull"};
  s.chance = {1.0 - params.p, params.p};
  s.reward.resize(2 * 1 * 2 * 2);
  for (int world = 0; world < 2; ++world)
    for (Action a1 = 0; a1 < 2; ++a1)
      for (Action a2 = 0; a2 < 2; ++a2)
        s.reward[((world * 1 + 0) * 2 + a1) * 2 + a2] = params.reward[world][a1][a2];
  return std::make_unique<TwoTurnGame>(std::move(s));
}

}  // namespace sed
