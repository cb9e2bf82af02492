#include <memory>
#include <string>

#include "sedplan/blueprint.hpp"
#include "sedplan/envs/mini_hanabi.hpp"

namespace sed {

std::unique_ptr<Blueprint> make_blueprint(const Game& game, const std::string& name) {
  if (name == "noop") return std::make_unique<NoopBlueprint>();
  if (name == "uniform") return std::make_unique<UniformBlueprint>();
  if (name == "scripted-hanabi") {
    if (dynamic_cast<const MiniHanabiGame*>(&game) == nullptr) {
      throw ConfigError("blueprint 'scripted-hanabi' only plays " +
                        std::string("mini-hanabi, not ") + game.name());
    }
    return std::make_unique<ScriptedHanabiBlueprint>();
  }
  const std::string tabular_prefix = "tabular:";
  if (name.rfind(tabular_prefix, 0) == 0) {
    return std::make_unique<TabularBlueprint>(
        TabularBlueprint::load(name.substr(tabular_prefix.size())));
  }
  throw ConfigError("unknown blueprint '" + name + "'");
}

}  // namespace sed
