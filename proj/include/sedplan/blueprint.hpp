#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sedplan/game.hpp"

namespace sed {

struct PublicBelief;  // belief.hpp

// Joint policy everyone agrees on in advance. Implementations must be pure:
// the returned distribution is a function of (belief, player, context, deal)
// only, with no hidden state, so that belief filtering and decentralized
// re-computation agree. The belief argument exists for belief-dependent
// conventions; the bundled blueprints ignore it.
class Blueprint {
 public:
  virtual ~Blueprint() = default;
  virtual std::string name() const = 0;
  virtual bool deterministic() const = 0;
  // Fill `out` (resized to the player's action count) with action
  // probabilities at this information state. Probabilities sum to 1.
  virtual void action_distribution(const PublicBelief* b, int player, const PublicContext& ctx,
                                   const Deal& deal, const Game& game,
                                   std::vector<double>* out) const = 0;

  double action_prob(const PublicBelief* b, int player, const PublicContext& ctx,
                     const Deal& deal, const Game& game, Action a) const;
  // Sample (or, for deterministic blueprints, compute) the action to play.
  Action act(const PublicBelief* b, int player, const PublicContext& ctx, const Deal& deal,
             const Game& game, Rng& rng) const;
};

// Always plays the lowest-index legal action. In the bundled two-turn games
// action 0 is the passive "no-op", which makes this the stand-pat policy.
class NoopBlueprint : public Blueprint {
 public:
  std::string name() const override { return "noop"; }
  bool deterministic() const override { return true; }
  void action_distribution(const PublicBelief*, int, const PublicContext&, const Deal&,
                           const Game&, std::vector<double>*) const override;
};

class UniformBlueprint : public Blueprint {
 public:
  std::string name() const override { return "uniform"; }
  bool deterministic() const override { return false; }
  void action_distribution(const PublicBelief*, int, const PublicContext&, const Deal&,
                           const Game&, std::vector<double>*) const override;
};

// Table of information-state key -> action weights. Unlisted keys fall back
// to uniform-over-legal (declared, deterministic fallback).
class TabularBlueprint : public Blueprint {
 public:
  TabularBlueprint() = default;
  explicit TabularBlueprint(std::map<std::string, std::vector<double>> table)
      : table_(std::move(table)) {}
  static TabularBlueprint load(const std::string& path);
  void save(const std::string& path) const;

  void set(const std::string& key, std::vector<double> weights) {
    table_[key] = std::move(weights);
  }

  std::string name() const override { return "tabular"; }
  bool deterministic() const override { return false; }
  void action_distribution(const PublicBelief*, int, const PublicContext&, const Deal&,
                           const Game&, std::vector<double>*) const override;

 private:
  std::map<std::string, std::vector<double>> table_;
};

// Per-action blueprint probability marginalized over a belief's hidden
// states: exactly (support-weighted) or from m sampled states.
struct BlueprintMarginal {
  std::vector<double> prob;  // indexed by the acting player's actions
  bool exact = false;
  int samples = 0;
};

BlueprintMarginal marginal(const Blueprint& pi, const Game& game, const PublicBelief& b,
                           const PublicContext& ctx, int player, int m_or_exact /*<=0 exact*/,
                           uint64_t seed);

// Expected blueprint return-to-go from the hidden states selected by
// conditioning `b` on the given view, exactly or from n rollouts.
double bp_value(const Game& game, const PublicBelief& b, const PublicContext& ctx,
                int player, const std::string& view, const Blueprint& pi,
                int n_or_exact /*<=0 exact*/, uint64_t seed, int exact_budget = 1000000);

// Factory for the bundled blueprints: "noop", "uniform", "scripted-hanabi",
// "tabular:<file>".
std::unique_ptr<Blueprint> make_blueprint(const Game& game, const std::string& name);

}  // namespace sed
