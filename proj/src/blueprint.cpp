#include "sedplan/blueprint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sedplan/belief.hpp"
#include "sedplan/values.hpp"

namespace sed {

double Blueprint::action_prob(const PublicBelief* b, int player, const PublicContext& ctx,
                              const Deal& deal, const Game& game, Action a) const {
  std::vector<double> dist;
  action_distribution(b, player, ctx, deal, game, &dist);
  return a >= 0 && a < static_cast<Action>(dist.size()) ? dist[a] : 0.0;
}

Action Blueprint::act(const PublicBelief* b, int player, const PublicContext& ctx,
                      const Deal& deal, const Game& game, Rng& rng) const {
  std::vector<double> dist;
  action_distribution(b, player, ctx, deal, game, &dist);
  if (deterministic()) {
    Action best = -1;
    double best_p = 0.0;
    for (Action a = 0; a < static_cast<Action>(dist.size()); ++a)
      if (dist[a] > best_p) { best = a; best_p = dist[a]; }
    if (best < 0) throw SedError("blueprint: empty distribution");
    return best;
  }
  double t = 0.0;
  for (double p : dist) t += p;
  return rng.sample_discrete(dist, t);
}

void NoopBlueprint::action_distribution(const PublicBelief*, int player, const PublicContext& ctx,
                                        const Deal& deal, const Game& game,
                                        std::vector<double>* out) const {
  out->assign(game.num_actions(player), 0.0);
  auto legal = game.legal_actions_for(player, ctx, deal);
  if (legal.empty()) throw SedError("noop blueprint: no legal action");
  (*out)[legal.front()] = 1.0;
}

void UniformBlueprint::action_distribution(const PublicBelief*, int player,
                                           const PublicContext& ctx, const Deal& deal,
                                           const Game& game, std::vector<double>* out) const {
  out->assign(game.num_actions(player), 0.0);
  auto legal = game.legal_actions_for(player, ctx, deal);
  if (legal.empty()) throw SedError("uniform blueprint: no legal action");
  for (Action a : legal) (*out)[a] = 1.0 / static_cast<double>(legal.size());
}

void TabularBlueprint::action_distribution(const PublicBelief*, int player,
                                           const PublicContext& ctx, const Deal& deal,
                                           const Game& game, std::vector<double>* out) const {
  out->assign(game.num_actions(player), 0.0);
  auto it = table_.find(game.infostate_key(player, ctx, deal));
  if (it == table_.end()) {
    auto legal = game.legal_actions_for(player, ctx, deal);
    if (legal.empty()) throw SedError("tabular blueprint: no legal action");
    for (Action a : legal) (*out)[a] = 1.0 / static_cast<double>(legal.size());
    return;
  }
  const auto& w = it->second;
  if (w.size() != out->size())
    throw ConfigError("tabular blueprint: weight row size mismatch");
  double t = 0.0;
  for (double x : w) {
    if (x < 0.0) throw ConfigError("tabular blueprint: negative weight");
    t += x;
  }
  if (t <= 0.0) throw ConfigError("tabular blueprint: zero weight row");
  for (size_t i = 0; i < w.size(); ++i) (*out)[i] = w[i] / t;
}

TabularBlueprint TabularBlueprint::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("tabular blueprint: cannot open " + path);
  std::map<std::string, std::vector<double>> table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ConfigError("tabular blueprint: malformed line: " + line);
    std::istringstream rest(line.substr(tab + 1));
    std::vector<double> w;
    double x;
    while (rest >> x) w.push_back(x);
    if (w.empty()) throw ConfigError("tabular blueprint: empty weight row: " + line);
    table[line.substr(0, tab)] = std::move(w);
  }
  return TabularBlueprint(std::move(table));
}

void TabularBlueprint::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("tabular blueprint: cannot write " + path);
  char buf[32];
  for (const auto& [key, w] : table_) {
    out << key << '\t';
    for (size_t i = 0; i < w.size(); ++i) {
      std::snprintf(buf, sizeof buf, i ? " %.17g" : "%.17g", w[i]);
      out << buf;
    }
    out << '\n';
  }
}

BlueprintMarginal marginal(const Blueprint& pi, const Game& game, const PublicBelief& b,
                           const PublicContext& ctx, int player, int m_or_exact,
                           uint64_t seed) {
  BlueprintMarginal out;
  out.prob.assign(game.num_actions(player), 0.0);
  std::vector<double> dist;
  if (m_or_exact <= 0) {
    out.exact = true;
    for (size_t i = 0; i < b.support.size(); ++i) {
      pi.action_distribution(&b, player, ctx, b.support[i], game, &dist);
      for (size_t a = 0; a < dist.size(); ++a) out.prob[a] += b.weight[i] * dist[a];
    }
    return out;
  }
  out.samples = m_or_exact;
  Rng rng(seed);
  auto draws = sample_belief(b, m_or_exact, rng);
  for (const Deal& d : draws) {
    pi.action_distribution(&b, player, ctx, d, game, &dist);
    for (size_t a = 0; a < dist.size(); ++a) out.prob[a] += dist[a];
  }
  for (double& p : out.prob) p /= static_cast<double>(m_or_exact);
  return out;
}

double bp_value(const Game& game, const PublicBelief& b, const PublicContext& ctx, int player,
                const std::string& view, const Blueprint& pi, int n_or_exact, uint64_t seed,
                int exact_budget) {
  ConditionalBelief cond = condition(game, b, player, view);
  if (n_or_exact <= 0) {
    double v = 0.0;
    int budget = exact_budget;
    for (size_t i = 0; i < cond.dist.support.size(); ++i)
      v += cond.dist.weight[i] *
           exact_return(game, ctx, cond.dist.support[i], pi, &b, {}, &budget);
    return v;
  }
  Rng rng(seed);
  double v = 0.0;
  for (int i = 0; i < n_or_exact; ++i) {
    Rng roll(Rng::derive(seed, 0x9000 + i));
    const Deal& d = cond.dist.support[rng.sample_discrete(cond.dist.weight, cond.dist.total())];
    v += rollout_return(game, ctx, d, pi, &b, {}, roll);
  }
  return v / static_cast<double>(n_or_exact);
}

}  // namespace sed
