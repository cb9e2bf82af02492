#include "sedplan/belief.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace sed {

double PublicBelief::total() const {
  return std::accumulate(weight.begin(), weight.end(), 0.0);
}

void PublicBelief::normalize() {
  double t = total();
  if (!(t > 1e-300)) throw ContradictionError("belief: zero total mass");
  for (double& w : weight) w /= t;
}

void PublicBelief::sort_canonical() {
  std::vector<size_t> idx(support.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return support[a] < support[b]; });
  std::vector<Deal> s2;
  std::vector<double> w2;
  s2.reserve(support.size());
  w2.reserve(support.size());
  for (size_t i : idx) {
    if (!s2.empty() && s2.back() == support[i]) {
      w2.back() += weight[i];
    } else {
      s2.push_back(std::move(support[i]));
      w2.push_back(weight[i]);
    }
  }
  support = std::move(s2);
  weight = std::move(w2);
}

void PublicBelief::prune(double tol) {
  size_t k = 0;
  for (size_t i = 0; i < support.size(); ++i) {
    if (weight[i] > tol) {
      if (k != i) {
        support[k] = std::move(support[i]);
        weight[k] = weight[i];
      }
      ++k;
    }
  }
  support.resize(k);
  weight.resize(k);
  normalize();
}

std::string PublicBelief::dump() const {
  std::string out;
  char buf[64];
  for (size_t i = 0; i < support.size(); ++i) {
    std::snprintf(buf, sizeof buf, " %.17g\n", weight[i]);
    out += support[i].encode();
    out += buf;
  }
  return out;
}

PublicBelief initial_belief(const Game& game) {
  PublicBelief b;
  game.initial_support(nullptr, &b.support, &b.weight);
  b.sort_canonical();
  b.normalize();
  b.prune();
  return b;
}

double view_marginal(const Game& game, const PublicBelief& b, int player,
                     const std::string& view) {
  double m = 0.0;
  for (size_t i = 0; i < b.support.size(); ++i)
    if (game.view_key(player, b.support[i]) == view) m += b.weight[i];
  return m;
}

ConditionalBelief condition(const Game& game, const PublicBelief& b, int player,
                            const std::string& view) {
  ConditionalBelief c;
  c.player = player;
  c.view = view;
  for (size_t i = 0; i < b.support.size(); ++i) {
    if (game.view_key(player, b.support[i]) == view) {
      c.dist.support.push_back(b.support[i]);
      c.dist.weight.push_back(b.weight[i]);
    }
  }
  if (c.dist.support.empty())
    throw ContradictionError("condition: view has zero probability: " + view);
  c.dist.normalize();
  return c;
}

PublicBelief filter_update(const Game& game, const PublicBelief& b, const PublicContext& ctx,
                           const Blueprint& pi, int actor, Action action) {
  PublicBelief out = b;
  for (size_t i = 0; i < out.support.size(); ++i)
    out.weight[i] *= pi.action_prob(&b, actor, ctx, out.support[i], game, action);
  out.normalize();  // throws ContradictionError on blueprint-impossible action
  out.prune();
  return out;
}

std::vector<Deal> sample_belief(const PublicBelief& b, int m, Rng& rng) {
  std::vector<Deal> out;
  out.reserve(m);
  double t = b.total();
  for (int i = 0; i < m; ++i) out.push_back(b.support[rng.sample_discrete(b.weight, t)]);
  return out;
}

BeliefTracker::BeliefTracker(const Game& game, const Blueprint& pi, PinSet pins)
    : game_(game), pi_(pi), pins_(std::move(pins)) {
  ctx_ = game_.initial_public_context();
  belief_.support.push_back(Deal{std::vector<std::vector<int>>(game_.num_players())});
  belief_.weight.push_back(1.0);
}

void BeliefTracker::observe(const PublicEvent& ev, bool informative) {
  if (ev.kind == PublicEvent::kAction && informative) {
    for (size_t i = 0; i < belief_.support.size(); ++i)
      belief_.weight[i] *=
          pi_.action_prob(&belief_, ev.actor, *ctx_, belief_.support[i], game_, ev.action);
  }
  PublicBelief next;
  std::vector<Deal> ext;
  std::vector<double> ext_p;
  const PinSet* pins = pins_.empty() ? nullptr : &pins_;
  for (size_t i = 0; i < belief_.support.size(); ++i) {
    if (belief_.weight[i] <= 0.0) continue;
    ext.clear();
    ext_p.clear();
    game_.advance_deal(*ctx_, belief_.support[i], ev, pins, &ext, &ext_p);
    for (size_t j = 0; j < ext.size(); ++j) {
      next.support.push_back(std::move(ext[j]));
      next.weight.push_back(belief_.weight[i] * ext_p[j]);
    }
  }
  next.sort_canonical();
  next.normalize();
  next.prune();
  belief_ = std::move(next);
  ctx_->on_event(ev);
}

}  // namespace sed
