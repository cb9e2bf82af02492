#include "sedplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "sedplan/values.hpp"

namespace sed {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool contains(const std::vector<Action>& v, Action a) {
  return std::find(v.begin(), v.end(), a) != v.end();
}

// Softmax of values/t with max-subtraction so extreme temperatures stay
// finite: t -> 0 concentrates on the argmax, t -> inf goes uniform.
std::vector<double> softmax_row(const std::vector<double>& values, double t) {
  std::vector<double> out(values.size(), 0.0);
  if (values.empty()) return out;
  double vmax = kNegInf;
  for (double v : values) vmax = std::max(vmax, v);
  if (!std::isfinite(vmax)) {
    const double u = 1.0 / static_cast<double>(values.size());
    for (double& p : out) p = u;
    return out;
  }
  double total = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    const double z = std::isfinite(values[i]) ? (values[i] - vmax) / t : kNegInf;
    out[i] = std::exp(z);
    total += out[i];
  }
  for (double& p : out) p /= total;
  return out;
}

}  // namespace

bool ResponseFunction::has(Action a1) const { return contains(deviations, a1); }

const std::vector<double>& ResponseFunction::row(Action a1) const {
  for (size_t i = 0; i < deviations.size(); ++i) {
    if (deviations[i] == a1) return prob[i];
  }
  throw ProtocolError("response row requested for a non-deviation action");
}

Action ResponseFunction::argmax_response(Action a1) const {
  const std::vector<double>& r = row(a1);
  if (r.empty()) throw ProtocolError("response function has no responses");
  size_t best = 0;
  for (size_t j = 1; j < r.size(); ++j) {
    if (r[j] > r[best]) best = j;
  }
  return responses[best];
}

Planner::Planner(const Game& game, const Blueprint& policy, PlannerConfig cfg)
    : game_(game), policy_(policy), cfg_(cfg) {
  if (cfg_.M <= 0 || cfg_.N <= 0) throw ConfigError("planner sample sizes must be positive");
  if (cfg_.eps_p < 0.0) throw ConfigError("eps_p must be non-negative");
  eps_q_ = cfg_.eps_q >= 0.0 ? cfg_.eps_q
                             : 0.05 * (game_.max_return() - game_.min_return());
}

int Planner::resolved_k(int deviator) const {
  if (cfg_.K > 0) return cfg_.K;
  return std::max(1, 10000 / std::max(1, game_.num_actions(deviator)));
}

uint64_t Planner::next_call_seed() { return Rng::derive(cfg_.seed, ++call_counter_); }

std::vector<Planner::ViewGroup> Planner::view_groups(const PublicBelief& b, int deviator,
                                                     Rng* rng) const {
  // Partition the belief by the deviator's view in one pass; each part is the
  // exact conditional for that view.
  std::map<std::string, ViewGroup> parts;
  for (size_t i = 0; i < b.support.size(); ++i) {
    ViewGroup& g = parts[game_.view_key(deviator, b.support[i])];
    g.cond.support.push_back(b.support[i]);
    g.cond.weight.push_back(b.weight[i]);
    g.weight += b.weight[i];
  }
  std::vector<ViewGroup> groups;
  if (rng == nullptr) {
    groups.reserve(parts.size());
    for (auto& [view, g] : parts) {
      g.view = view;
      g.cond.normalize();
      groups.push_back(std::move(g));
    }
    return groups;
  }
  // Sampled: group weights are empirical frequencies over M draws; views that
  // were never drawn are dropped.
  std::map<std::string, int> counts;
  std::vector<Deal> draws = sample_belief(b, cfg_.M, *rng);
  for (const Deal& d : draws) counts[game_.view_key(deviator, d)] += 1;
  const double inv_m = 1.0 / static_cast<double>(draws.size());
  groups.reserve(counts.size());
  for (const auto& [view, n] : counts) {
    ViewGroup g = parts.at(view);
    g.view = view;
    g.weight = n * inv_m;
    g.cond.normalize();
    groups.push_back(std::move(g));
  }
  return groups;
}

std::vector<Action> Planner::candidate_deviations(const PublicContext& /*ctx*/, int deviator,
                                                  int responder) const {
  std::vector<Action> out;
  const int relay = (responder + 1) % game_.num_players();
  for (Action a = 0; a < game_.num_actions(deviator); ++a) {
    if (cfg_.restrict_relay) {
      const ActionTraits tr = game_.action_traits(deviator, a);
      if (!tr.is_hint || tr.hint_target != relay) continue;
    }
    out.push_back(a);
  }
  return out;
}

std::vector<Action> Planner::safe_responses(const PublicBelief& b, const PublicContext& ctx,
                                            int responder) const {
  const int na = game_.num_actions(responder);
  std::vector<char> ok(na, 1);
  for (const Deal& d : b.support) {
    std::vector<char> here(na, 0);
    for (Action a : game_.legal_actions_for(responder, ctx, d)) here[a] = 1;
    for (int a = 0; a < na; ++a) ok[a] = ok[a] && here[a];
  }
  std::vector<Action> out;
  for (Action a = 0; a < na; ++a) {
    if (!ok[a]) continue;
    if (cfg_.restrict_relay && !game_.action_traits(responder, a).is_play) continue;
    out.push_back(a);
  }
  return out;
}

DeviationSets Planner::deviation_sets_impl(const PublicBelief& b, const PublicContext& ctx,
                                           int deviator, int responder, Rng* rng) const {
  DeviationSets sets;
  const int na = game_.num_actions(deviator);
  sets.marginal.assign(na, 0.0);
  sets.marginal_exact = (rng == nullptr);
  std::vector<double> dist;
  if (rng == nullptr) {
    for (size_t i = 0; i < b.support.size(); ++i) {
      policy_.action_distribution(&b, deviator, ctx, b.support[i], game_, &dist);
      for (int a = 0; a < na; ++a) sets.marginal[a] += b.weight[i] * dist[a];
    }
  } else {
    std::vector<Deal> draws = sample_belief(b, cfg_.M, *rng);
    const double w = 1.0 / static_cast<double>(draws.size());
    for (const Deal& d : draws) {
      policy_.action_distribution(&b, deviator, ctx, d, game_, &dist);
      for (int a = 0; a < na; ++a) sets.marginal[a] += w * dist[a];
    }
  }
  // An action nobody could play anywhere in the support is not a deviation
  // anyone could make; require legality under at least one deal.
  std::vector<char> playable(na, 0);
  for (const Deal& d : b.support) {
    for (Action a : game_.legal_actions_for(deviator, ctx, d)) playable[a] = 1;
  }
  for (Action a : candidate_deviations(ctx, deviator, responder)) {
    if (playable[a] && sets.marginal[a] <= cfg_.eps_p) sets.deviations.push_back(a);
  }
  sets.responses = safe_responses(b, ctx, responder);
  return sets;
}

DeviationSets Planner::deviation_sets(const PublicBelief& b, const PublicContext& ctx,
                                      int deviator, int responder) {
  Rng rng(next_call_seed());
  return deviation_sets_impl(b, ctx, deviator, responder, cfg_.exact ? nullptr : &rng);
}

double Planner::value_under(const PublicBelief& cond, const PublicContext& ctx,
                            const std::vector<Action>& prefix, bool exact, int n, Rng* rng,
                            int* budget) const {
  if (exact) {
    double v = 0.0;
    for (size_t i = 0; i < cond.support.size(); ++i) {
      v += cond.weight[i] *
           exact_return(game_, ctx, cond.support[i], policy_, nullptr, prefix, budget);
    }
    return v;
  }
  std::vector<Deal> draws = sample_belief(cond, n, *rng);
  double acc = 0.0;
  for (const Deal& d : draws) {
    acc += rollout_return(game_, ctx, d, policy_, nullptr, prefix, *rng);
  }
  return acc / static_cast<double>(draws.size());
}

QEstimates Planner::estimate_impl(const PublicBelief& b, const PublicContext& ctx, int deviator,
                                  int responder, bool exact, Rng* rng) {
  QEstimates est;
  est.exact = exact;
  est.M = exact ? 0 : cfg_.M;
  est.N = exact ? 0 : cfg_.N;
  est.sets = deviation_sets_impl(b, ctx, deviator, responder, rng);
  std::vector<ViewGroup> groups = view_groups(b, deviator, rng);

  const std::vector<Action>& dset = est.sets.deviations;
  const std::vector<Action>& rset = est.sets.responses;
  const size_t nd = dset.size();
  const size_t nr = rset.size();
  const size_t ng = groups.size();
  est.views.resize(ng);
  est.view_weight.resize(ng);
  est.q_policy.assign(ng, 0.0);
  est.hat_q.assign(ng, std::vector<std::vector<double>>(nd, std::vector<double>(nr, kNegInf)));

  int budget = cfg_.exact_budget;
  for (size_t g = 0; g < ng; ++g) {
    est.views[g] = groups[g].view;
    est.view_weight[g] = groups[g].weight;
    const PublicBelief& cond = groups[g].cond;
    // Deviator legality is a function of (context, view), so one check per
    // group covers its whole conditional support.
    const std::vector<Action> legal = game_.legal_actions_for(deviator, ctx, cond.support[0]);
    if (exact) {
      est.q_policy[g] = value_under(cond, ctx, {}, true, 0, nullptr, &budget);
      for (size_t di = 0; di < nd; ++di) {
        if (!contains(legal, dset[di])) continue;
        for (size_t ri = 0; ri < nr; ++ri) {
          try {
            est.hat_q[g][di][ri] =
                value_under(cond, ctx, {dset[di], rset[ri]}, true, 0, nullptr, &budget);
          } catch (const IllegalActionError&) {
            // The pair cannot be executed under some deal here (e.g. the
            // deviation consumed a resource the response needed); treat the
            // pair as undefined for this view.
            est.hat_q[g][di][ri] = kNegInf;
          }
        }
      }
    } else {
      // One batch of hidden-state draws per view, reused for the policy value
      // and every action pair (common random numbers).
      std::vector<Deal> draws = sample_belief(cond, cfg_.N, *rng);
      const double inv_n = 1.0 / static_cast<double>(draws.size());
      double acc = 0.0;
      for (const Deal& d : draws) {
        acc += rollout_return(game_, ctx, d, policy_, nullptr, {}, *rng);
      }
      est.q_policy[g] = acc * inv_n;
      for (size_t di = 0; di < nd; ++di) {
        if (!contains(legal, dset[di])) continue;
        for (size_t ri = 0; ri < nr; ++ri) {
          double sum = 0.0;
          bool ok = true;
          try {
            for (const Deal& d : draws) {
              sum += rollout_return(game_, ctx, d, policy_, nullptr, {dset[di], rset[ri]}, *rng);
            }
          } catch (const IllegalActionError&) {
            ok = false;
          }
          est.hat_q[g][di][ri] = ok ? sum * inv_n : kNegInf;
        }
      }
    }
  }

  est.pooled_value.assign(nd, std::vector<double>(nr, 0.0));
  est.pooled_improve.assign(nd, std::vector<double>(nr, 0.0));
  est.policy_value = 0.0;
  for (size_t g = 0; g < ng; ++g) est.policy_value += est.view_weight[g] * est.q_policy[g];
  for (size_t di = 0; di < nd; ++di) {
    for (size_t ri = 0; ri < nr; ++ri) {
      double pv = 0.0, pi = 0.0;
      for (size_t g = 0; g < ng; ++g) {
        const double h = est.hat_q[g][di][ri];
        pv += est.view_weight[g] * std::max(h, est.q_policy[g]);
        if (h > est.q_policy[g]) pi += est.view_weight[g];
      }
      est.pooled_value[di][ri] = pv;
      est.pooled_improve[di][ri] = pi;
    }
  }
  return est;
}

QEstimates Planner::estimate(const PublicBelief& b, const PublicContext& ctx, int deviator,
                             int responder) {
  Rng rng(next_call_seed());
  return estimate_impl(b, ctx, deviator, responder, cfg_.exact, cfg_.exact ? nullptr : &rng);
}

QEstimates Planner::exact_oracle(const PublicBelief& b, const PublicContext& ctx, int deviator,
                                 int responder) {
  return estimate_impl(b, ctx, deviator, responder, true, nullptr);
}

double Planner::hat_q(const PublicBelief& b, const PublicContext& ctx, int deviator,
                      int responder, const std::string& view, Action a1, Action a2) {
  Rng rng(next_call_seed());
  Rng* rp = cfg_.exact ? nullptr : &rng;
  const DeviationSets sets = deviation_sets_impl(b, ctx, deviator, responder, rp);
  if (!contains(sets.deviations, a1) || !contains(sets.responses, a2)) return kNegInf;
  const ConditionalBelief cb = condition(game_, b, deviator, view);
  const std::vector<Action> legal = game_.legal_actions_for(deviator, ctx, cb.dist.support[0]);
  if (!contains(legal, a1)) return kNegInf;
  int budget = cfg_.exact_budget;
  try {
    return value_under(cb.dist, ctx, {a1, a2}, cfg_.exact, cfg_.N, rp, &budget);
  } catch (const IllegalActionError&) {
    return kNegInf;
  }
}

ResponseFunction Planner::response_function(const QEstimates& est) const {
  ResponseFunction f;
  f.deviations = est.sets.deviations;
  f.responses = est.sets.responses;
  f.mode = cfg_.mode;
  const std::vector<std::vector<double>>& table =
      cfg_.mode == PlannerConfig::Mode::kExpected ? est.pooled_value : est.pooled_improve;
  double t = cfg_.temperature;
  if (t <= 0.0) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = kNegInf;
    for (const auto& row : table) {
      for (double v : row) {
        if (!std::isfinite(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    const double spread = hi > lo ? hi - lo : 0.0;
    t = std::max(0.1 * spread, 1e-12);
  }
  f.temperature = t;
  f.prob.reserve(table.size());
  for (const auto& row : table) f.prob.push_back(softmax_row(row, t));
  return f;
}

SedPair Planner::single_pair_sed(const PublicBelief& b, const PublicContext& ctx, int deviator,
                                 int responder) {
  const QEstimates est = estimate(b, ctx, deviator, responder);
  SedPair pair;
  pair.policy_value = est.policy_value;
  pair.value = est.policy_value;
  if (est.sets.deviations.empty() || est.sets.responses.empty()) return pair;
  pair.valid = true;
  size_t bd = 0, br = 0;
  for (size_t di = 0; di < est.sets.deviations.size(); ++di) {
    for (size_t ri = 0; ri < est.sets.responses.size(); ++ri) {
      if (est.pooled_value[di][ri] > est.pooled_value[bd][br]) {
        bd = di;
        br = ri;
      }
    }
  }
  pair.a1 = est.sets.deviations[bd];
  pair.a2 = est.sets.responses[br];
  pair.value = est.pooled_value[bd][br];
  pair.strict = pair.value > pair.policy_value;
  return pair;
}

Action Planner::policy_action(const PublicBelief& cond, const PublicContext& ctx, int player,
                              Rng* rng) const {
  return policy_.act(nullptr, player, ctx, cond.support[0], game_, *rng);
}

Decision Planner::decide(const PublicBelief& b, const PublicContext& ctx, int deviator,
                         int responder, const std::string& true_view) {
  const QEstimates est = estimate(b, ctx, deviator, responder);
  Decision dec;
  dec.f = response_function(est);
  dec.sets = est.sets;

  Rng rng(next_call_seed());
  const ConditionalBelief cb = condition(game_, b, deviator, true_view);
  const PublicBelief& cond = cb.dist;
  const bool exact = cfg_.exact;
  const int k = resolved_k(deviator);
  int budget = cfg_.exact_budget;

  // Value of staying on policy from the true view; sampled runs reuse the
  // same hidden-state draws for every candidate deviation.
  std::vector<Deal> draws;
  double qpi;
  if (exact) {
    qpi = value_under(cond, ctx, {}, true, 0, nullptr, &budget);
  } else {
    draws = sample_belief(cond, k, rng);
    double acc = 0.0;
    for (const Deal& d : draws) {
      acc += rollout_return(game_, ctx, d, policy_, nullptr, {}, rng);
    }
    qpi = acc / static_cast<double>(draws.size());
  }
  dec.policy_value = qpi;

  const std::vector<Action> legal = game_.legal_actions_for(deviator, ctx, cond.support[0]);
  Action best = -1;
  double best_v = kNegInf;
  if (!dec.f.responses.empty()) {
    for (size_t di = 0; di < dec.f.deviations.size(); ++di) {
      const Action a1 = dec.f.deviations[di];
      if (!contains(legal, a1)) continue;
      const std::vector<double>& row = dec.f.prob[di];
      double v = 0.0;
      bool ok = true;
      if (exact) {
        try {
          for (size_t i = 0; i < cond.support.size(); ++i) {
            for (size_t ri = 0; ri < dec.f.responses.size(); ++ri) {
              if (row[ri] <= 0.0) continue;
              v += cond.weight[i] * row[ri] *
                   exact_return(game_, ctx, cond.support[i], policy_, nullptr,
                                {a1, dec.f.responses[ri]}, &budget);
            }
          }
        } catch (const IllegalActionError&) {
          ok = false;
        }
      } else {
        double acc = 0.0;
        try {
          for (const Deal& d : draws) {
            const Action a2 = dec.f.responses[rng.sample_discrete(row, 1.0)];
            acc += rollout_return(game_, ctx, d, policy_, nullptr, {a1, a2}, rng);
          }
        } catch (const IllegalActionError&) {
          ok = false;
        }
        v = acc / static_cast<double>(draws.size());
      }
      if (ok && v > best_v) {
        best_v = v;
        best = a1;
      }
    }
  }

  if (best >= 0 && best_v >= qpi + eps_q_) {
    dec.action = best;
    dec.deviated = true;
    dec.value = best_v;
  } else {
    dec.action = policy_action(cond, ctx, deviator, &rng);
    dec.deviated = false;
    dec.value = qpi;
  }
  return dec;
}

Action Planner::respond(const PublicBelief& b, const PublicContext& ctx, int deviator,
                        int responder, Action observed, const std::string& true_view,
                        const ResponseFunction* shared_f) {
  ResponseFunction local;
  const ResponseFunction* f = shared_f;
  if (f == nullptr) {
    local = response_function(estimate(b, ctx, deviator, responder));
    f = &local;
  }
  if (!f->responses.empty() && f->has(observed)) return f->argmax_response(observed);
  Rng rng(next_call_seed());
  const ConditionalBelief cb = condition(game_, b, responder, true_view);
  return policy_action(cb.dist, ctx, responder, &rng);
}

Decision Planner::lookahead_step(const PublicBelief& b, const PublicContext& ctx, int player,
                                 const std::string& true_view) {
  Rng rng(next_call_seed());
  Decision dec;
  const ConditionalBelief cb = condition(game_, b, player, true_view);
  const PublicBelief& cond = cb.dist;
  const bool exact = cfg_.exact;
  int budget = cfg_.exact_budget;

  std::vector<Deal> draws;
  double qpi;
  if (exact) {
    qpi = value_under(cond, ctx, {}, true, 0, nullptr, &budget);
  } else {
    draws = sample_belief(cond, cfg_.N, rng);
    double acc = 0.0;
    for (const Deal& d : draws) {
      acc += rollout_return(game_, ctx, d, policy_, nullptr, {}, rng);
    }
    qpi = acc / static_cast<double>(draws.size());
  }
  dec.policy_value = qpi;

  Action best = -1;
  double best_v = kNegInf;
  for (Action a : game_.legal_actions_for(player, ctx, cond.support[0])) {
    double v;
    if (exact) {
      v = value_under(cond, ctx, {a}, true, 0, nullptr, &budget);
    } else {
      double acc = 0.0;
      for (const Deal& d : draws) {
        acc += rollout_return(game_, ctx, d, policy_, nullptr, {a}, rng);
      }
      v = acc / static_cast<double>(draws.size());
    }
    if (v > best_v) {
      best_v = v;
      best = a;
    }
  }

  if (best >= 0 && best_v >= qpi + eps_q_) {
    dec.action = best;
    dec.deviated = true;
    dec.value = best_v;
  } else {
    dec.action = policy_action(cond, ctx, player, &rng);
    dec.deviated = false;
    dec.value = qpi;
  }
  return dec;
}

OrderingProbe ordering_probe(const Game& game, const Blueprint& policy, const PublicBelief& b,
                             const PublicContext& ctx, int deviator, int responder,
                             PlannerConfig cfg) {
  cfg.exact = true;
  Planner planner(game, policy, cfg);
  const QEstimates est = planner.exact_oracle(b, ctx, deviator, responder);
  const ResponseFunction f = planner.response_function(est);

  const size_t nd = est.sets.deviations.size();
  const size_t nr = est.sets.responses.size();
  const size_t ng = est.views.size();

  // E_{a2 ~ f(a1)} hat_q per (view, deviation); undefined entries poison the
  // mix whenever f gives them positive probability.
  std::vector<std::vector<double>> mixed(ng, std::vector<double>(nd, kNegInf));
  for (size_t g = 0; g < ng; ++g) {
    for (size_t di = 0; di < nd; ++di) {
      double v = 0.0;
      bool finite = nr > 0;
      for (size_t ri = 0; ri < nr; ++ri) {
        if (f.prob[di][ri] <= 0.0) continue;
        if (!std::isfinite(est.hat_q[g][di][ri])) {
          finite = false;
          break;
        }
        v += f.prob[di][ri] * est.hat_q[g][di][ri];
      }
      mixed[g][di] = finite ? v : kNegInf;
    }
  }

  OrderingProbe probe;
  // Per-view planning: each view picks its own best deviation (or none).
  for (size_t g = 0; g < ng; ++g) {
    double m = est.q_policy[g];
    for (size_t di = 0; di < nd; ++di) m = std::max(m, mixed[g][di]);
    probe.per_view += est.view_weight[g] * m;
  }
  // Pooled planning: one deviation choice shared by all views.
  if (nd == 0) {
    probe.pooled = est.policy_value;
  } else {
    probe.pooled = kNegInf;
    for (size_t di = 0; di < nd; ++di) {
      double v = 0.0;
      for (size_t g = 0; g < ng; ++g) {
        v += est.view_weight[g] * std::max(mixed[g][di], est.q_policy[g]);
      }
      probe.pooled = std::max(probe.pooled, v);
    }
  }
  return probe;
}

}  // namespace sed
