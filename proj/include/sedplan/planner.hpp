#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sedplan/belief.hpp"
#include "sedplan/blueprint.hpp"
#include "sedplan/game.hpp"
#include "sedplan/rng.hpp"

namespace sed {

struct PlannerConfig {
  // Sampling sizes. M hidden-state draws feed the deviation marginals and the
  // pooled values; N rollouts estimate each per-state action-pair value; K
  // rollouts back the deviator's final decision (K <= 0 resolves to
  // 10000 / num_actions, floored at 1).
  int M = 1000;
  int N = 100;
  int K = -1;

  // An action qualifies as a deviation when its estimated policy marginal
  // under the tracked belief is <= eps_p.
  double eps_p = 0.0;

  // Deviate only when the estimated gain over the policy value is >= eps_q.
  // Negative means "auto": 5% of the environment's return range.
  double eps_q = -1.0;

  // Softmax temperature for the response function. Non-positive means
  // "auto": 10% of the spread of the finite pooled values (floored at 1e-12).
  double temperature = -1.0;

  // kExpected scores a response by the pooled expected value
  // E[max(q(s, a1, a2), q_policy(s))]; kImprovement scores it by the
  // probability P[q(s, a1, a2) > q_policy(s)].
  enum class Mode { kExpected, kImprovement };
  Mode mode = Mode::kExpected;

  // Replace all sampling with exact enumeration (small games only).
  bool exact = false;

  // Restrict the deviation search to hints aimed at the seat after the
  // responder, and responses to play moves.
  bool restrict_relay = false;

  uint64_t seed = 1;

  // Node budget for exact enumeration before giving up with GuardError.
  int exact_budget = 1000000;
};

// D: the deviator's near-impossible actions; R: responder actions legal under
// every deal the belief allows. `marginal` is indexed by raw action id.
struct DeviationSets {
  std::vector<Action> deviations;
  std::vector<Action> responses;
  std::vector<double> marginal;
  bool marginal_exact = false;
};

// Row-stochastic map from observed deviation to a response distribution.
struct ResponseFunction {
  std::vector<Action> deviations;
  std::vector<Action> responses;
  std::vector<std::vector<double>> prob;  // prob[deviation_row][response_col]
  double temperature = 0.0;
  PlannerConfig::Mode mode = PlannerConfig::Mode::kExpected;

  bool has(Action a1) const;
  const std::vector<double>& row(Action a1) const;  // throws if !has(a1)
  // Deterministic argmax of a row (lowest action id on ties).
  Action argmax_response(Action a1) const;
};

// Per-view and pooled value tables over D x R. hat_q entries are -inf where
// the pair is undefined (deviation illegal for that view).
struct QEstimates {
  std::vector<std::string> views;        // deviator views present in the belief
  std::vector<double> view_weight;       // sums to 1
  std::vector<double> q_policy;          // per view: on-policy continuation value
  std::vector<std::vector<std::vector<double>>> hat_q;  // [view][d][r]
  std::vector<std::vector<double>> pooled_value;        // E[max(hat_q, q_policy)]
  std::vector<std::vector<double>> pooled_improve;      // P[hat_q > q_policy]
  double policy_value = 0.0;  // E over views of q_policy
  DeviationSets sets;
  bool exact = false;
  int M = 0;
  int N = 0;
};

// Best single deviation pair by pooled expected value.
struct SedPair {
  Action a1 = -1;
  Action a2 = -1;
  double value = 0.0;         // pooled value of the chosen pair
  double policy_value = 0.0;  // E over views of the on-policy value
  bool valid = false;         // both D and R non-empty
  bool strict = false;        // value strictly above policy_value
};

struct Decision {
  Action action = -1;
  bool deviated = false;
  double value = 0.0;         // estimated value of the action taken
  double policy_value = 0.0;  // estimated value of staying on policy
  ResponseFunction f;         // response map the deviator assumed
  DeviationSets sets;
};

// One-step lookahead planners over a public belief. All entry points take the
// belief at the acting player's decision point together with its public
// context. Sampled runs are deterministic given the config seed; each call
// consumes one derived seed stream in call order.
class Planner {
 public:
  Planner(const Game& game, const Blueprint& policy, PlannerConfig cfg);

  const PlannerConfig& config() const { return cfg_; }
  double resolved_eps_q() const { return eps_q_; }
  int resolved_k(int deviator) const;

  // D and R for a deviator/responder pair under belief b.
  DeviationSets deviation_sets(const PublicBelief& b, const PublicContext& ctx,
                               int deviator, int responder);

  // Full value tables (per-view and pooled) over D x R.
  QEstimates estimate(const PublicBelief& b, const PublicContext& ctx,
                      int deviator, int responder);

  // Value of one (view, a1, a2) triple; -inf outside D x R or when a1 is
  // illegal for the deviator at that view.
  double hat_q(const PublicBelief& b, const PublicContext& ctx, int deviator,
               int responder, const std::string& view, Action a1, Action a2);

  ResponseFunction response_function(const QEstimates& est) const;

  // Argmax deviation pair by pooled expected value.
  SedPair single_pair_sed(const PublicBelief& b, const PublicContext& ctx,
                          int deviator, int responder);

  // The deviator's move from her true view: deviate to the best deviation
  // (responses drawn from the response function) when it clears eps_q,
  // otherwise play the policy action.
  Decision decide(const PublicBelief& b, const PublicContext& ctx, int deviator,
                  int responder, const std::string& true_view);

  // The responder's move after observing the deviator's action: the response
  // function's argmax row when the action is a known deviation, otherwise the
  // policy action for the responder's true view. `shared_f` substitutes a
  // precomputed response map (e.g. the deviator's own) for the local one.
  Action respond(const PublicBelief& b, const PublicContext& ctx, int deviator,
                 int responder, Action observed, const std::string& true_view,
                 const ResponseFunction* shared_f = nullptr);

  // Unilateral one-step lookahead: estimate each legal action's value under
  // "everyone plays the policy afterwards" and take the argmax when it beats
  // the on-policy value by eps_q.
  Decision lookahead_step(const PublicBelief& b, const PublicContext& ctx,
                          int player, const std::string& true_view);

  // estimate() forced to exact enumeration regardless of cfg.exact.
  QEstimates exact_oracle(const PublicBelief& b, const PublicContext& ctx,
                          int deviator, int responder);

 private:
  struct ViewGroup {
    std::string view;
    double weight = 0.0;
    PublicBelief cond;  // belief conditioned on this view
  };

  std::vector<ViewGroup> view_groups(const PublicBelief& b, int deviator,
                                     Rng* rng) const;
  std::vector<Action> candidate_deviations(const PublicContext& ctx,
                                           int deviator, int responder) const;
  std::vector<Action> safe_responses(const PublicBelief& b,
                                     const PublicContext& ctx,
                                     int responder) const;
  DeviationSets deviation_sets_impl(const PublicBelief& b,
                                    const PublicContext& ctx, int deviator,
                                    int responder, Rng* rng) const;
  QEstimates estimate_impl(const PublicBelief& b, const PublicContext& ctx,
                           int deviator, int responder, bool exact, Rng* rng);
  double value_under(const PublicBelief& cond, const PublicContext& ctx,
                     const std::vector<Action>& prefix, bool exact, int n,
                     Rng* rng, int* budget) const;
  Action policy_action(const PublicBelief& cond, const PublicContext& ctx,
                       int player, Rng* rng) const;
  uint64_t next_call_seed();

  const Game& game_;
  const Blueprint& policy_;
  PlannerConfig cfg_;
  double eps_q_ = 0.0;
  uint64_t call_counter_ = 0;
};

// Exact pooled-value maximum over all deviator choices:
//   E_view[ max_a1 max(E_{a2~f} hat_q, q_policy) ]  (inner term per view)
// versus the same expression with expectation and max exchanged. Used to
// check the value ordering between per-view and pooled planning.
struct OrderingProbe {
  double per_view = 0.0;  // E_view max_a1 ...
  double pooled = 0.0;    // max_a1 E_view ...
};
OrderingProbe ordering_probe(const Game& game, const Blueprint& policy,
                             const PublicBelief& b, const PublicContext& ctx,
                             int deviator, int responder, PlannerConfig cfg);

}  // namespace sed
