#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "auctionrl/market_env.hpp"
#include "auctionrl/network.hpp"
#include "auctionrl/normalize.hpp"
#include "auctionrl/ou_noise.hpp"
#include "auctionrl/price_series.hpp"
#include "auctionrl/replay_buffer.hpp"

namespace auctionrl {

struct Hyperparameters {
  std::size_t episodes = 1000;
  std::size_t episode_days = 30;
  std::size_t batch_size = 64;
  std::size_t hidden_size = 64;
  double actor_lr = 1e-4;
  double critic_lr = 1e-5;
  double gamma = 0.99;
  double tau = 0.01;
  std::size_t buffer_capacity = 50000;
  double ou_theta = 0.15;
  double ou_mu = 1.0;
  double ou_sigma = 2.0;
  double ou_dt = 1.0;
  std::size_t warmup_transitions = 1000;
  double l2 = 1e-4;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

struct Agent {
  Hyperparameters hp;
  MarketConfig market;  // supplies the per-component action bounds
  Network actor, critic, target_actor, target_critic;
  OptimizerState actor_opt, critic_opt;

  std::size_t action_dim() const { return 2 * market.modes(); }
};

// Decorrelated deterministic seed streams derived from one base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Actor 168 -> hidden -> hidden -> 2I (tanh output); critic takes the state
// concatenated with the action. Targets start as exact copies.
Agent make_agent(const Hyperparameters& hp, const MarketConfig& market);

// Affine map from normalized components u in [-1,1]^(2I):
// V_i = (u_{2i}+1)/2 * D_i, P_i = floor + (u_{2i+1}+1)/2 * (cap - floor).
OfferingCurve denormalize_action(const std::vector<double>& u, const MarketConfig& market);

struct ActionSelection {
  std::vector<double> normalized;  // clamped to [-1,1]
  OfferingCurve curve;
};

// Greedy when noise is null; otherwise adds noise->x before clamping.
ActionSelection select_action(const Agent& agent, const std::vector<double>& state,
                              const OUNoise* noise);

// Bellman regression on raw rewards, y = r + gamma * Q'(s', mu'(s')).
// Episode truncation does not mask the bootstrap term. Returns the pre-step
// mean squared error.
double critic_update(Agent& agent, const std::vector<const Transition*>& batch);

// One ascent step on mean Q(s, mu(s)); returns the pre-step policy loss
// -(1/m) sum Q(s_j, mu(s_j)). Critic parameters stay frozen.
double actor_update(Agent& agent, const std::vector<const Transition*>& batch);

// theta' <- tau*theta + (1-tau)*theta', every weight and bias.
void soft_update(Network& target, const Network& source, double tau);

struct EpisodeMetrics {
  std::size_t episode = 0;
  double mean_normalized_reward = 0.0;
  double mean_policy_loss = 0.0;
  double mean_critic_loss = 0.0;
  double wall_seconds = 0.0;
};

using EpisodeHook = std::function<void(const Agent&, const EpisodeMetrics&)>;

// Keeps only starts that leave room for the full horizon plus settlement lag.
std::vector<std::size_t> filter_episode_starts(const std::vector<std::size_t>& starts,
                                               std::size_t series_length,
                                               std::size_t episode_days);

// Algorithm: per episode, draw a training start uniformly, reset environment
// and noise, then per hour select-act-settle-store; once the buffer holds
// max(batch_size, warmup_transitions) entries, run one critic update, one
// actor update, and soft target updates per hour.
std::vector<EpisodeMetrics> train(Agent& agent, const PriceSeries& series,
                                  const std::vector<std::size_t>& train_starts,
                                  const NormStats& stats, const EpisodeHook& on_episode = {});

using CurvePolicy = std::function<OfferingCurve(const EnvState&)>;

struct EvalTraceRow {
  std::size_t start = 0;  // episode start index
  std::size_t t = 0;      // absolute hour of the decision
  double pun_next = 0.0;
  double reward = 0.0;
  double normalized_reward = 0.0;
};

struct EvalResult {
  double mean_normalized_reward = 0.0;
  double std_normalized_reward = 0.0;
  std::vector<EvalTraceRow> trace;  // one row per evaluated hour
};

CurvePolicy greedy_policy(const Agent& agent);
CurvePolicy oracle_policy(const PriceSeries& series, const MarketConfig& market);

// Noise-free rollouts; mutates nothing.
EvalResult evaluate_policy(const CurvePolicy& policy, const PriceSeries& series,
                           const std::vector<std::size_t>& starts, std::size_t episode_days,
                           const MarketConfig& market, const NormStats& stats);

}  // namespace auctionrl
