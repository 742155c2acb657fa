#include "auctionrl/agent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "auctionrl/errors.hpp"

namespace auctionrl {

void Hyperparameters::validate() const {
  if (episode_days == 0) throw ConfigError("episode_days must be positive");
  if (batch_size == 0) throw ConfigError("batch_size must be positive");
  if (hidden_size == 0) throw ConfigError("hidden_size must be positive");
  if (!(actor_lr > 0.0) || !(critic_lr > 0.0)) throw ConfigError("learning rates must be positive");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in (0, 1]");
  if (buffer_capacity == 0) throw ConfigError("buffer_capacity must be positive");
  if (!(ou_theta > 0.0)) throw ConfigError("ou_theta must be positive");
  if (!(ou_sigma >= 0.0)) throw ConfigError("ou_sigma must be nonnegative");
  if (!(ou_dt > 0.0)) throw ConfigError("ou_dt must be positive");
  if (!(l2 >= 0.0)) throw ConfigError("l2 must be nonnegative");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::mt19937_64 g(base);
  g.discard(stream);
  return g();
}

Agent make_agent(const Hyperparameters& hp, const MarketConfig& market) {
  hp.validate();
  market.validate();
  Agent agent;
  agent.hp = hp;
  agent.market = market;
  const std::size_t state_dim = kWindowHours;
  const std::size_t action_dim = 2 * market.modes();
  const std::size_t h = hp.hidden_size;

  agent.actor = init_network({state_dim, h, h, action_dim},
                             {Activation::kRelu, Activation::kRelu, Activation::kTanh},
                             derive_seed(hp.seed, 0));
  agent.critic = init_network({state_dim + action_dim, h, h, 1},
                              {Activation::kRelu, Activation::kRelu, Activation::kIdentity},
                              derive_seed(hp.seed, 1));
  agent.target_actor = agent.actor;
  agent.target_critic = agent.critic;
  agent.actor_opt = make_optimizer(agent.actor, hp.actor_lr, hp.l2);
  agent.critic_opt = make_optimizer(agent.critic, hp.critic_lr, hp.l2);
  return agent;
}

OfferingCurve denormalize_action(const std::vector<double>& u, const MarketConfig& market) {
  const std::size_t n = market.modes();
  if (u.size() != 2 * n)
    throw ShapeMismatchError("normalized action needs two components per production mode");
  OfferingCurve curve;
  curve.volumes.resize(n);
  curve.prices.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double uv = std::clamp(u[2 * i], -1.0, 1.0);
    const double up = std::clamp(u[2 * i + 1], -1.0, 1.0);
    curve.volumes[i] = (uv + 1.0) / 2.0 * market.capacities[i];
    curve.prices[i] = market.price_floor + (up + 1.0) / 2.0 * (market.price_cap - market.price_floor);
  }
  return curve;
}

ActionSelection select_action(const Agent& agent, const std::vector<double>& state,
                              const OUNoise* noise) {
  ActionSelection sel;
  sel.normalized = forward(agent.actor, state);
  if (noise) {
    if (noise->x.size() != sel.normalized.size())
      throw ShapeMismatchError("noise dimension does not match action dimension");
    for (std::size_t i = 0; i < sel.normalized.size(); ++i) sel.normalized[i] += noise->x[i];
  }
  for (double& v : sel.normalized) v = std::clamp(v, -1.0, 1.0);
  sel.curve = denormalize_action(sel.normalized, agent.market);
  return sel;
}

namespace {

std::vector<double> concat_state_action(const std::vector<double>& s, const std::vector<double>& a) {
  std::vector<double> x;
  x.reserve(s.size() + a.size());
  x.insert(x.end(), s.begin(), s.end());
  x.insert(x.end(), a.begin(), a.end());
  return x;
}

}  // namespace

double critic_update(Agent& agent, const std::vector<const Transition*>& batch) {
  if (batch.empty()) throw NotEnoughSamplesError("critic update on empty batch");
  const double m = static_cast<double>(batch.size());

  Gradients total = zero_gradients(agent.critic);
  double loss = 0.0;
  for (const Transition* tr : batch) {
    const std::vector<double> next_action = forward(agent.target_actor, tr->next_state);
    const double next_q =
        forward(agent.target_critic, concat_state_action(tr->next_state, next_action))[0];
    const double y = tr->reward + agent.hp.gamma * next_q;

    ForwardTape tape;
    const double q = forward(agent.critic, concat_state_action(tr->state, tr->action), &tape)[0];
    const double residual = q - y;
    loss += residual * residual / m;
    accumulate_gradients(total, backward(agent.critic, tape, {2.0 * residual / m}));
  }
  optimizer_step(agent.critic, total, agent.critic_opt);
  return loss;
}

double actor_update(Agent& agent, const std::vector<const Transition*>& batch) {
  if (batch.empty()) throw NotEnoughSamplesError("actor update on empty batch");
  const double m = static_cast<double>(batch.size());
  const std::size_t state_dim = agent.actor.input_dim();
  const std::size_t action_dim = agent.actor.output_dim();

  Gradients total = zero_gradients(agent.actor);
  double loss = 0.0;
  for (const Transition* tr : batch) {
    ForwardTape actor_tape;
    const std::vector<double> a = forward(agent.actor, tr->state, &actor_tape);
    ForwardTape critic_tape;
    const double q = forward(agent.critic, concat_state_action(tr->state, a), &critic_tape)[0];
    loss -= q / m;

    // d(loss)/da arrives through the critic's input gradient; only the action
    // slice of the critic input feeds back into the actor.
    const std::vector<double> critic_in_grad = backward_input(agent.critic, critic_tape, {-1.0 / m});
    std::vector<double> action_grad(
        critic_in_grad.begin() + static_cast<std::ptrdiff_t>(state_dim),
        critic_in_grad.begin() + static_cast<std::ptrdiff_t>(state_dim + action_dim));
    accumulate_gradients(total, backward(agent.actor, actor_tape, action_grad));
  }
  optimizer_step(agent.actor, total, agent.actor_opt);
  return loss;
}

void soft_update(Network& target, const Network& source, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in (0, 1]");
  if (target.layers.size() != source.layers.size())
    throw ShapeMismatchError("soft update across different depths");
  for (std::size_t j = 0; j < target.layers.size(); ++j) {
    Layer& t = target.layers[j];
    const Layer& s = source.layers[j];
    if (t.weights.size() != s.weights.size() || t.biases.size() != s.biases.size())
      throw ShapeMismatchError("soft update across different layer shapes");
    for (std::size_t i = 0; i < t.weights.size(); ++i)
      t.weights[i] = tau * s.weights[i] + (1.0 - tau) * t.weights[i];
    for (std::size_t i = 0; i < t.biases.size(); ++i)
      t.biases[i] = tau * s.biases[i] + (1.0 - tau) * t.biases[i];
  }
}

std::vector<std::size_t> filter_episode_starts(const std::vector<std::size_t>& starts,
                                               std::size_t series_length,
                                               std::size_t episode_days) {
  const std::size_t horizon = episode_days * 24;
  std::vector<std::size_t> out;
  for (std::size_t s : starts)
    if (s >= kWindowHours && s + horizon + 24 <= series_length) out.push_back(s);
  return out;
}

std::vector<EpisodeMetrics> train(Agent& agent, const PriceSeries& series,
                                  const std::vector<std::size_t>& train_starts,
                                  const NormStats& stats, const EpisodeHook& on_episode) {
  const std::vector<std::size_t> starts =
      filter_episode_starts(train_starts, series.size(), agent.hp.episode_days);
  if (starts.empty())
    throw InsufficientDataError("no training start leaves room for a full episode");

  std::mt19937_64 rng(derive_seed(agent.hp.seed, 2));
  std::uniform_int_distribution<std::size_t> pick_start(0, starts.size() - 1);
  ReplayBuffer buffer(agent.hp.buffer_capacity);
  OUNoise noise(agent.action_dim());
  noise.theta = agent.hp.ou_theta;
  noise.mu = agent.hp.ou_mu;
  noise.sigma = agent.hp.ou_sigma;
  noise.dt = agent.hp.ou_dt;
  const std::size_t warmup = std::max(agent.hp.batch_size, agent.hp.warmup_transitions);

  std::vector<EpisodeMetrics> metrics;
  metrics.reserve(agent.hp.episodes);
  for (std::size_t ep = 0; ep < agent.hp.episodes; ++ep) {
    const auto t0 = std::chrono::steady_clock::now();
    EnvState state = reset(series, starts[pick_start(rng)], agent.hp.episode_days, stats);
    noise.reset();

    double reward_sum = 0.0, policy_loss_sum = 0.0, critic_loss_sum = 0.0;
    std::size_t hours = 0, updates = 0;
    while (state.steps_left > 0) {
      ou_step(noise, rng);
      const ActionSelection sel = select_action(agent, state.window, &noise);
      const StepOutcome outcome = step(state, sel.curve, series, agent.market, stats);
      buffer.push(Transition{state.window, sel.normalized, outcome.reward,
                             outcome.next_state.window, outcome.done});
      reward_sum += outcome.normalized_reward;
      ++hours;

      if (buffer.size() >= warmup) {
        const auto batch = buffer.sample(agent.hp.batch_size, rng);
        critic_loss_sum += critic_update(agent, batch);
        policy_loss_sum += actor_update(agent, batch);
        soft_update(agent.target_critic, agent.critic, agent.hp.tau);
        soft_update(agent.target_actor, agent.actor, agent.hp.tau);
        ++updates;
      }
      state = outcome.next_state;
    }

    EpisodeMetrics row;
    row.episode = ep + 1;
    row.mean_normalized_reward = hours ? reward_sum / static_cast<double>(hours) : 0.0;
    row.mean_policy_loss = updates ? policy_loss_sum / static_cast<double>(updates) : 0.0;
    row.mean_critic_loss = updates ? critic_loss_sum / static_cast<double>(updates) : 0.0;
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    metrics.push_back(row);
    if (on_episode) on_episode(agent, row);
  }
  return metrics;
}

CurvePolicy greedy_policy(const Agent& agent) {
  return [&agent](const EnvState& state) { return select_action(agent, state.window, nullptr).curve; };
}

CurvePolicy oracle_policy(const PriceSeries& series, const MarketConfig& market) {
  return [&series, market](const EnvState& state) {
    return oracle_curve(series.prices[state.t + 24], market);
  };
}

EvalResult evaluate_policy(const CurvePolicy& policy, const PriceSeries& series,
                           const std::vector<std::size_t>& starts, std::size_t episode_days,
                           const MarketConfig& market, const NormStats& stats) {
  const std::vector<std::size_t> usable = filter_episode_starts(starts, series.size(), episode_days);
  if (usable.empty()) throw InsufficientDataError("no evaluation start leaves room for an episode");

  EvalResult result;
  double sum = 0.0;
  for (std::size_t start : usable) {
    EnvState state = reset(series, start, episode_days, stats);
    while (state.steps_left > 0) {
      const StepOutcome outcome = step(state, policy(state), series, market, stats);
      result.trace.push_back(EvalTraceRow{start, state.t, series.prices[state.t + 24],
                                          outcome.reward, outcome.normalized_reward});
      sum += outcome.normalized_reward;
      state = outcome.next_state;
    }
  }
  const double n = static_cast<double>(result.trace.size());
  result.mean_normalized_reward = sum / n;
  double sq = 0.0;
  for (const EvalTraceRow& row : result.trace) {
    const double d = row.normalized_reward - result.mean_normalized_reward;
    sq += d * d;
  }
  result.std_normalized_reward = std::sqrt(sq / n);
  return result;
}

}  // namespace auctionrl
