#include <doctest.h>

#include <cmath>
#include <random>

#include "auctionrl/agent.hpp"
#include "auctionrl/errors.hpp"
#include "auctionrl/split.hpp"
#include "support.hpp"

using namespace auctionrl;

namespace {

Hyperparameters small_hp() {
  Hyperparameters hp;
  hp.episodes = 2;
  hp.episode_days = 1;
  hp.batch_size = 4;
  hp.hidden_size = 8;
  hp.warmup_transitions = 8;
  hp.buffer_capacity = 512;
  hp.seed = 17;
  return hp;
}

Network scalar_net(double w, double b, Activation act, std::size_t in = 1) {
  Network net;
  Layer l;
  l.in = in;
  l.out = 1;
  l.weights.assign(in, w);
  l.biases = {b};
  l.activation = act;
  net.layers.push_back(std::move(l));
  return net;
}

bool networks_equal(const Network& a, const Network& b) {
  if (a.layers.size() != b.layers.size()) return false;
  for (std::size_t j = 0; j < a.layers.size(); ++j)
    if (a.layers[j].weights != b.layers[j].weights || a.layers[j].biases != b.layers[j].biases)
      return false;
  return true;
}

}  // namespace

TEST_CASE("targets start as exact copies and architectures match the market") {
  const Agent agent = make_agent(small_hp(), MarketConfig{});
  CHECK(networks_equal(agent.actor, agent.target_actor));
  CHECK(networks_equal(agent.critic, agent.target_critic));
  CHECK(agent.actor.input_dim() == kWindowHours);
  CHECK(agent.actor.output_dim() == 6);
  CHECK(agent.critic.input_dim() == kWindowHours + 6);
  CHECK(agent.critic.output_dim() == 1);
  CHECK_FALSE(networks_equal(agent.actor, agent.critic));
}

TEST_CASE("default hyperparameters carry the published values") {
  const Hyperparameters hp;
  CHECK(hp.episodes == 1000);
  CHECK(hp.episode_days == 30);
  CHECK(hp.batch_size == 64);
  CHECK(hp.hidden_size == 64);
  CHECK(hp.actor_lr == 1e-4);
  CHECK(hp.critic_lr == 1e-5);
  CHECK(hp.gamma == 0.99);
  CHECK(hp.tau == 0.01);
  CHECK(hp.buffer_capacity == 50000);
  CHECK(hp.ou_theta == 0.15);
  CHECK(hp.ou_mu == 1.0);
  CHECK(hp.ou_sigma == 2.0);
  CHECK(hp.ou_dt == 1.0);
}

TEST_CASE("hyperparameter validation") {
  Hyperparameters hp = small_hp();
  hp.gamma = 1.5;
  CHECK_THROWS_AS(hp.validate(), ConfigError);
  hp = small_hp();
  hp.tau = 0.0;
  CHECK_THROWS_AS(hp.validate(), ConfigError);
  hp = small_hp();
  hp.actor_lr = 0.0;
  CHECK_THROWS_AS(hp.validate(), ConfigError);
}

TEST_CASE("action de-normalization maps the cube onto the feasible set") {
  const MarketConfig market;
  const OfferingCurve top = denormalize_action({1, 1, 1, 1, 1, 1}, market);
  CHECK(top.volumes == std::vector<double>{30, 200, 800});
  CHECK(top.prices == std::vector<double>{3000, 3000, 3000});

  const OfferingCurve bottom = denormalize_action({-1, -1, -1, -1, -1, -1}, market);
  CHECK(bottom.volumes == std::vector<double>{0, 0, 0});
  CHECK(bottom.prices == std::vector<double>{0, 0, 0});

  const OfferingCurve mid = denormalize_action({0, 0, 0, 0, 0, 0}, market);
  CHECK(mid.volumes == std::vector<double>{15, 100, 400});
  CHECK(mid.prices == std::vector<double>{1500, 1500, 1500});
}

TEST_CASE("every selected action is market-feasible, noisy or not") {
  const Agent agent = make_agent(small_hp(), MarketConfig{});
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  OUNoise noise(agent.action_dim());
  noise.sigma = 5.0;  // exaggerated exploration to stress the clamp

  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> state(kWindowHours);
    for (double& v : state) v = normal(rng);
    ou_step(noise, rng);
    const ActionSelection noisy = select_action(agent, state, &noise);
    validate_curve(noisy.curve, agent.market);
    for (double u : noisy.normalized) {
      CHECK(u >= -1.0);
      CHECK(u <= 1.0);
    }
    const ActionSelection greedy = select_action(agent, state, nullptr);
    validate_curve(greedy.curve, agent.market);
  }
}

TEST_CASE("greedy selection is noise-free and deterministic") {
  const Agent agent = make_agent(small_hp(), MarketConfig{});
  const std::vector<double> state(kWindowHours, 0.25);
  const ActionSelection a = select_action(agent, state, nullptr);
  const ActionSelection b = select_action(agent, state, nullptr);
  CHECK(a.normalized == b.normalized);
}

TEST_CASE("critic regression target matches the one-step bootstrap") {
  // Constant target networks: Q'(s', a') = 1000 whatever the input, and a
  // critic that outputs exactly 0, so the pre-step loss is y^2.
  Agent agent;
  agent.hp = small_hp();
  agent.hp.gamma = 0.99;
  agent.hp.l2 = 0.0;
  agent.market = MarketConfig{};
  agent.actor = scalar_net(0.0, 0.0, Activation::kTanh, 1);
  agent.target_actor = agent.actor;
  agent.critic = scalar_net(0.0, 0.0, Activation::kIdentity, 2);
  agent.target_critic = scalar_net(0.0, 1000.0, Activation::kIdentity, 2);
  agent.actor_opt = make_optimizer(agent.actor, agent.hp.actor_lr, 0.0);
  agent.critic_opt = make_optimizer(agent.critic, agent.hp.critic_lr, 0.0);

  Transition tr;
  tr.state = {0.5};
  tr.action = {0.25};
  tr.reward = 2300.0;
  tr.next_state = {0.75};
  const double loss = critic_update(agent, {&tr});
  const double y = 2300.0 + 0.99 * 1000.0;  // 3290
  CHECK(loss == doctest::Approx(y * y).epsilon(1e-12));
}

TEST_CASE("gamma zero makes the target myopic") {
  Agent agent;
  agent.hp = small_hp();
  agent.hp.gamma = 0.0;
  agent.market = MarketConfig{};
  agent.actor = scalar_net(0.0, 0.0, Activation::kTanh, 1);
  agent.target_actor = agent.actor;
  agent.critic = scalar_net(0.0, 0.0, Activation::kIdentity, 2);
  agent.target_critic = scalar_net(0.0, 555.0, Activation::kIdentity, 2);
  agent.actor_opt = make_optimizer(agent.actor, 1e-3, 0.0);
  agent.critic_opt = make_optimizer(agent.critic, 1e-3, 0.0);

  Transition tr;
  tr.state = {0.1};
  tr.action = {0.2};
  tr.reward = 7.0;
  tr.next_state = {0.3};
  const double loss = critic_update(agent, {&tr});
  CHECK(loss == doctest::Approx(49.0).epsilon(1e-12));  // y = r exactly
}

TEST_CASE("a critic already on target yields zero loss and no parameter motion") {
  Agent agent;
  agent.hp = small_hp();
  agent.hp.gamma = 0.0;
  agent.hp.l2 = 0.0;
  agent.market = MarketConfig{};
  agent.actor = scalar_net(0.0, 0.0, Activation::kTanh, 1);
  agent.target_actor = agent.actor;
  // Critic outputs 7 on every input; with gamma=0 and r=7 the residual is 0.
  agent.critic = scalar_net(0.0, 7.0, Activation::kIdentity, 2);
  agent.target_critic = agent.critic;
  agent.actor_opt = make_optimizer(agent.actor, 1e-3, 0.0);
  agent.critic_opt = make_optimizer(agent.critic, 1e-3, 0.0);

  Transition tr;
  tr.state = {0.1};
  tr.action = {0.2};
  tr.reward = 7.0;
  tr.next_state = {0.3};
  const Network before = agent.critic;
  const double loss = critic_update(agent, {&tr});
  CHECK(loss == 0.0);
  CHECK(networks_equal(agent.critic, before));
}

TEST_CASE("policy loss is minus the mean critic value at the policy action") {
  Agent agent;
  agent.hp = small_hp();
  agent.market = MarketConfig{};
  agent.actor = scalar_net(0.3, 0.1, Activation::kTanh, 1);
  agent.target_actor = agent.actor;
  agent.critic = scalar_net(0.0, 42.0, Activation::kIdentity, 2);
  agent.target_critic = agent.critic;
  agent.actor_opt = make_optimizer(agent.actor, 1e-4, 0.0);
  agent.critic_opt = make_optimizer(agent.critic, 1e-4, 0.0);

  Transition a, b;
  a.state = {0.5};
  b.state = {-0.5};
  const double loss = actor_update(agent, {&a, &b});
  CHECK(loss == doctest::Approx(-42.0).epsilon(1e-12));
}

TEST_CASE("a critic flat in the action leaves the actor unchanged without decay") {
  Agent agent;
  agent.hp = small_hp();
  agent.market = MarketConfig{};
  agent.actor = scalar_net(0.3, 0.1, Activation::kTanh, 1);
  agent.target_actor = agent.actor;
  // Critic reads only the state component: zero gradient w.r.t. the action.
  agent.critic = scalar_net(0.0, 0.0, Activation::kIdentity, 2);
  agent.critic.layers[0].weights = {1.0, 0.0};  // state weight 1, action weight 0
  agent.target_critic = agent.critic;
  agent.actor_opt = make_optimizer(agent.actor, 1e-3, 0.0);  // no L2
  agent.critic_opt = make_optimizer(agent.critic, 1e-3, 0.0);

  Transition tr;
  tr.state = {0.5};
  const Network before = agent.actor;
  actor_update(agent, {&tr});
  CHECK(networks_equal(agent.actor, before));
}

TEST_CASE("repeated policy updates climb a piecewise-linear critic to its peak") {
  // Critic Q(s, a) = -|a - 0.3| built exactly from two rectifier units; the
  // optimum action is 0.3 and the actor should settle within 1e-2 of it.
  Agent agent;
  agent.hp = small_hp();
  agent.market = MarketConfig{};
  agent.actor = init_network({1, 1}, {Activation::kTanh}, 3);

  Network critic;
  Layer l1;
  l1.in = 2;
  l1.out = 2;
  l1.weights = {0.0, 1.0, 0.0, -1.0};  // rows: [state, action] -> a-0.3, 0.3-a
  l1.biases = {-0.3, 0.3};
  l1.activation = Activation::kRelu;
  Layer l2;
  l2.in = 2;
  l2.out = 1;
  l2.weights = {-1.0, -1.0};
  l2.biases = {0.0};
  l2.activation = Activation::kIdentity;
  critic.layers = {l1, l2};
  agent.critic = critic;
  agent.target_actor = agent.actor;
  agent.target_critic = critic;
  agent.actor_opt = make_optimizer(agent.actor, 3e-3, 0.0);
  agent.critic_opt = make_optimizer(agent.critic, 1e-3, 0.0);

  Transition tr;
  tr.state = {0.5};
  const Network critic_before = agent.critic;
  for (int i = 0; i < 3000; ++i) actor_update(agent, {&tr});
  CHECK(networks_equal(agent.critic, critic_before));  // critic frozen during policy steps

  const double a = forward(agent.actor, tr.state)[0];
  CHECK(std::fabs(a - 0.3) < 1e-2);
}

TEST_CASE("soft updates interpolate and contract geometrically") {
  Network target = scalar_net(1.0, 1.0, Activation::kIdentity);
  const Network source = scalar_net(0.0, 0.0, Activation::kIdentity);

  SUBCASE("tau one copies the source") {
    soft_update(target, source, 1.0);
    CHECK(target.layers[0].weights[0] == 0.0);
    CHECK(target.layers[0].biases[0] == 0.0);
  }

  SUBCASE("single step at tau 0.01") {
    soft_update(target, source, 0.01);
    CHECK(target.layers[0].weights[0] == doctest::Approx(0.99).epsilon(1e-15));
  }

  SUBCASE("frozen source decays the gap exactly as (1-tau)^n") {
    const double tau = 0.01;
    for (int n : {1, 10, 100}) {
      Network t = scalar_net(1.0, 1.0, Activation::kIdentity);
      for (int i = 0; i < n; ++i) soft_update(t, source, tau);
      const double expected = std::pow(1.0 - tau, n);  // gap ratio, source at zero
      CHECK(std::fabs(t.layers[0].weights[0] - expected) <= 1e-12 * expected);
    }
  }
}

TEST_CASE("training gates updates on the warmup threshold") {
  const PriceSeries series = testsupport::sinusoid_series(24 * 20, 9);
  Hyperparameters hp = small_hp();
  hp.episodes = 1;
  hp.episode_days = 1;  // 24 transitions per episode
  hp.batch_size = 4;
  hp.warmup_transitions = 1000;  // never reached in one short episode
  Agent agent = make_agent(hp, MarketConfig{});
  const Network actor_before = agent.actor;
  const NormStats stats = compute_norm_stats(series, eligible_starts(series));
  const auto rows = train(agent, series, eligible_starts(series), stats);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].mean_policy_loss == 0.0);
  CHECK(rows[0].mean_critic_loss == 0.0);
  CHECK(networks_equal(agent.actor, actor_before));  // zero updates before warmup
}

TEST_CASE("training runs, learns bookkeeping, and stays in bounds") {
  const PriceSeries series = testsupport::sinusoid_series(24 * 30, 11);
  Hyperparameters hp = small_hp();
  hp.episodes = 3;
  hp.episode_days = 2;
  hp.batch_size = 4;
  hp.warmup_transitions = 8;
  Agent agent = make_agent(hp, MarketConfig{});
  const Network actor_before = agent.actor;
  const NormStats stats = compute_norm_stats(series, eligible_starts(series));

  std::size_t hook_calls = 0;
  const auto rows = train(agent, series, eligible_starts(series), stats,
                          [&](const Agent&, const EpisodeMetrics& row) {
                            ++hook_calls;
                            CHECK(row.episode == hook_calls);
                          });
  REQUIRE(rows.size() == 3);
  CHECK(hook_calls == 3);
  for (const auto& row : rows) {
    CHECK(row.mean_normalized_reward >= 0.0);
    CHECK(row.mean_normalized_reward <= 1.0);
    CHECK(row.wall_seconds >= 0.0);
  }
  CHECK_FALSE(networks_equal(agent.actor, actor_before));  // updates did run
}

TEST_CASE("training with zero episodes is a no-op") {
  const PriceSeries series = testsupport::sinusoid_series(24 * 20, 2);
  Hyperparameters hp = small_hp();
  hp.episodes = 0;
  Agent agent = make_agent(hp, MarketConfig{});
  const Network actor_before = agent.actor;
  const NormStats stats{50.0, 10.0};
  const auto rows = train(agent, series, eligible_starts(series), stats);
  CHECK(rows.empty());
  CHECK(networks_equal(agent.actor, actor_before));
}

TEST_CASE("training demands at least one feasible start") {
  const PriceSeries series = testsupport::sinusoid_series(24 * 20, 2);
  Hyperparameters hp = small_hp();
  hp.episode_days = 400;  // cannot fit
  Agent agent = make_agent(hp, MarketConfig{});
  CHECK_THROWS_AS(train(agent, series, eligible_starts(series), NormStats{}),
                  InsufficientDataError);
}

TEST_CASE("identical seeds give identical training traces") {
  const PriceSeries series = testsupport::sinusoid_series(24 * 30, 4);
  Hyperparameters hp = small_hp();
  hp.episodes = 2;
  hp.episode_days = 1;
  const NormStats stats = compute_norm_stats(series, eligible_starts(series));

  Agent a = make_agent(hp, MarketConfig{});
  Agent b = make_agent(hp, MarketConfig{});
  const auto rows_a = train(a, series, eligible_starts(series), stats);
  const auto rows_b = train(b, series, eligible_starts(series), stats);
  REQUIRE(rows_a.size() == rows_b.size());
  for (std::size_t i = 0; i < rows_a.size(); ++i) {
    CHECK(rows_a[i].mean_normalized_reward == rows_b[i].mean_normalized_reward);
    CHECK(rows_a[i].mean_policy_loss == rows_b[i].mean_policy_loss);
    CHECK(rows_a[i].mean_critic_loss == rows_b[i].mean_critic_loss);
  }
  CHECK(networks_equal(a.actor, b.actor));
}

TEST_CASE("oracle rollouts score a perfect normalized reward") {
  const PriceSeries series = testsupport::sinusoid_series(24 * 30, 21);
  const MarketConfig market;
  const NormStats stats = compute_norm_stats(series, eligible_starts(series));
  const EvalResult result = evaluate_policy(oracle_policy(series, market), series,
                                            eligible_starts(series), 2, market, stats);
  CHECK(result.mean_normalized_reward == 1.0);
  CHECK(result.std_normalized_reward == 0.0);
  for (const auto& row : result.trace) CHECK(row.normalized_reward == 1.0);
}

TEST_CASE("a cap-priced policy on cheaper hours earns zero") {
  const PriceSeries series = testsupport::constant_series(50.0, 24 * 20);
  const MarketConfig market;
  const CurvePolicy cap_policy = [&](const EnvState&) {
    return OfferingCurve{{30, 200, 800}, {3000, 3000, 3000}};
  };
  const EvalResult result =
      evaluate_policy(cap_policy, series, eligible_starts(series), 1, market, NormStats{50, 1});
  CHECK(result.mean_normalized_reward == 0.0);
}

TEST_CASE("evaluation mutates nothing and repeats exactly") {
  const PriceSeries series = testsupport::sinusoid_series(24 * 30, 33);
  Hyperparameters hp = small_hp();
  const Agent agent = make_agent(hp, MarketConfig{});
  const Network actor_before = agent.actor;
  const Network critic_before = agent.critic;
  const NormStats stats = compute_norm_stats(series, eligible_starts(series));

  const EvalResult r1 = evaluate_policy(greedy_policy(agent), series, eligible_starts(series), 1,
                                        agent.market, stats);
  const EvalResult r2 = evaluate_policy(greedy_policy(agent), series, eligible_starts(series), 1,
                                        agent.market, stats);
  CHECK(networks_equal(agent.actor, actor_before));
  CHECK(networks_equal(agent.critic, critic_before));
  REQUIRE(r1.trace.size() == r2.trace.size());
  for (std::size_t i = 0; i < r1.trace.size(); ++i) {
    CHECK(r1.trace[i].reward == r2.trace[i].reward);
    CHECK(r1.trace[i].normalized_reward == r2.trace[i].normalized_reward);
  }
  CHECK(r1.mean_normalized_reward == r2.mean_normalized_reward);
}

TEST_CASE("episode starts too close to the end are filtered") {
  CHECK(filter_episode_starts({100, 168, 200, 360}, 24 * 20, 1) ==
        std::vector<std::size_t>{168, 200, 360});
  CHECK(filter_episode_starts({168}, 24 * 20, 15).empty());
}

TEST_CASE("seed streams are decorrelated and reproducible") {
  CHECK(derive_seed(0, 0) == derive_seed(0, 0));
  CHECK(derive_seed(0, 0) != derive_seed(0, 1));
  CHECK(derive_seed(0, 0) != derive_seed(1, 0));
}
