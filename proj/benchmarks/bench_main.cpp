#include <benchmark/benchmark.h>

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "auctionrl/agent.hpp"
#include "auctionrl/checkpoint.hpp"
#include "auctionrl/market_env.hpp"
#include "auctionrl/network.hpp"
#include "auctionrl/replay_buffer.hpp"

namespace {

using namespace auctionrl;

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = n01(rng);
  return v;
}

Agent& bench_agent() {
  static Agent agent = make_agent(Hyperparameters{}, MarketConfig{});
  return agent;
}

ReplayBuffer& bench_buffer() {
  static ReplayBuffer buffer = [] {
    ReplayBuffer buf(4096);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n01(0.0, 1.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 4096; ++i) {
      Transition t;
      t.state.resize(kWindowHours);
      t.next_state.resize(kWindowHours);
      for (double& x : t.state) x = n01(rng);
      for (double& x : t.next_state) x = n01(rng);
      t.action.resize(6);
      for (double& x : t.action) x = unit(rng);
      t.reward = 5000.0 * unit(rng);
      buf.push(t);
    }
    return buf;
  }();
  return buffer;
}

void BM_Settle(benchmark::State& state) {
  const MarketConfig config;
  const OfferingCurve curve{{30.0, 200.0, 800.0}, {20.0, 40.0, 70.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(settle(curve, 50.0, config));
  }
}
BENCHMARK(BM_Settle);

void BM_ActorForward(benchmark::State& state) {
  const Agent& agent = bench_agent();
  const std::vector<double> input = random_vector(agent.actor.input_dim(), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward(agent.actor, input));
  }
}
BENCHMARK(BM_ActorForward);

void BM_CriticForwardBackward(benchmark::State& state) {
  const Agent& agent = bench_agent();
  const std::vector<double> input = random_vector(agent.critic.input_dim(), 2);
  const std::vector<double> ograd = {1.0};
  for (auto _ : state) {
    ForwardTape tape;
    benchmark::DoNotOptimize(forward(agent.critic, input, &tape));
    benchmark::DoNotOptimize(backward(agent.critic, tape, ograd));
  }
}
BENCHMARK(BM_CriticForwardBackward);

void BM_CriticUpdate(benchmark::State& state) {
  Agent& agent = bench_agent();
  std::mt19937_64 rng(11);
  const auto batch = bench_buffer().sample(agent.hp.batch_size, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(critic_update(agent, batch));
  }
}
BENCHMARK(BM_CriticUpdate);

void BM_ActorUpdate(benchmark::State& state) {
  Agent& agent = bench_agent();
  std::mt19937_64 rng(12);
  const auto batch = bench_buffer().sample(agent.hp.batch_size, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(actor_update(agent, batch));
  }
}
BENCHMARK(BM_ActorUpdate);

void BM_CheckpointRoundTrip(benchmark::State& state) {
  const Agent& agent = bench_agent();
  const Checkpoint ckpt = checkpoint_from_agent(agent, NormStats{50.0, 10.0}, 42);
  const std::string path =
      (std::filesystem::temp_directory_path() / "auctionrl_bench_ckpt.txt").string();
  for (auto _ : state) {
    save_checkpoint(path, ckpt);
    benchmark::DoNotOptimize(load_checkpoint(path));
  }
  std::filesystem::remove(path);
}
BENCHMARK(BM_CheckpointRoundTrip);

}  // namespace

BENCHMARK_MAIN();
