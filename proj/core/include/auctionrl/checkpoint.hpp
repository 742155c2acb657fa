#pragma once

#include <cstdint>
#include <string>

#include "auctionrl/agent.hpp"

namespace auctionrl {

// A full training snapshot (policy == "network"), or a clairvoyant stub used
// as an evaluation baseline (policy == "oracle", which carries only market
// parameters and normalization statistics).
struct Checkpoint {
  std::string policy = "network";
  std::uint64_t seed = 0;
  std::size_t episodes_completed = 0;
  Hyperparameters hp;
  MarketConfig market;
  NormStats stats;
  Network actor, critic, target_actor, target_critic;
  OptimizerState actor_opt, critic_opt;
};

Checkpoint checkpoint_from_agent(const Agent& agent, const NormStats& stats,
                                 std::size_t episodes_completed);

Checkpoint oracle_checkpoint(const MarketConfig& market, const NormStats& stats);

Agent agent_from_checkpoint(const Checkpoint& ckpt);  // throws CheckpointError on oracle kind

// Structured text, 17-significant-digit decimals; save/load round-trips every
// parameter, moment, and statistic bit-exactly.
void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);  // throws CheckpointError

}  // namespace auctionrl
