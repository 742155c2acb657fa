#pragma once

#include <string>
#include <utility>
#include <vector>

#include "auctionrl/agent.hpp"
#include "auctionrl/price_series.hpp"
#include "auctionrl/split.hpp"

namespace auctionrl {

struct RunConfig {
  std::string csv_path;
  CsvColumns columns;
  SplitSpec split;
  MarketConfig market;
  Hyperparameters hp;
  std::string output_dir = "runs/latest";
  std::size_t checkpoint_every = 100;  // 0 disables cadence checkpoints
};

// One override, dotted key form: {"ddpg.episodes", "100"}.
using ConfigOverride = std::pair<std::string, std::string>;

// Splits "key=value"; throws ConfigError when '=' is missing.
ConfigOverride parse_override(const std::string& text);

// Precedence: built-in defaults < file < AUCTION_DDPG_OUT (output_dir only)
// < overrides, applied in order. Unknown keys are ConfigErrors.
RunConfig load_run_config(const std::string& path, const std::vector<ConfigOverride>& overrides);

// Defaults only + overrides, no file (used by tests and gradcheck).
RunConfig default_run_config();

}  // namespace auctionrl
