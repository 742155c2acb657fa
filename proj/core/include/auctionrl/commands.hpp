#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace auctionrl {

// Exit codes shared by the CLI: 0 success, 1 config error, 2 data error,
// 3 runtime failure, 4 checkpoint/config mismatch, 5 gradient-check failure.

int cmd_train(const std::string& config_path, const std::vector<std::string>& set_overrides,
              std::optional<std::uint64_t> seed);

int cmd_evaluate(const std::string& checkpoint_path, const std::string& config_path);

// inject_fault plants a doubled analytic gradient so the detector itself can
// be shown to fail loudly (exit 5).
int cmd_gradcheck(std::uint64_t seed, bool inject_fault = false);

int cmd_plot(const std::string& metrics_path, const std::string& out_dir);

}  // namespace auctionrl
