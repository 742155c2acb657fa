#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "auctionrl/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Day-ahead electricity auction bidding laboratory"};
  app.require_subcommand(1);

  std::string config_path, checkpoint_path, metrics_path, out_dir;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> train_seed;
  std::uint64_t gradcheck_seed = 0;
  bool inject_fault = false;

  CLI::App* train = app.add_subcommand("train", "Train an agent from a configuration file");
  train->add_option("--config", config_path, "Run configuration file")->required();
  train->add_option("--set", overrides, "Override a config key, e.g. --set ddpg.episodes=100");
  train->add_option("--seed", train_seed, "Override the training seed");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Greedy evaluation of a checkpoint");
  evaluate->add_option("--checkpoint", checkpoint_path, "Checkpoint file")->required();
  evaluate->add_option("--config", config_path, "Run configuration file")->required();

  CLI::App* gradcheck =
      app.add_subcommand("gradcheck", "Finite-difference check of the default architectures");
  gradcheck->add_option("--seed", gradcheck_seed, "Seed for weights and probe input");
  gradcheck->add_flag("--inject-fault", inject_fault, "Plant a wrong gradient (self-test)")
      ->group("");

  CLI::App* plot = app.add_subcommand("plot", "Render metric charts from a metrics CSV");
  plot->add_option("--metrics", metrics_path, "metrics.csv produced by train")->required();
  plot->add_option("--out", out_dir, "Output directory for the SVG files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad usage is a configuration error
  }

  if (train->parsed()) return auctionrl::cmd_train(config_path, overrides, train_seed);
  if (evaluate->parsed()) return auctionrl::cmd_evaluate(checkpoint_path, config_path);
  if (gradcheck->parsed()) return auctionrl::cmd_gradcheck(gradcheck_seed, inject_fault);
  if (plot->parsed()) return auctionrl::cmd_plot(metrics_path, out_dir);
  return 1;
}
