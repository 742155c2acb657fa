#include "auctionrl/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "auctionrl/agent.hpp"
#include "auctionrl/checkpoint.hpp"
#include "auctionrl/errors.hpp"
#include "auctionrl/metrics.hpp"
#include "auctionrl/normalize.hpp"
#include "auctionrl/price_series.hpp"
#include "auctionrl/run_config.hpp"
#include "auctionrl/split.hpp"
#include "auctionrl/svg_plot.hpp"

namespace auctionrl {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitCheckpoint = 4;
constexpr int kExitGradcheck = 5;

int report(const char* what, const std::exception& e, int code) {
  std::cerr << "error (" << what << "): " << e.what() << '\n';
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    return report("config", e, kExitConfig);
  } catch (const CheckpointError& e) {
    return report("checkpoint", e, kExitCheckpoint);
  } catch (const FileNotFoundError& e) {
    return report("data", e, kExitData);
  } catch (const ParseError& e) {
    return report("data", e, kExitData);
  } catch (const GapError& e) {
    return report("data", e, kExitData);
  } catch (const DuplicateError& e) {
    return report("data", e, kExitData);
  } catch (const InsufficientDataError& e) {
    return report("data", e, kExitData);
  } catch (const std::exception& e) {
    return report("runtime", e, kExitRuntime);
  }
}

struct LoadedRun {
  RunConfig cfg;
  PriceSeries series;
  Split split;
};

LoadedRun load_run(const std::string& config_path, const std::vector<ConfigOverride>& overrides) {
  LoadedRun run;
  run.cfg = load_run_config(config_path, overrides);
  if (run.cfg.csv_path.empty()) throw ConfigError("data.csv is not set");
  run.series = load_pun_csv(run.cfg.csv_path, run.cfg.columns);
  run.split = stratified_split(run.series, run.cfg.split);
  return run;
}

bool markets_match(const MarketConfig& a, const MarketConfig& b) {
  return a.costs == b.costs && a.capacities == b.capacities && a.price_floor == b.price_floor &&
         a.price_cap == b.price_cap;
}

}  // namespace

int cmd_train(const std::string& config_path, const std::vector<std::string>& set_overrides,
              std::optional<std::uint64_t> seed) {
  return guarded([&] {
    std::vector<ConfigOverride> overrides;
    for (const std::string& text : set_overrides) overrides.push_back(parse_override(text));
    if (seed) overrides.emplace_back("ddpg.seed", std::to_string(*seed));

    const LoadedRun run = load_run(config_path, overrides);
    const NormStats stats = compute_norm_stats(run.series, run.split.train);
    Agent agent = make_agent(run.cfg.hp, run.cfg.market);

    const std::filesystem::path out_dir(run.cfg.output_dir);
    std::filesystem::create_directories(out_dir);
    MetricsWriter writer((out_dir / "metrics.csv").string());

    std::vector<EpisodeMetrics> rows;
    const EpisodeHook hook = [&](const Agent& a, const EpisodeMetrics& row) {
      writer.append(row);
      rows.push_back(row);
      std::printf("episode %zu/%zu  reward %.4f  policy loss %.4g  critic loss %.4g  (%.2fs)\n",
                  row.episode, a.hp.episodes, row.mean_normalized_reward, row.mean_policy_loss,
                  row.mean_critic_loss, row.wall_seconds);
      std::fflush(stdout);
      if (run.cfg.checkpoint_every > 0 && row.episode % run.cfg.checkpoint_every == 0) {
        const auto path = out_dir / ("checkpoint_ep" + std::to_string(row.episode) + ".txt");
        save_checkpoint(path.string(), checkpoint_from_agent(a, stats, row.episode));
      }
    };
    train(agent, run.series, run.split.train, stats, hook);

    save_checkpoint((out_dir / "checkpoint_final.txt").string(),
                    checkpoint_from_agent(agent, stats, rows.size()));
    write_metric_plots(out_dir.string(), rows);
    std::printf("wrote %zu metric rows, final checkpoint, and plots to %s\n", rows.size(),
                out_dir.string().c_str());
    return kExitOk;
  });
}

int cmd_evaluate(const std::string& checkpoint_path, const std::string& config_path) {
  return guarded([&] {
    const Checkpoint ckpt = load_checkpoint(checkpoint_path);
    const LoadedRun run = load_run(config_path, {});
    if (!markets_match(ckpt.market, run.cfg.market))
      throw CheckpointError("checkpoint market parameters do not match the configuration");
    if (ckpt.policy == "network") {
      if (ckpt.actor.input_dim() != kWindowHours ||
          ckpt.actor.output_dim() != 2 * ckpt.market.modes())
        throw CheckpointError("checkpoint network shapes do not match the configuration");
    }

    CurvePolicy policy;
    Agent agent;  // must outlive the rollouts when the policy is a network
    if (ckpt.policy == "oracle") {
      policy = oracle_policy(run.series, run.cfg.market);
    } else {
      agent = agent_from_checkpoint(ckpt);
      policy = greedy_policy(agent);
    }

    const EvalResult result = evaluate_policy(policy, run.series, run.split.eval,
                                              run.cfg.hp.episode_days, run.cfg.market, ckpt.stats);

    const std::filesystem::path out_dir(run.cfg.output_dir);
    std::filesystem::create_directories(out_dir);
    {
      std::ofstream trace(out_dir / "eval_trace.csv", std::ios::trunc);
      trace << "start,t,pun_next,reward,normalized_reward\n";
      char buf[200];
      for (const EvalTraceRow& row : result.trace) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g,%.17g\n", row.start, row.t,
                      row.pun_next, row.reward, row.normalized_reward);
        trace << buf;
      }
    }
    {
      std::ofstream report(out_dir / "eval_report.txt", std::ios::trunc);
      char buf[300];
      std::snprintf(buf, sizeof buf,
                    "checkpoint: %s\npolicy: %s\nepisodes evaluated: %zu\nhours evaluated: %zu\n"
                    "mean normalized reward: %.17g\nstd normalized reward: %.17g\n",
                    checkpoint_path.c_str(), ckpt.policy.c_str(),
                    result.trace.empty()
                        ? std::size_t{0}
                        : result.trace.size() / (run.cfg.hp.episode_days * 24),
                    result.trace.size(), result.mean_normalized_reward,
                    result.std_normalized_reward);
      report << buf;
    }
    std::printf("mean normalized reward %.6f (std %.6f) over %zu hours\n",
                result.mean_normalized_reward, result.std_normalized_reward, result.trace.size());
    return kExitOk;
  });
}

int cmd_gradcheck(std::uint64_t seed, bool inject_fault) {
  return guarded([&] {
    const std::size_t state_dim = kWindowHours;
    const std::size_t action_dim = 6;  // default market: three modes
    const std::size_t h = 64;
    const Network actor = init_network({state_dim, h, h, action_dim},
                                       {Activation::kRelu, Activation::kRelu, Activation::kTanh},
                                       derive_seed(seed, 0));
    const Network critic =
        init_network({state_dim + action_dim, h, h, 1},
                     {Activation::kRelu, Activation::kRelu, Activation::kIdentity},
                     derive_seed(seed, 1));

    std::mt19937_64 rng(derive_seed(seed, 2));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> actor_in(state_dim), critic_in(state_dim + action_dim);
    for (double& v : actor_in) v = normal(rng);
    for (double& v : critic_in) v = normal(rng);

    const double h_fd = 1e-5;
    double worst = std::max(grad_check(actor, actor_in, h_fd), grad_check(critic, critic_in, h_fd));

    if (inject_fault) {
      // Double the largest analytic gradient and re-measure that entry
      // against the finite difference: the detector must flag it.
      ForwardTape tape;
      forward(actor, actor_in, &tape);
      const Gradients grads =
          backward(actor, tape, std::vector<double>(actor.output_dim(), 1.0));
      std::size_t best_layer = 0, best_index = 0;
      double best_mag = 0.0;
      for (std::size_t j = 0; j < grads.weights.size(); ++j)
        for (std::size_t i = 0; i < grads.weights[j].size(); ++i)
          if (std::fabs(grads.weights[j][i]) > best_mag) {
            best_mag = std::fabs(grads.weights[j][i]);
            best_layer = j;
            best_index = i;
          }
      Network probe = actor;
      auto sum_out = [&] {
        double s = 0.0;
        for (double v : forward(probe, actor_in)) s += v;
        return s;
      };
      double& w = probe.layers[best_layer].weights[best_index];
      const double saved = w;
      w = saved + h_fd;
      const double plus = sum_out();
      w = saved - h_fd;
      const double minus = sum_out();
      w = saved;
      const double numeric = (plus - minus) / (2.0 * h_fd);
      const double analytic = 2.0 * grads.weights[best_layer][best_index];
      const double err = std::fabs(analytic - numeric) /
                         std::max({std::fabs(analytic), std::fabs(numeric), 1e-12});
      worst = std::max(worst, err);
    }

    std::printf("gradcheck: max relative error %.17g (threshold 0.0001)\n", worst);
    return worst < 1e-4 ? kExitOk : kExitGradcheck;
  });
}

int cmd_plot(const std::string& metrics_path, const std::string& out_dir) {
  return guarded([&] {
    const std::vector<EpisodeMetrics> rows = read_metrics_csv(metrics_path);
    write_metric_plots(out_dir, rows);
    std::printf("wrote reward.svg, policy_loss.svg, critic_loss.svg to %s (%zu points each)\n",
                out_dir.c_str(), rows.size());
    return kExitOk;
  });
}

}  // namespace auctionrl
