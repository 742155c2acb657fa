#include "auctionrl/market_env.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "auctionrl/errors.hpp"

namespace auctionrl {

void MarketConfig::validate() const {
  if (costs.empty()) throw ConfigError("market needs at least one production mode");
  if (costs.size() != capacities.size())
    throw ConfigError("costs and capacities must have equal length");
  for (double c : costs)
    if (!std::isfinite(c)) throw ConfigError("costs must be finite");
  for (double d : capacities)
    if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("capacities must be positive");
  if (!(price_floor < price_cap)) throw ConfigError("price_floor must be below price_cap");
}

void validate_curve(const OfferingCurve& curve, const MarketConfig& config) {
  const std::size_t n = config.modes();
  if (curve.volumes.size() != n || curve.prices.size() != n)
    throw OutOfRangeError("offering curve must have one step per production mode");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(curve.volumes[i] >= 0.0 && curve.volumes[i] <= config.capacities[i]))
      throw OutOfRangeError("volume outside [0, capacity] at step " + std::to_string(i));
    if (!(curve.prices[i] >= config.price_floor && curve.prices[i] <= config.price_cap))
      throw OutOfRangeError("price outside [floor, cap] at step " + std::to_string(i));
  }
}

double settle(const OfferingCurve& curve, double pun_next, const MarketConfig& config) {
  double reward = 0.0;
  for (std::size_t i = 0; i < config.modes(); ++i)
    if (curve.prices[i] <= pun_next) reward += (curve.prices[i] - config.costs[i]) * curve.volumes[i];
  return reward;
}

double max_reward(double pun_next, const MarketConfig& config) {
  double best = 0.0;
  for (std::size_t k = 0; k < config.modes(); ++k)
    best += std::max(pun_next - config.costs[k], 0.0) * config.capacities[k];
  return best;
}

double normalize_reward(double r, double r_max) {
  if (r_max == 0.0) return 0.0;
  return std::clamp(r, 0.0, r_max) / r_max;
}

OfferingCurve oracle_curve(double pun_next, const MarketConfig& config) {
  OfferingCurve curve;
  const std::size_t n = config.modes();
  curve.volumes.resize(n);
  curve.prices.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const bool in_the_money = pun_next > config.costs[k];
    curve.volumes[k] = in_the_money ? config.capacities[k] : 0.0;
    curve.prices[k] = std::clamp(in_the_money ? pun_next : config.price_cap, config.price_floor,
                                 config.price_cap);
  }
  return curve;
}

EnvState reset(const PriceSeries& series, std::size_t start, std::size_t episode_days,
               const NormStats& stats) {
  const std::size_t horizon = episode_days * 24;
  if (start < kWindowHours || start + horizon + 24 > series.size())
    throw OutOfRangeError("episode start " + std::to_string(start) +
                          " leaves no room for window or settlement horizon");
  EnvState state;
  state.window = normalized_window(series, start, stats);
  state.t = start;
  state.steps_left = horizon;
  return state;
}

StepOutcome step(const EnvState& state, const OfferingCurve& curve, const PriceSeries& series,
                 const MarketConfig& config, const NormStats& stats) {
  if (state.steps_left == 0) throw EpisodeFinishedError();
  if (state.t + 24 >= series.size())
    throw OutOfRangeError("no settlement price available 24 h ahead");
  validate_curve(curve, config);

  const double pun_next = series.prices[state.t + 24];
  StepOutcome out;
  out.reward = settle(curve, pun_next, config);
  out.normalized_reward = normalize_reward(out.reward, max_reward(pun_next, config));
  out.next_state.t = state.t + 1;
  out.next_state.steps_left = state.steps_left - 1;
  out.next_state.window = normalized_window(series, out.next_state.t, stats);
  out.done = out.next_state.steps_left == 0;
  return out;
}

}  // namespace auctionrl
