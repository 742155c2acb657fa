#pragma once

#include <cstddef>
#include <vector>

#include "auctionrl/normalize.hpp"
#include "auctionrl/price_series.hpp"

namespace auctionrl {

struct MarketConfig {
  std::vector<double> costs = {10.0, 30.0, 60.0};       // C_k, €/MWh
  std::vector<double> capacities = {30.0, 200.0, 800.0};  // D_k, MWh
  double price_floor = 0.0;
  double price_cap = 3000.0;

  std::size_t modes() const { return costs.size(); }
  void validate() const;  // throws ConfigError
};

// I steps, step i paired with production mode i.
struct OfferingCurve {
  std::vector<double> volumes;  // V_i, MWh
  std::vector<double> prices;   // P_i, €/MWh
};

struct EnvState {
  std::vector<double> window;  // 168 z-scored prices ending just before t
  std::size_t t = 0;           // absolute hour index into the series
  std::size_t steps_left = 0;
};

struct StepOutcome {
  double reward = 0.0;             // raw €, may be negative
  double normalized_reward = 0.0;  // in [0, 1]
  EnvState next_state;
  bool done = false;
};

// Throws OutOfRangeError unless 0 <= V_i <= D_i and floor <= P_i <= cap
// for every step, with exactly config.modes() steps.
void validate_curve(const OfferingCurve& curve, const MarketConfig& config);

// Pay-as-bid settlement against the clearing price:
// sum over accepted steps (P_i <= pun_next) of (P_i - C_i) * V_i.
double settle(const OfferingCurve& curve, double pun_next, const MarketConfig& config);

// Best achievable settlement: sum_k max(pun_next - C_k, 0) * D_k.
double max_reward(double pun_next, const MarketConfig& config);

// clamp(r, 0, r_max) / r_max, or 0 when r_max == 0.
double normalize_reward(double r, double r_max);

// Clairvoyant curve: full capacity at P = pun_next for in-the-money modes
// (prices clamped into [floor, cap]), zero volume otherwise. Attains
// max_reward whenever pun_next respects the price bounds.
OfferingCurve oracle_curve(double pun_next, const MarketConfig& config);

// start must satisfy start >= 168 and start + episode_days*24 + 24 <= length.
EnvState reset(const PriceSeries& series, std::size_t start, std::size_t episode_days,
               const NormStats& stats);

// Settles curve against series[t + 24], advances t by one hour.
StepOutcome step(const EnvState& state, const OfferingCurve& curve, const PriceSeries& series,
                 const MarketConfig& config, const NormStats& stats);

}  // namespace auctionrl
