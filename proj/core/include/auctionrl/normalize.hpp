#pragma once

#include <vector>

#include "auctionrl/price_series.hpp"

namespace auctionrl {

struct NormStats {
  double mean = 0.0;
  double std = 1.0;
};

// Mean and population standard deviation of series.prices at the given
// indices. A degenerate (zero) spread yields std = 1 so that downstream
// z-scores stay finite.
NormStats compute_norm_stats(const PriceSeries& series, const std::vector<std::size_t>& indices);

// The 168 hours ending just before decision time t, z-scored:
// out[k] = (price[t - 168 + k] - mean) / std. Requires t >= 168.
std::vector<double> normalized_window(const PriceSeries& series, std::size_t t,
                                      const NormStats& stats);

}  // namespace auctionrl
