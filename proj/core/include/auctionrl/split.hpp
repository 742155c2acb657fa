#pragma once

#include <cstdint>
#include <vector>

#include "auctionrl/price_series.hpp"

namespace auctionrl {

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
};

struct Split {
  // Indices into the series, each a valid decision time t: the window
  // [t-168, t) exists and so does the settlement price at t+24.
  std::vector<std::size_t> train;
  std::vector<std::size_t> eval;
};

// All t with t >= 168 and t + 24 < series.size(), ascending.
std::vector<std::size_t> eligible_starts(const PriceSeries& series);

// Stratified by calendar month of the decision hour: within each month
// bucket, ceil(train_fraction * n) indices go to train, the rest to eval.
// Buckets are visited in ascending month order with a single RNG stream,
// so the result is a pure function of (series, spec).
Split stratified_split(const PriceSeries& series, const SplitSpec& spec);

}  // namespace auctionrl
