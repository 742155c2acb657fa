#include "auctionrl/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "auctionrl/calendar.hpp"
#include "auctionrl/errors.hpp"

namespace auctionrl {

std::vector<std::size_t> eligible_starts(const PriceSeries& series) {
  std::vector<std::size_t> out;
  const std::size_t n = series.size();
  if (n <= kWindowHours + 24) return out;
  for (std::size_t t = kWindowHours; t + 24 < n; ++t) out.push_back(t);
  return out;
}

Split stratified_split(const PriceSeries& series, const SplitSpec& spec) {
  if (!(spec.train_fraction >= 0.0 && spec.train_fraction <= 1.0))
    throw ConfigError("train_fraction must lie in [0, 1]");
  const auto eligible = eligible_starts(series);
  if (eligible.empty()) throw InsufficientDataError("no eligible decision hours in series");

  // std::map keeps strata in ascending month order, which pins the RNG
  // consumption order independent of any hash seeding.
  std::map<std::int64_t, std::vector<std::size_t>> strata;
  for (std::size_t t : eligible) strata[month_key(series.time_at(t))].push_back(t);

  std::mt19937_64 rng(spec.seed);
  Split split;
  for (auto& [key, bucket] : strata) {
    std::shuffle(bucket.begin(), bucket.end(), rng);
    const auto take = static_cast<std::size_t>(
        std::ceil(spec.train_fraction * static_cast<double>(bucket.size())));
    for (std::size_t i = 0; i < bucket.size(); ++i)
      (i < take ? split.train : split.eval).push_back(bucket[i]);
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.eval.begin(), split.eval.end());
  return split;
}

}  // namespace auctionrl
