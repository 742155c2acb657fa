#include "auctionrl/normalize.hpp"

#include <cmath>

#include "auctionrl/errors.hpp"

namespace auctionrl {

NormStats compute_norm_stats(const PriceSeries& series, const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw InsufficientDataError("cannot compute statistics of zero prices");
  double sum = 0.0;
  for (std::size_t i : indices) {
    if (i >= series.size()) throw OutOfRangeError("statistics index outside series");
    sum += series.prices[i];
  }
  const double mean = sum / static_cast<double>(indices.size());
  double sq = 0.0;
  for (std::size_t i : indices) {
    const double d = series.prices[i] - mean;
    sq += d * d;
  }
  double std_dev = std::sqrt(sq / static_cast<double>(indices.size()));
  if (std_dev == 0.0) std_dev = 1.0;
  return NormStats{mean, std_dev};
}

std::vector<double> normalized_window(const PriceSeries& series, std::size_t t,
                                      const NormStats& stats) {
  if (t < kWindowHours || t > series.size())
    throw OutOfRangeError("window start precedes available history");
  std::vector<double> out(kWindowHours);
  for (std::size_t k = 0; k < kWindowHours; ++k)
    out[k] = (series.prices[t - kWindowHours + k] - stats.mean) / stats.std;
  return out;
}

}  // namespace auctionrl
