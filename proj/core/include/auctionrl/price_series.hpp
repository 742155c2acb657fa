#ifndef AUCTIONRL_PRICE_SERIES_HPP
#define AUCTIONRL_PRICE_SERIES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "auctionrl/calendar.hpp"

namespace auctionrl {

// State window: 7 days of hourly prices.
inline constexpr std::size_t kWindowHours = 168;

// Contiguous hourly clearing prices; entry k is the price for
// start + k hours. Immutable after construction.
struct PriceSeries {
  DateHour start;
  std::vector<double> prices;  // EUR/MWh

  std::size_t size() const { return prices.size(); }
  DateHour time_at(std::size_t index) const { return add_hours(start, static_cast<std::int64_t>(index)); }
};

// Header names of the three columns read from a market CSV export.
struct CsvColumns {
  std::string date = "Date";   // YYYYMMDD
  std::string hour = "Hour";   // 1-24
  std::string price = "PUN";   // decimal, '.' or ',' separator
};

// Loads an hourly price CSV. Rows may be unsorted; they are sorted by
// (date, hour) before the contiguity check. Throws FileNotFoundError,
// ParseError, DuplicateError, GapError.
PriceSeries load_pun_csv(const std::string& path, const CsvColumns& columns = {});

// Writes a series in the same format load_pun_csv reads ('.' decimals,
// comma-separated, 17 significant digits). Reloading yields an identical series.
void save_pun_csv(const std::string& path, const PriceSeries& series, const CsvColumns& columns = {});

}  // namespace auctionrl

#endif
