#ifndef AUCTIONRL_CALENDAR_HPP
#define AUCTIONRL_CALENDAR_HPP

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>

namespace auctionrl {

// One hour of local market time. Hour is 0-23 (CSV hours 1-24 map to 0-23).
struct DateHour {
  int year = 2017;
  unsigned month = 1;  // 1-12
  unsigned day = 1;    // 1-31
  unsigned hour = 0;   // 0-23

  auto operator<=>(const DateHour&) const = default;
};

// Hours since 1970-01-01 00:00. Plain arithmetic on this value is what the
// contiguity checks and window offsets run on.
inline std::int64_t to_serial_hour(const DateHour& dh) {
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{dh.year}, std::chrono::month{dh.month},
                           std::chrono::day{dh.day}};
  const sys_days days{ymd};
  return days.time_since_epoch().count() * 24 + static_cast<std::int64_t>(dh.hour);
}

inline DateHour from_serial_hour(std::int64_t serial) {
  using namespace std::chrono;
  std::int64_t day_count = serial / 24;
  std::int64_t hour = serial % 24;
  if (hour < 0) {
    hour += 24;
    --day_count;
  }
  const sys_days days{std::chrono::days{day_count}};
  const year_month_day ymd{days};
  return DateHour{int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()),
                  static_cast<unsigned>(hour)};
}

inline bool valid_date(int year, unsigned month, unsigned day) {
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                           std::chrono::day{day}};
  return ymd.ok();
}

inline DateHour add_hours(const DateHour& dh, std::int64_t n) {
  return from_serial_hour(to_serial_hour(dh) + n);
}

// "(year, month)" key used as the stratum id for the train/test split.
inline int month_key(const DateHour& dh) { return dh.year * 12 + static_cast<int>(dh.month) - 1; }

inline std::string format_date_hour(const DateHour& dh) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d%02u%02u h%02u", dh.year, dh.month, dh.day, dh.hour + 1);
  return buf;
}

}  // namespace auctionrl

#endif
