#include "auctionrl/price_series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "auctionrl/errors.hpp"

namespace auctionrl {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

// GME exports use ';' fields with ',' decimals; plain CSV uses ',' fields
// with '.' decimals. The header line decides.
char detect_separator(const std::string& header) {
  return header.find(';') != std::string::npos ? ';' : ',';
}

double parse_price(std::string text, std::size_t line_no) {
  if (text.empty()) throw ParseError(line_no, "empty price field");
  std::replace(text.begin(), text.end(), ',', '.');
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(line_no, "bad price value '" + text + "'");
  if (!std::isfinite(value)) throw ParseError(line_no, "non-finite price");
  return value;
}

struct RawRow {
  std::int64_t serial_hour;
  double price;
  std::size_t line_no;
};

}  // namespace

PriceSeries load_pun_csv(const std::string& path, const CsvColumns& columns) {
  if (!std::filesystem::exists(path)) throw FileNotFoundError(path);
  std::ifstream in(path);
  if (!in) throw FileNotFoundError(path);

  std::string header;
  if (!std::getline(in, header)) throw ParseError(1, "missing header row");
  if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0) header.erase(0, 3);
  if (!header.empty() && header.back() == '\r') header.pop_back();

  const char sep = detect_separator(header);
  const auto names = split_fields(header, sep);
  auto find_column = [&](const std::string& wanted) -> std::size_t {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == wanted) return i;
    throw ParseError(1, "missing column '" + wanted + "'");
  };
  const std::size_t date_col = find_column(columns.date);
  const std::size_t hour_col = find_column(columns.hour);
  const std::size_t price_col = find_column(columns.price);
  const std::size_t needed = std::max({date_col, hour_col, price_col}) + 1;

  std::vector<RawRow> rows;
  std::string line;
  std::size_t line_no = 1;
  std::size_t negatives = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line, sep);
    if (fields.size() < needed)
      throw ParseError(line_no, "expected at least " + std::to_string(needed) + " fields");

    const std::string& date_text = fields[date_col];
    if (date_text.size() != 8 ||
        !std::all_of(date_text.begin(), date_text.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
      throw ParseError(line_no, "bad date '" + date_text + "' (want YYYYMMDD)");
    const int year = std::stoi(date_text.substr(0, 4));
    const unsigned month = static_cast<unsigned>(std::stoi(date_text.substr(4, 2)));
    const unsigned day = static_cast<unsigned>(std::stoi(date_text.substr(6, 2)));
    if (!valid_date(year, month, day)) throw ParseError(line_no, "invalid date '" + date_text + "'");

    int hour = 0;
    const std::string& hour_text = fields[hour_col];
    auto [hp, hec] = std::from_chars(hour_text.data(), hour_text.data() + hour_text.size(), hour);
    if (hec != std::errc{} || hp != hour_text.data() + hour_text.size() || hour < 1 || hour > 24)
      throw ParseError(line_no, "bad hour '" + hour_text + "' (want 1-24)");

    const double price = parse_price(fields[price_col], line_no);
    if (price < 0.0) ++negatives;

    const DateHour dh{year, month, day, static_cast<unsigned>(hour - 1)};
    rows.push_back(RawRow{to_serial_hour(dh), price, line_no});
  }
  if (rows.empty()) throw ParseError(line_no, "no data rows");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const RawRow& a, const RawRow& b) { return a.serial_hour < b.serial_hour; });

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::int64_t gap = rows[i].serial_hour - rows[i - 1].serial_hour;
    if (gap == 0) throw DuplicateError(format_date_hour(from_serial_hour(rows[i].serial_hour)));
    if (gap > 1) throw GapError(format_date_hour(from_serial_hour(rows[i - 1].serial_hour + 1)));
  }

  if (negatives > 0)
    std::cerr << "warning: " << path << ": " << negatives << " negative price(s) accepted\n";

  PriceSeries series;
  series.start = from_serial_hour(rows.front().serial_hour);
  series.prices.reserve(rows.size());
  for (const RawRow& r : rows) series.prices.push_back(r.price);
  return series;
}

void save_pun_csv(const std::string& path, const PriceSeries& series, const CsvColumns& columns) {
  std::ofstream out(path);
  if (!out) throw FileNotFoundError(path);
  out << columns.date << ',' << columns.hour << ',' << columns.price << '\n';
  char buf[64];
  for (std::size_t i = 0; i < series.size(); ++i) {
    const DateHour dh = series.time_at(i);
    std::snprintf(buf, sizeof buf, "%04d%02u%02u,%u,%.17g", dh.year, dh.month, dh.day, dh.hour + 1,
                  series.prices[i]);
    out << buf << '\n';
  }
}

}  // namespace auctionrl
