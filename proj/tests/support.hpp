#pragma once

// Helpers shared by the unit and acceptance tests: synthetic price series and
// self-cleaning temporary directories.

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "auctionrl/price_series.hpp"

namespace testsupport {

inline auctionrl::PriceSeries constant_series(double price, std::size_t hours,
                                              auctionrl::DateHour start = {2017, 1, 1, 0}) {
  auctionrl::PriceSeries s;
  s.start = start;
  s.prices.assign(hours, price);
  return s;
}

// Diurnal sinusoid around a base price with Gaussian jitter; the default
// amplitudes keep every price comfortably above the cheapest production cost.
inline auctionrl::PriceSeries sinusoid_series(std::size_t hours, std::uint64_t seed,
                                              double base = 50.0, double amplitude = 20.0,
                                              double noise_sigma = 2.0,
                                              auctionrl::DateHour start = {2017, 1, 1, 0}) {
  auctionrl::PriceSeries s;
  s.start = start;
  s.prices.resize(hours);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> jitter(0.0, noise_sigma);
  constexpr double two_pi = 6.283185307179586;
  for (std::size_t h = 0; h < hours; ++h)
    s.prices[h] = base + amplitude * std::sin(two_pi * static_cast<double>(h) / 24.0) + jitter(rng);
  return s;
}

// Unique directory under the system temp root, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("auctionrl_" + tag + "_" + std::to_string(counter.fetch_add(1)) + "_" +
             std::to_string(static_cast<unsigned long>(::getpid())));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testsupport
