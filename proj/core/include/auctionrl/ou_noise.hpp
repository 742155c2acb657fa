#pragma once

#include <cmath>
#include <random>
#include <vector>

namespace auctionrl {

// Ornstein-Uhlenbeck process, Euler-Maruyama discretized:
//   x <- x - theta*(x - mu)*dt + sigma*sqrt(dt)*xi,  xi ~ N(0,1) per component.
struct OUNoise {
  double theta = 0.15;
  double mu = 1.0;
  double sigma = 2.0;
  double dt = 1.0;
  std::vector<double> x;

  explicit OUNoise(std::size_t dim = 0) : x(dim, mu) {}

  void reset() { x.assign(x.size(), mu); }
};

// Deterministic core: advance with the caller-supplied standard-normal draws.
inline void ou_step(OUNoise& noise, const std::vector<double>& xi) {
  const double root_dt = std::sqrt(noise.dt);
  for (std::size_t i = 0; i < noise.x.size(); ++i)
    noise.x[i] += -noise.theta * (noise.x[i] - noise.mu) * noise.dt + noise.sigma * root_dt * xi[i];
}

inline void ou_step(OUNoise& noise, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> xi(noise.x.size());
  for (double& v : xi) v = normal(rng);
  ou_step(noise, xi);
}

}  // namespace auctionrl
