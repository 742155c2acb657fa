#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "auctionrl/agent.hpp"

namespace auctionrl {

inline constexpr const char* kMetricsHeader =
    "episode,mean_normalized_reward,mean_policy_loss,mean_critic_loss,wall_seconds";

// Append-and-flush CSV writer: a crash after episode n leaves exactly n
// complete rows behind the header.
class MetricsWriter {
 public:
  explicit MetricsWriter(const std::string& path);
  void append(const EpisodeMetrics& row);

 private:
  std::ofstream out_;
};

// Parses a metrics CSV written by MetricsWriter; throws ParseError.
std::vector<EpisodeMetrics> read_metrics_csv(const std::string& path);

std::string format_metrics_row(const EpisodeMetrics& row);

}  // namespace auctionrl
