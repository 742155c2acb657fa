#pragma once

#include <string>
#include <vector>

#include "auctionrl/metrics.hpp"

namespace auctionrl {

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
};

// Standalone SVG line chart; a pure function of its argument, so re-rendering
// the same data is byte-identical. Empty data yields labeled empty axes.
std::string render_line_chart(const ChartSpec& spec);

// reward.svg, policy_loss.svg, critic_loss.svg under out_dir.
void write_metric_plots(const std::string& out_dir, const std::vector<EpisodeMetrics>& rows);

}  // namespace auctionrl
