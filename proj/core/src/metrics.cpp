#include "auctionrl/metrics.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "auctionrl/errors.hpp"

namespace auctionrl {

MetricsWriter::MetricsWriter(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  out_.open(path, std::ios::trunc);
  if (!out_) throw FileNotFoundError(path);
  out_ << kMetricsHeader << '\n';
  out_.flush();
}

std::string format_metrics_row(const EpisodeMetrics& row) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.6f", row.episode,
                row.mean_normalized_reward, row.mean_policy_loss, row.mean_critic_loss,
                row.wall_seconds);
  return buf;
}

void MetricsWriter::append(const EpisodeMetrics& row) {
  out_ << format_metrics_row(row) << '\n';
  out_.flush();
}

std::vector<EpisodeMetrics> read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty metrics file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kMetricsHeader) throw ParseError(1, "unexpected metrics header '" + line + "'");

  std::vector<EpisodeMetrics> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    EpisodeMetrics row;
    std::istringstream fields(line);
    std::string field;
    auto next = [&](const char* what) {
      if (!std::getline(fields, field, ','))
        throw ParseError(line_no, std::string("missing field: ") + what);
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE)
        throw ParseError(line_no, std::string("bad value for ") + what + ": '" + field + "'");
      return v;
    };
    const double episode = next("episode");
    if (episode < 0 || episode != static_cast<double>(static_cast<std::size_t>(episode)))
      throw ParseError(line_no, "episode index must be a nonnegative integer");
    row.episode = static_cast<std::size_t>(episode);
    row.mean_normalized_reward = next("mean_normalized_reward");
    row.mean_policy_loss = next("mean_policy_loss");
    row.mean_critic_loss = next("mean_critic_loss");
    row.wall_seconds = next("wall_seconds");
    if (std::getline(fields, field, ','))
      throw ParseError(line_no, "trailing fields after wall_seconds");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace auctionrl
