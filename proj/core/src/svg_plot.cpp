#include "auctionrl/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "auctionrl/errors.hpp"

namespace auctionrl {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 60;

struct AxisScale {
  double lo = 0.0, hi = 1.0, tick = 0.25;
};

// Round the span out to "nice" tick boundaries (1/2/5 times a power of ten).
AxisScale nice_axis(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi))) return {};
  if (lo > hi) std::swap(lo, hi);
  if (lo == hi) {
    const double pad = lo == 0.0 ? 1.0 : std::fabs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  const double raw_step = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
  double step = mag;
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    step = mult * mag;
    if (step >= raw_step) break;
  }
  AxisScale s;
  s.tick = step;
  s.lo = std::floor(lo / step) * step;
  s.hi = std::ceil(hi / step) * step;
  return s;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec) {
  if (spec.x.size() != spec.y.size())
    throw ShapeMismatchError("chart x and y series differ in length");

  AxisScale xs, ys;
  if (!spec.x.empty()) {
    xs = nice_axis(*std::min_element(spec.x.begin(), spec.x.end()),
                   *std::max_element(spec.x.begin(), spec.x.end()));
    ys = nice_axis(*std::min_element(spec.y.begin(), spec.y.end()),
                   *std::max_element(spec.y.begin(), spec.y.end()));
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - xs.lo) / (xs.hi - xs.lo) * plot_w; };
  auto py = [&](double v) { return kTop + plot_h - (v - ys.lo) / (ys.hi - ys.lo) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
      << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' ' << fmt(kHeight) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"18\">"
      << escape_xml(spec.title) << "</text>\n";

  // Axes frame.
  out << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(plot_w)
      << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Ticks, grid, and labels.
  const int x_ticks = static_cast<int>(std::round((xs.hi - xs.lo) / xs.tick));
  for (int i = 0; i <= x_ticks; ++i) {
    const double v = xs.lo + i * xs.tick;
    const double x = px(v);
    out << "<line x1=\"" << fmt2(x) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt2(x)
        << "\" y2=\"" << fmt(kTop + plot_h) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << fmt2(x) << "\" y=\"" << fmt(kTop + plot_h + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(v)
        << "</text>\n";
  }
  const int y_ticks = static_cast<int>(std::round((ys.hi - ys.lo) / ys.tick));
  for (int i = 0; i <= y_ticks; ++i) {
    const double v = ys.lo + i * ys.tick;
    const double y = py(v);
    out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt2(y) << "\" x2=\""
        << fmt(kLeft + plot_w) << "\" y2=\"" << fmt2(y) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt2(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(v)
        << "</text>\n";
  }

  out << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 15)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << escape_xml(spec.x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << fmt(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 20 "
      << fmt(kTop + plot_h / 2) << ")\">" << escape_xml(spec.y_label) << "</text>\n";

  if (!spec.x.empty()) {
    out << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < spec.x.size(); ++i) {
      if (i) out << ' ';
      out << fmt2(px(spec.x[i])) << ',' << fmt2(py(spec.y[i]));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_metric_plots(const std::string& out_dir, const std::vector<EpisodeMetrics>& rows) {
  std::filesystem::create_directories(out_dir);
  std::vector<double> episode, reward, policy, critic;
  episode.reserve(rows.size());
  for (const EpisodeMetrics& r : rows) {
    episode.push_back(static_cast<double>(r.episode));
    reward.push_back(r.mean_normalized_reward);
    policy.push_back(r.mean_policy_loss);
    critic.push_back(r.mean_critic_loss);
  }

  struct Target {
    const char* file;
    const char* title;
    const char* y_label;
    const std::vector<double>* y;
  };
  const Target targets[] = {
      {"reward.svg", "Mean normalized reward per episode", "mean normalized reward (0-1)", &reward},
      {"policy_loss.svg", "Mean policy loss per episode", "mean policy loss (EUR)", &policy},
      {"critic_loss.svg", "Mean critic loss per episode", "mean critic loss (EUR^2)", &critic},
  };
  for (const Target& t : targets) {
    ChartSpec spec{t.title, "episode", t.y_label, episode, *t.y};
    std::ofstream file(std::filesystem::path(out_dir) / t.file, std::ios::trunc);
    if (!file) throw FileNotFoundError(out_dir);
    file << render_line_chart(spec);
  }
}

}  // namespace auctionrl
