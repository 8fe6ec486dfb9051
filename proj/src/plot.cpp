#include "ringbot/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "ringbot/errors.hpp"

namespace ringbot::plot {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr int kTicks = 5;

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi - lo <= 0.0) {
      const double w = std::abs(lo) > 0.0 ? 0.05 * std::abs(lo) : 1.0;
      lo -= w;
      hi += w;
    }
  }
  double span() const { return hi - lo; }
};

}  // namespace

std::string render_svg(std::span<const Series> series, const Axes& axes) {
  if (series.empty()) throw DomainError("plot needs at least one series");
  Range xr, yr;
  for (const auto& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size())
      throw DomainError(fmt::format("series '{}' is empty or has mismatched x/y sizes", s.label));
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.pad();
  yr.pad();

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  double sx = plot_w / xr.span();
  double sy = plot_h / yr.span();
  if (axes.equal_aspect) sx = sy = std::min(sx, sy);
  auto px = [&](double x) { return kLeft + (x - xr.lo) * sx; };
  auto py = [&](double y) { return kTop + plot_h - (y - yr.lo) * sy; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" viewBox=\"0 0 {0:.0f} "
      "{1:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  svg += fmt::format("<rect x=\"0\" y=\"0\" width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", kWidth, kHeight);
  svg += fmt::format("<text x=\"{:.1f}\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                     kLeft + plot_w / 2.0, escape(axes.title));
  svg += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" stroke=\"black\"/>\n",
                     kLeft, kTop, plot_w, plot_h);

  for (int i = 0; i <= kTicks; ++i) {
    const double fx = xr.lo + xr.span() * i / kTicks;
    const double fy = yr.lo + yr.span() * i / kTicks;
    const double tx = kLeft + plot_w * i / kTicks;
    const double ty = kTop + plot_h - plot_h * i / kTicks;
    svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n", tx,
                       kTop + plot_h, kTop + plot_h + 5.0);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.4g}</text>\n", tx,
                       kTop + plot_h + 18.0, fx);
    svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"black\"/>\n",
                       kLeft - 5.0, ty, kLeft);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.4g}</text>\n", kLeft - 8.0, ty + 4.0,
                       fy);
  }
  svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", kLeft + plot_w / 2.0,
                     kHeight - 15.0, escape(axes.x_label));
  svg += fmt::format(
      "<text x=\"18\" y=\"{0:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0:.1f})\">{1}</text>\n",
      kTop + plot_h / 2.0, escape(axes.y_label));

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % kPalette.size()];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) pts += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", px(s.x[i]), py(s.y[i]));
    svg += fmt::format("<{} points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
                       s.closed ? "polygon" : "polyline", pts, color);
    const double ly = kTop + 10.0 + 18.0 * static_cast<double>(k);
    svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                       kWidth - kRight + 10.0, ly, kWidth - kRight + 30.0, color);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", kWidth - kRight + 35.0, ly + 4.0,
                       escape(s.label));
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(std::span<const Series> series, const Axes& axes, const std::filesystem::path& path) {
  const std::string svg = render_svg(series, axes);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError(fmt::format("cannot open '{}' for writing", path.string()));
  out << svg;
  if (!out) throw IOError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace ringbot::plot
