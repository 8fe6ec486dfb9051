#pragma once

// Minimal deterministic SVG line charts. Identical input gives identical bytes.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace ringbot::plot {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool closed = false;  // draw as a closed polygon
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool equal_aspect = false;
};

/// Throws DomainError on an empty series list, an empty series, or x/y size mismatch.
std::string render_svg(std::span<const Series> series, const Axes& axes);

/// Renders and writes to `path`. Throws IOError if the file cannot be written.
void emit_plot(std::span<const Series> series, const Axes& axes, const std::filesystem::path& path);

}  // namespace ringbot::plot
