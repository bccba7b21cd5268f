#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

// Minimal SVG chart writer. Output depends only on the inputs (fixed number
// formatting, fixed palette), so files are byte-stable.
namespace treekta::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  /// One tick per value; defaults to 5 evenly spaced ticks.
  std::optional<std::vector<double>> x_ticks;
  /// Fixed y range; defaults to [0, max(y)] padded.
  std::optional<std::pair<double, double>> y_range;
};

struct ScatterPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> groups;
};

std::string render_line_plot(const LinePlot& plot);

/// Panels laid out side by side under a shared title.
std::string render_scatter_panels(std::span<const ScatterPanel> panels, const std::string& title);

std::string escape(const std::string& text);

}  // namespace treekta::svg
