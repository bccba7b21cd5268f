#include "treekta/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace treekta::svg {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  if (std::abs(v - std::round(v)) < 1e-9 && std::abs(v) < 1e6) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.3g", v);
  }
  return buf;
}

struct Frame {
  double left, top, width, height;
  double x_min, x_max, y_min, y_max;

  double px(double x) const {
    const double span = x_max > x_min ? x_max - x_min : 1.0;
    return left + (x - x_min) / span * width;
  }
  double py(double y) const {
    const double span = y_max > y_min ? y_max - y_min : 1.0;
    return top + height - (y - y_min) / span * height;
  }
};

std::pair<double, double> extent(const std::vector<Series>& series, bool use_x) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : series)
    for (double v : use_x ? s.x : s.y)
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
  if (!std::isfinite(lo)) return {0.0, 1.0};
  if (hi == lo) return {lo - 0.5, hi + 0.5};
  return {lo, hi};
}

std::vector<double> even_ticks(double lo, double hi, int count) {
  std::vector<double> ticks;
  for (int i = 0; i < count; ++i) ticks.push_back(lo + (hi - lo) * i / (count - 1));
  return ticks;
}

void axes(std::ostringstream& out, const Frame& f, const std::vector<double>& x_ticks,
          const std::vector<double>& y_ticks, const std::string& x_label, const std::string& y_label,
          const std::string& title) {
  out << "<rect x=\"" << num(f.left) << "\" y=\"" << num(f.top) << "\" width=\"" << num(f.width)
      << "\" height=\"" << num(f.height) << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (double t : x_ticks) {
    const double x = f.px(t);
    out << "<line class=\"xtick\" x1=\"" << num(x) << "\" y1=\"" << num(f.top + f.height)
        << "\" x2=\"" << num(x) << "\" y2=\"" << num(f.top + f.height + 5) << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << num(f.top + f.height + 18)
        << "\" font-size=\"10\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : y_ticks) {
    const double y = f.py(t);
    out << "<line class=\"ytick\" x1=\"" << num(f.left - 5) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(f.left) << "\" y2=\"" << num(y) << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << num(f.left - 8) << "\" y=\"" << num(y + 3)
        << "\" font-size=\"10\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  out << "<text x=\"" << num(f.left + f.width / 2) << "\" y=\"" << num(f.top + f.height + 36)
      << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  out << "<text x=\"" << num(f.left - 42) << "\" y=\"" << num(f.top + f.height / 2)
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 " << num(f.left - 42)
      << ' ' << num(f.top + f.height / 2) << ")\">" << escape(y_label) << "</text>\n";
  out << "<text x=\"" << num(f.left + f.width / 2) << "\" y=\"" << num(f.top - 12)
      << "\" font-size=\"14\" text-anchor=\"middle\">" << escape(title) << "</text>\n";
}

void legend(std::ostringstream& out, const Frame& f, const std::vector<Series>& series, bool lines) {
  double y = f.top + 14;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    const double x = f.left + f.width - 110;
    if (lines) {
      out << "<line x1=\"" << num(x) << "\" y1=\"" << num(y - 4) << "\" x2=\"" << num(x + 18)
          << "\" y2=\"" << num(y - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    } else {
      out << "<circle cx=\"" << num(x + 9) << "\" cy=\"" << num(y - 4) << "\" r=\"3\" fill=\""
          << color << "\"/>\n";
    }
    out << "<text class=\"legend\" x=\"" << num(x + 24) << "\" y=\"" << num(y)
        << "\" font-size=\"10\">" << escape(series[i].label) << "</text>\n";
    y += 14;
  }
}

}  // namespace

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
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

std::string render_line_plot(const LinePlot& plot) {
  constexpr double width = 640, height = 420;
  Frame f{70, 40, width - 100, height - 100, 0, 1, 0, 1};
  auto [x_lo, x_hi] = extent(plot.series, true);
  std::vector<double> x_ticks = plot.x_ticks ? *plot.x_ticks : even_ticks(x_lo, x_hi, 5);
  if (!x_ticks.empty()) {
    x_lo = std::min(x_lo, *std::min_element(x_ticks.begin(), x_ticks.end()));
    x_hi = std::max(x_hi, *std::max_element(x_ticks.begin(), x_ticks.end()));
  }
  f.x_min = x_lo;
  f.x_max = x_hi;
  if (plot.y_range) {
    f.y_min = plot.y_range->first;
    f.y_max = plot.y_range->second;
  } else {
    f.y_min = 0.0;
    f.y_max = std::max(extent(plot.series, false).second * 1.05, 1e-9);
  }

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  axes(out, f, x_ticks, even_ticks(f.y_min, f.y_max, 5), plot.x_label, plot.y_label, plot.title);
  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const auto& s = plot.series[i];
    out << "<polyline class=\"series\" fill=\"none\" stroke=\"" << kPalette[i % std::size(kPalette)]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (k) out << ' ';
      out << num(f.px(s.x[k])) << ',' << num(f.py(s.y[k]));
    }
    out << "\"/>\n";
  }
  legend(out, f, plot.series, true);
  out << "</svg>\n";
  return out.str();
}

std::string render_scatter_panels(std::span<const ScatterPanel> panels, const std::string& title) {
  constexpr double panel_w = 320, height = 380;
  const double width = panel_w * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(width / 2) << "\" y=\"18\" font-size=\"15\" text-anchor=\"middle\">"
      << escape(title) << "</text>\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& panel = panels[p];
    Frame f{panel_w * static_cast<double>(p) + 60, 60, panel_w - 80, height - 120, 0, 1, 0, 1};
    auto [x_lo, x_hi] = extent(panel.groups, true);
    auto [y_lo, y_hi] = extent(panel.groups, false);
    const double xpad = 0.05 * (x_hi - x_lo), ypad = 0.05 * (y_hi - y_lo);
    f.x_min = x_lo - xpad;
    f.x_max = x_hi + xpad;
    f.y_min = y_lo - ypad;
    f.y_max = y_hi + ypad;
    axes(out, f, even_ticks(f.x_min, f.x_max, 4), even_ticks(f.y_min, f.y_max, 5), panel.x_label,
         panel.y_label, panel.title);
    for (std::size_t g = 0; g < panel.groups.size(); ++g) {
      const auto& s = panel.groups[g];
      const char* color = kPalette[g % std::size(kPalette)];
      for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
        if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
        out << "<circle class=\"point\" cx=\"" << num(f.px(s.x[k])) << "\" cy=\"" << num(f.py(s.y[k]))
            << "\" r=\"2.5\" fill=\"" << color << "\" fill-opacity=\"0.7\"/>\n";
      }
    }
    legend(out, f, panel.groups, false);
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace treekta::svg
