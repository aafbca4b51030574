#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace fraceco::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 800;
  int height = 500;
  /// Polylines are decimated to at most this many vertices.
  std::size_t max_points = 4000;
  /// Optional markers drawn as small circles (e.g. equilibria).
  std::vector<std::pair<double, double>> markers;
};

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> p = {"#1f77b4", "#d62728", "#2ca02c",
                                             "#9467bd", "#ff7f0e"};
  return p;
}

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round-number ticks covering [lo, hi].
inline std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  }
  return ticks;
}

}  // namespace detail

/// Renders line series as a standalone SVG 1.1 document.
inline std::string line_chart(const std::vector<Series>& series,
                              const ChartSpec& spec) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  for (const auto& [mx, my] : spec.markers) {
    xmin = std::min(xmin, mx);
    xmax = std::max(xmax, mx);
    ymin = std::min(ymin, my);
    ymax = std::max(ymax, my);
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double left = 70, right = 20, top = 40, bottom = 55;
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  using detail::fmt;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" viewBox=\"0 0 " +
         std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt(spec.width / 2.0) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + detail::escape(spec.title) + "</text>\n";

  // Axes and ticks.
  out += "<g stroke=\"#444\" stroke-width=\"1\" fill=\"none\">\n";
  out += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" +
         fmt(pw) + "\" height=\"" + fmt(ph) + "\"/>\n";
  out += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  for (double t : detail::nice_ticks(xmin, xmax)) {
    const double x = px(t);
    out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(top + ph) + "\" x2=\"" +
           fmt(x) + "\" y2=\"" + fmt(top + ph + 5) + "\" stroke=\"#444\"/>\n";
    out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(top + ph + 18) +
           "\" text-anchor=\"middle\">" + detail::tick_label(t) + "</text>\n";
  }
  for (double t : detail::nice_ticks(ymin, ymax)) {
    const double y = py(t);
    out += "<line x1=\"" + fmt(left - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(left) + "\" y2=\"" + fmt(y) + "\" stroke=\"#444\"/>\n";
    out += "<text x=\"" + fmt(left - 8) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\">" + detail::tick_label(t) + "</text>\n";
  }
  out += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"" +
         fmt(spec.height - 12.0) + "\" text-anchor=\"middle\" font-size=\"13\">" +
         detail::escape(spec.x_label) + "</text>\n";
  out += "<text transform=\"translate(16," + fmt(top + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\" font-size=\"13\">" +
         detail::escape(spec.y_label) + "</text>\n</g>\n";

  // Data.
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::string color =
        s.color.empty() ? palette()[k % palette().size()] : s.color;
    const std::size_t n = s.x.size();
    const std::size_t stride =
        n > spec.max_points ? (n + spec.max_points - 1) / spec.max_points : 1;
    out += "<polyline fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < n; i += stride) {
      out += fmt(px(s.x[i])) + "," + fmt(py(s.y[i])) + " ";
    }
    if (n > 0 && (n - 1) % stride != 0) {
      out += fmt(px(s.x[n - 1])) + "," + fmt(py(s.y[n - 1]));
    }
    out += "\"/>\n";
    // Legend entry.
    const double ly = top + 14 + 16.0 * static_cast<double>(k);
    out += "<line x1=\"" + fmt(left + pw - 110) + "\" y1=\"" + fmt(ly) +
           "\" x2=\"" + fmt(left + pw - 90) + "\" y2=\"" + fmt(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fmt(left + pw - 85) + "\" y=\"" + fmt(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           detail::escape(s.label) + "</text>\n";
  }
  for (const auto& [mx, my] : spec.markers) {
    out += "<circle cx=\"" + fmt(px(mx)) + "\" cy=\"" + fmt(py(my)) +
           "\" r=\"4\" fill=\"black\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fraceco::svg
