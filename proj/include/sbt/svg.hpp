#pragma once

// Minimal SVG line plots for weight slices and error tables.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "sbt/errors.hpp"

namespace sbt {

struct SvgSeries {
  std::string name;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

/// Draws every series against the shared abscissa `x`. `log_y` plots log10 of positive values.
inline void write_svg_plot(std::ostream& os, const std::vector<double>& x, const std::vector<SvgSeries>& series,
                           const std::string& title, bool log_y = false) {
  if (x.size() < 2) throw PreconditionError("svg plot needs at least two abscissae");
  const double W = 640, H = 400, L = 60, R = 20, T = 40, B = 40;
  auto tr = [log_y](double v) { return log_y ? std::log10(std::max(v, 1e-300)) : v; };
  double x0 = *std::min_element(x.begin(), x.end()), x1 = *std::max_element(x.begin(), x.end());
  double y0 = HUGE_VAL, y1 = -HUGE_VAL;
  for (const auto& s : series) {
    if (s.y.size() != x.size()) throw PreconditionError("svg series length mismatch");
    for (double v : s.y)
      if (std::isfinite(tr(v))) {
        y0 = std::min(y0, tr(v));
        y1 = std::max(y1, tr(v));
      }
  }
  if (!(y1 > y0)) {
    y0 -= 1.0;
    y1 += 1.0;
  }
  if (x1 == x0) x1 = x0 + 1.0;
  auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (tr(v) - y0) / (y1 - y0) * (H - T - B); };
  char buf[128];

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << title << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + k * (x1 - x0) / 4, yv = y0 + k * (y1 - y0) / 4;
    std::snprintf(buf, sizeof buf, "%.3g", xv);
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\" font-size=\"11\">" << buf
       << "</text>\n";
    std::snprintf(buf, sizeof buf, log_y ? "1e%.2g" : "%.3g", yv);
    const double ypix = H - B - (yv - y0) / (y1 - y0) * (H - T - B);
    os << "<text x=\"" << L - 6 << "\" y=\"" << ypix + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << buf
       << "</text>\n";
  }
  int row = 0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!std::isfinite(tr(s.y[i]))) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x[i]), py(s.y[i]));
      os << buf;
    }
    os << "\"/>\n";
    os << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 * (row++ + 1) << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
       << s.color << "\">" << s.name << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace sbt
