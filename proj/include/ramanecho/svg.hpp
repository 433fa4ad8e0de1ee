#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ramanecho/io.hpp"

namespace ramanecho {

struct SvgSeries {
  std::string name;
  std::string color;
  bool dashed = false;
  const std::vector<double>* values = nullptr;
};

// Minimal polyline plot: framed axes with ticks, one polyline per series,
// legend in the top-right corner. No external plotting dependency.
inline std::string render_svg(const std::vector<double>& times,
                              const std::vector<SvgSeries>& series, const std::string& x_label,
                              const std::string& title) {
  const double width = 960, height = 520;
  const double left = 70, right = 30, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x0 = times.empty() ? 0.0 : times.front();
  double x1 = times.empty() ? 1.0 : times.back();
  if (x1 <= x0) x1 = x0 + 1.0;
  double y0 = 0.0, y1 = 1e-12;
  for (const auto& s : series)
    for (double v : *s.values) {
      y0 = std::min(y0, v);
      y1 = std::max(y1, v);
    }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto px = [&](double t) { return left + (t - x0) / (x1 - x0) * plot_w; };
  auto py = [&](double v) { return top + (y1 - v) / (y1 - y0) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_number(width) +
         "\" height=\"" + format_number(height) + "\" viewBox=\"0 0 " + format_number(width) +
         " " + format_number(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + format_number(width / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         title + "</text>\n";
  svg += "<rect x=\"" + format_number(left) + "\" y=\"" + format_number(top) + "\" width=\"" +
         format_number(plot_w) + "\" height=\"" + format_number(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  const int n_ticks = 6;
  for (int i = 0; i <= n_ticks; ++i) {
    const double t = x0 + (x1 - x0) * i / n_ticks;
    const double v = y0 + (y1 - y0) * i / n_ticks;
    char label[32];
    svg += "<line x1=\"" + format_number(px(t)) + "\" y1=\"" + format_number(top + plot_h) +
           "\" x2=\"" + format_number(px(t)) + "\" y2=\"" + format_number(top + plot_h + 5) +
           "\" stroke=\"black\"/>\n";
    std::snprintf(label, sizeof(label), "%.4g", t);
    svg += "<text x=\"" + format_number(px(t)) + "\" y=\"" + format_number(top + plot_h + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + label +
           "</text>\n";
    svg += "<line x1=\"" + format_number(left - 5) + "\" y1=\"" + format_number(py(v)) +
           "\" x2=\"" + format_number(left) + "\" y2=\"" + format_number(py(v)) +
           "\" stroke=\"black\"/>\n";
    std::snprintf(label, sizeof(label), "%.3g", v);
    svg += "<text x=\"" + format_number(left - 8) + "\" y=\"" + format_number(py(v) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + label +
           "</text>\n";
  }
  svg += "<text x=\"" + format_number(left + plot_w / 2) + "\" y=\"" +
         format_number(height - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + x_label +
         "</text>\n";

  for (const auto& s : series) {
    std::string points;
    const size_t stride = std::max<size_t>(1, times.size() / 4000);
    for (size_t i = 0; i < times.size(); i += stride) {
      points += format_number(px(times[i])) + "," + format_number(py((*s.values)[i])) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\"" +
           (s.dashed ? std::string(" stroke-dasharray=\"5,4\"") : std::string()) +
           " stroke-width=\"1.2\" points=\"" + points + "\"/>\n";
  }

  double ly = top + 14;
  for (const auto& s : series) {
    const double lx = width - right - 170;
    svg += "<line x1=\"" + format_number(lx) + "\" y1=\"" + format_number(ly - 4) + "\" x2=\"" +
           format_number(lx + 26) + "\" y2=\"" + format_number(ly - 4) + "\" stroke=\"" + s.color +
           "\"" + (s.dashed ? " stroke-dasharray=\"5,4\"" : "") + " stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + format_number(lx + 32) + "\" y=\"" + format_number(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + s.name + "</text>\n";
    ly += 16;
  }
  svg += "</svg>\n";
  return svg;
}

// Trajectory plot with the observables the protocols track.
inline std::string render_trajectory_svg(const EnsembleTrajectory& traj, const std::string& title) {
  const std::vector<SvgSeries> series = {
      {"rho22", "#cc0000", false, &traj.rho22},
      {"rho33", "#008800", false, &traj.rho33},
      {"Re rho12", "#0000cc", false, &traj.re_rho12},
      {"|<rho12>|", "#000000", false, &traj.abs_rho12},
      {"Im rho13", "#888888", true, &traj.im_rho13},
  };
  return render_svg(traj.times, series, "t (us)", title);
}

}  // namespace ramanecho
