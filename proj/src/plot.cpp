#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "thermofit/report.hpp"

namespace thermofit {
namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kCurveSegments = 120;

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  const double nice = frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0;
  return nice * mag;
}

// Expands a range outward to whole tick steps; degenerate spans get width 1.
struct Axis1D {
  double lo, hi, step;
  explicit Axis1D(Range r) {
    if (!(r.hi > r.lo)) {
      const double c = std::isfinite(r.lo) ? r.lo : 0.0;
      r.lo = c - 0.5;
      r.hi = c + 0.5;
    }
    step = nice_step(r.hi - r.lo);
    lo = std::floor(r.lo / step) * step;
    hi = std::ceil(r.hi / step) * step;
  }
};

std::vector<double> ticks(const Axis1D& a) {
  const auto count = static_cast<int>(std::lround((a.hi - a.lo) / a.step));
  std::vector<double> v;
  for (int k = 0; k <= count; ++k) v.push_back(a.lo + k * a.step);
  return v;
}

std::string tick_label(double v, double step) {
  const int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step)));
  std::string s = fmt::format("{:.{}f}", v, decimals);
  if (s == "-0") s = "0";
  return s;
}

}  // namespace

std::string render_svg(std::span<const PlotSeries> series, const PlotOptions& opts) {
  Range xr;
  Range yr;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      xr.add(p.x);
      yr.add(p.y);
    }
  }
  for (const auto& s : series) {
    if (s.line) {
      yr.add(predict(*s.line, xr.lo));
      yr.add(predict(*s.line, xr.hi));
    }
  }
  const Axis1D xa(xr);
  for (const auto& s : series) {
    if (!s.curve) continue;
    for (int k = 0; k <= kCurveSegments; ++k) {
      yr.add(model_eval(*s.curve, xa.lo + (xa.hi - xa.lo) * k / kCurveSegments));
    }
  }
  const Axis1D ya(yr);

  const double left = 70, right = 170, top = 40, bottom = 60;
  const double pw = opts.width - left - right;
  const double ph = opts.height - top - bottom;
  auto sx = [&](double x) { return left + (x - xa.lo) / (xa.hi - xa.lo) * pw; };
  auto sy = [&](double y) { return top + ph - (y - ya.lo) / (ya.hi - ya.lo) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      opts.width, opts.height);
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
                     opts.width, opts.height);
  out += fmt::format(
      "<text x=\"{:.2f}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
      left + pw / 2, xml_escape(opts.title));

  // Axes and ticks.
  out += "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
  out += fmt::format("<polyline points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\"/>\n",
                     left, top, left, top + ph, left + pw, top + ph);
  for (double v : ticks(xa)) {
    out += fmt::format("<polyline points=\"{0:.2f},{1:.2f} {0:.2f},{2:.2f}\"/>\n", sx(v),
                       top + ph, top + ph + 5);
  }
  for (double v : ticks(ya)) {
    out += fmt::format("<polyline points=\"{1:.2f},{0:.2f} {2:.2f},{0:.2f}\"/>\n", sy(v),
                       left - 5, left);
  }
  out += "</g>\n";
  out += "<g class=\"tick-labels\">\n";
  for (double v : ticks(xa)) {
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                       sx(v), top + ph + 18, tick_label(v, xa.step));
  }
  for (double v : ticks(ya)) {
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n",
                       left - 8, sy(v) + 4, tick_label(v, ya.step));
  }
  out += "</g>\n";
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                     left + pw / 2, opts.height - 18.0, xml_escape(opts.x_label));
  out += fmt::format(
      "<text x=\"18\" y=\"{0:.2f}\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 18 {0:.2f})\">{1}</text>\n",
      top + ph / 2, xml_escape(opts.y_label));

  // Data and fitted curves.
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* colour = kPalette[i % kPalette.size()];
    out += fmt::format("<g class=\"series\" id=\"series-{}\">\n", i);
    for (const auto& p : s.points) {
      out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3.5\" fill=\"{}\"/>\n",
                         sx(p.x), sy(p.y), colour);
    }
    if (s.line && !s.points.empty()) {
      out += fmt::format(
          "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
          "stroke-width=\"1.5\"/>\n",
          sx(xr.lo), sy(predict(*s.line, xr.lo)), sx(xr.hi), sy(predict(*s.line, xr.hi)),
          colour);
    }
    if (s.curve && !s.points.empty()) {
      std::string d;
      for (int k = 0; k <= kCurveSegments; ++k) {
        const double t = xr.lo + (xr.hi - xr.lo) * k / kCurveSegments;
        d += fmt::format("{}{:.2f},{:.2f}", k == 0 ? "M" : " L", sx(t),
                         sy(model_eval(*s.curve, t)));
      }
      out += fmt::format(
          "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" "
          "stroke-dasharray=\"6 3\"/>\n",
          d, colour);
    }
    out += "</g>\n";
  }

  // Legend.
  const double lx = left + pw + 20;
  double ly = top + 10;
  out += "<g class=\"legend\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* colour = kPalette[i % kPalette.size()];
    const std::string name = xml_escape(s.label.empty() ? fmt::format("series {}", i + 1)
                                                        : s.label);
    out += fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"8\" height=\"8\" fill=\"{}\"/>\n", lx + 6,
        ly - 8, colour);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", lx + 26, ly, name);
    ly += 18;
    if (s.line) {
      out += fmt::format(
          "<polyline points=\"{:.2f},{:.2f} {:.2f},{:.2f}\" stroke=\"{}\" "
          "stroke-width=\"1.5\" fill=\"none\"/>\n",
          lx, ly - 4, lx + 20, ly - 4, colour);
      out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">least squares line</text>\n",
                         lx + 26, ly);
      ly += 18;
    }
    if (s.curve) {
      out += fmt::format(
          "<polyline points=\"{:.2f},{:.2f} {:.2f},{:.2f}\" stroke=\"{}\" "
          "stroke-width=\"1.5\" stroke-dasharray=\"6 3\" fill=\"none\"/>\n",
          lx, ly - 4, lx + 20, ly - 4, colour);
      out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">step response</text>\n", lx + 26,
                         ly);
      ly += 18;
    }
    ly += 6;
  }
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace thermofit
