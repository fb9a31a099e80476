#include "fisher/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace fisher {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const std::array<const char*, 8> kPalette = {"#1f77b4", "#2ca02c", "#d62728", "#9467bd",
                                             "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
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

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;
  double pixel_lo = 0.0;
  double pixel_hi = 1.0;

  double map(double v) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double t = ((log ? std::log10(v) : v) - a) / (b - a);
    return pixel_lo + t * (pixel_hi - pixel_lo);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::floor(std::log10(lo)); e <= std::ceil(std::log10(hi)); e += 1.0) {
        const double v = std::pow(10.0, e);
        if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) out.push_back(v);
      }
      if (out.size() < 2) out = {lo, hi};
      return out;
    }
    const double span = hi - lo;
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) out.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    return out;
  }
};

Axis fit_axis(std::vector<double> values, bool log, double pixel_lo, double pixel_hi) {
  Axis a;
  a.log = log;
  a.pixel_lo = pixel_lo;
  a.pixel_hi = pixel_hi;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (!std::isfinite(v) || (log && v <= 0.0)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!std::isfinite(lo)) {
    lo = log ? 1.0 : 0.0;
    hi = log ? 10.0 : 1.0;
  }
  if (hi == lo) {
    if (log) {
      lo /= 2.0;
      hi *= 2.0;
    } else {
      const double pad = lo == 0.0 ? 1.0 : 0.1 * std::abs(lo);
      lo -= pad;
      hi += pad;
    }
  } else if (!log) {
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  a.lo = lo;
  a.hi = hi;
  return a;
}

void header(std::ostringstream& out, const std::string& title) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
      << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(title) << "</text>\n";
}

void axis_labels(std::ostringstream& out, const std::string& x_label, const std::string& y_label) {
  const double cx = (kLeft + kWidth - kRight) / 2;
  const double cy = (kTop + kHeight - kBottom) / 2;
  out << "<text x=\"" << num(cx) << "\" y=\"" << num(kHeight - 15) << "\" text-anchor=\"middle\">" << escape(x_label)
      << "</text>\n"
      << "<text x=\"20\" y=\"" << num(cy) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << num(cy) << ")\">"
      << escape(y_label) << "</text>\n";
}

void frame(std::ostringstream& out, const Axis& x, const Axis& y) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0) << "\" height=\""
      << num(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : x.ticks()) {
    const double px = x.map(t);
    out << "<line x1=\"" << num(px) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px) << "\" y2=\"" << num(y0 + 5)
        << "\" stroke=\"black\"/>\n<text x=\"" << num(px) << "\" y=\"" << num(y0 + 18)
        << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : y.ticks()) {
    const double py = y.map(t);
    out << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(py)
        << "\" stroke=\"black\"/>\n<text x=\"" << num(x0 - 8) << "\" y=\"" << num(py + 4)
        << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
}

bool plottable(double x, double y, const Axis& ax, const Axis& ay) {
  return std::isfinite(x) && std::isfinite(y) && (!ax.log || x > 0) && (!ay.log || y > 0);
}

// Colors sampled from a perceptually ordered dark-blue to yellow ramp.
std::string ramp(double t) {
  static const std::array<std::array<double, 3>, 5> stops = {{{68, 1, 84}, {59, 82, 139}, {33, 145, 140},
                                                               {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
  const double f = t - static_cast<double>(i);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(stops[i][0] + f * (stops[i + 1][0] - stops[i][0])),
                static_cast<int>(stops[i][1] + f * (stops[i + 1][1] - stops[i][1])),
                static_cast<int>(stops[i][2] + f * (stops[i + 1][2] - stops[i][2])));
  return buf;
}

// Fractional cell index of v along sorted category values, linear in log space when all positive.
double category_position(const std::vector<double>& cats, double v) {
  if (cats.size() == 1) return 0.5;
  const bool log = std::all_of(cats.begin(), cats.end(), [](double c) { return c > 0; }) && v > 0;
  auto tr = [&](double c) { return log ? std::log(c) : c; };
  const double tv = tr(v);
  std::size_t k = 0;
  while (k + 2 < cats.size() && tr(cats[k + 1]) < tv) ++k;
  const double f = (tv - tr(cats[k])) / (tr(cats[k + 1]) - tr(cats[k]));
  return static_cast<double>(k) + f + 0.5;
}

}  // namespace

std::string render_line_plot(const LinePlot& plot) {
  std::vector<double> xs, ys;
  for (const auto& s : plot.series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
    ys.insert(ys.end(), s.lo.begin(), s.lo.end());
    ys.insert(ys.end(), s.hi.begin(), s.hi.end());
  }
  const Axis ax = fit_axis(xs, plot.log_x, kLeft, kWidth - kRight);
  const Axis ay = fit_axis(ys, plot.log_y, kHeight - kBottom, kTop);

  std::ostringstream out;
  header(out, plot.title);
  frame(out, ax, ay);
  axis_labels(out, plot.x_label, plot.y_label);

  for (std::size_t si = 0; si < plot.series.size(); ++si) {
    const auto& s = plot.series[si];
    const char* color = kPalette[si % kPalette.size()];
    if (!s.lo.empty() && s.lo.size() == s.x.size() && s.hi.size() == s.x.size()) {
      std::string upper, lower;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!plottable(s.x[i], s.hi[i], ax, ay) || !plottable(s.x[i], s.lo[i], ax, ay)) continue;
        upper += num(ax.map(s.x[i])) + "," + num(ay.map(s.hi[i])) + " ";
        lower = num(ax.map(s.x[i])) + "," + num(ay.map(s.lo[i])) + " " + lower;
      }
      if (!upper.empty()) {
        out << "<polygon points=\"" << upper << lower << "\" fill=\"" << color
            << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
      }
    }
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!plottable(s.x[i], s.y[i], ax, ay)) continue;
      pts += num(ax.map(s.x[i])) + "," + num(ay.map(s.y[i])) + " ";
    }
    out << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\"/>\n";
    const double ly = kTop + 16.0 * static_cast<double>(si) + 8.0;
    out << "<line x1=\"" << num(kWidth - kRight + 12) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(kWidth - kRight + 36) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n"
        << "<text x=\"" << num(kWidth - kRight + 42) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.name)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_heat_map(const HeatMap& map) {
  const std::size_t nx = map.xs.size();
  const std::size_t ny = map.ys.size();
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = 0.0;
  for (double v : map.values) {
    const double a = std::abs(v);
    if (!std::isfinite(a) || a <= 0.0) continue;
    vmin = std::min(vmin, a);
    vmax = std::max(vmax, a);
  }
  if (!std::isfinite(vmin)) {
    vmin = 1.0;
    vmax = 10.0;
  }
  if (vmax <= vmin) vmax = vmin * 10.0;
  const double lmin = std::log10(vmin), lmax = std::log10(vmax);

  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  const double cw = nx ? (x1 - x0) / static_cast<double>(nx) : 0.0;
  const double ch = ny ? (y0 - y1) / static_cast<double>(ny) : 0.0;

  std::ostringstream out;
  header(out, map.title);
  axis_labels(out, map.x_label, map.y_label);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double v = std::abs(map.values[j * nx + i]);
      const std::string fill =
          (std::isfinite(v) && v > 0.0) ? ramp((std::log10(v) - lmin) / (lmax - lmin)) : std::string("#cccccc");
      out << "<rect x=\"" << num(x0 + cw * static_cast<double>(i)) << "\" y=\""
          << num(y0 - ch * static_cast<double>(j + 1)) << "\" width=\"" << num(cw) << "\" height=\"" << num(ch)
          << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0) << "\" height=\""
      << num(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < nx; ++i) {
    out << "<text x=\"" << num(x0 + cw * (static_cast<double>(i) + 0.5)) << "\" y=\"" << num(y0 + 18)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << tick_label(map.xs[i]) << "</text>\n";
  }
  for (std::size_t j = 0; j < ny; ++j) {
    out << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(y0 - ch * (static_cast<double>(j) + 0.5) + 4)
        << "\" text-anchor=\"end\" font-size=\"10\">" << tick_label(map.ys[j]) << "</text>\n";
  }

  const std::array<const char*, 2> dashes = {"6,4", "8,3,2,3"};
  for (std::size_t k = 0; k < map.overlays.size(); ++k) {
    const auto& s = map.overlays[k];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) || nx == 0 || ny == 0) continue;
      const double px = x0 + cw * category_position(map.xs, s.x[i]);
      const double py = y0 - ch * category_position(map.ys, s.y[i]);
      if (py < y1 || py > y0) continue;
      pts += num(px) + "," + num(py) + " ";
    }
    out << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"white\" stroke-width=\"2\" stroke-dasharray=\""
        << dashes[k % dashes.size()] << "\"/>\n";
    out << "<text x=\"" << num(kWidth - kRight + 12) << "\" y=\"" << num(kHeight - kBottom - 16.0 * static_cast<double>(k))
        << "\" font-size=\"11\">" << (k ? "dash-dot: " : "dashed: ") << escape(s.name) << "</text>\n";
  }

  const double bx = kWidth - kRight + 20, bw = 18, bh = 200;
  const int steps = 40;
  for (int s = 0; s < steps; ++s) {
    const double t = (s + 0.5) / steps;
    out << "<rect x=\"" << num(bx) << "\" y=\"" << num(y1 + bh * (1.0 - static_cast<double>(s + 1) / steps))
        << "\" width=\"" << num(bw) << "\" height=\"" << num(bh / steps + 0.5) << "\" fill=\"" << ramp(t) << "\"/>\n";
  }
  out << "<text x=\"" << num(bx + bw + 6) << "\" y=\"" << num(y1 + 10) << "\" font-size=\"11\">" << tick_label(vmax)
      << "</text>\n"
      << "<text x=\"" << num(bx + bw + 6) << "\" y=\"" << num(y1 + bh) << "\" font-size=\"11\">" << tick_label(vmin)
      << "</text>\n"
      << "<text x=\"" << num(bx) << "\" y=\"" << num(y1 + bh + 18) << "\" font-size=\"11\">log10 scale</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace fisher
