#include "fisher/outputs.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fisher/svg_plot.hpp"

namespace fisher {

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  bool first = true;
  auto sep = [&] {
    if (!first) out << ',';
    first = false;
  };
  for (const auto& c : result.coord_names) {
    sep();
    out << c;
  }
  for (const auto& m : result.metric_names) {
    sep();
    out << m << "_median," << m << "_p5," << m << "_p95";
  }
  sep();
  out << "n_repetitions\n";
  for (const auto& row : result.rows) {
    first = true;
    for (double c : row.coords) {
      sep();
      out << format_double(c);
    }
    std::size_t reps = 0;
    for (const auto& m : row.metrics) {
      sep();
      out << format_double(m.median) << ',' << format_double(m.p5) << ',' << format_double(m.p95);
      reps = std::max(reps, m.count);
    }
    sep();
    out << reps << '\n';
  }
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  write_sweep_csv(out, result);
  return out.str();
}

std::string plot_sweep(const SweepResult& result) {
  const PlotHint& hint = result.plot;
  if (hint.kind == PlotKind::kHeatMap) {
    std::vector<double> xs, ys;
    for (const auto& row : result.rows) {
      xs.push_back(row.coords[hint.x_coord]);
      ys.push_back(row.coords[hint.y_coord]);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    HeatMap map{hint.title, hint.x_label, hint.y_label, xs, ys, std::vector<double>(xs.size() * ys.size(), 0.0), {}};
    for (const auto& row : result.rows) {
      const auto i = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), row.coords[hint.x_coord]) - xs.begin());
      const auto j = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), row.coords[hint.y_coord]) - ys.begin());
      map.values[j * xs.size() + i] = row.metrics[hint.metric].median;
    }
    // Reference curves: any coordinate named like "*_line" gives y as a function of x.
    for (std::size_t c = 0; c < result.coord_names.size(); ++c) {
      const std::string& name = result.coord_names[c];
      if (name.size() < 5 || name.compare(name.size() - 5, 5, "_line") != 0) continue;
      std::map<double, double> curve;
      for (const auto& row : result.rows) curve[row.coords[hint.x_coord]] = row.coords[c];
      LineSeries s;
      s.name = name;
      for (const auto& [x, y] : curve) {
        s.x.push_back(x);
        s.y.push_back(y);
      }
      map.overlays.push_back(std::move(s));
    }
    return render_heat_map(map);
  }

  LinePlot plot{hint.title, hint.x_label, hint.y_label, hint.log_x, hint.log_y, {}};
  std::map<double, std::size_t> series_of;
  for (const auto& row : result.rows) {
    const double key = hint.has_series ? row.coords[hint.series_coord] : 0.0;
    auto it = series_of.find(key);
    if (it == series_of.end()) {
      it = series_of.emplace(key, plot.series.size()).first;
      LineSeries s;
      s.name = hint.has_series ? result.coord_names[hint.series_coord] + " = " + format_double(key)
                               : result.metric_names[hint.metric];
      plot.series.push_back(std::move(s));
    }
    auto& s = plot.series[it->second];
    const auto& m = row.metrics[hint.metric];
    s.x.push_back(row.coords[hint.x_coord]);
    s.y.push_back(m.median);
    s.lo.push_back(m.p5);
    s.hi.push_back(m.p95);
  }
  return render_line_plot(plot);
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

std::vector<std::filesystem::path> write_outputs(std::span<const SweepResult> results, const Manifest& manifest,
                                                 const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + directory.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const auto& r : results) {
    const auto csv = directory / (r.name + ".csv");
    write_text(csv, sweep_csv(r));
    written.push_back(csv);
    const auto svg = directory / (r.name + ".svg");
    write_text(svg, plot_sweep(r));
    written.push_back(svg);
  }
  const auto man = directory / "manifest.txt";
  manifest.write(man);
  written.push_back(man);
  return written;
}

}  // namespace fisher
