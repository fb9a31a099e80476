#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fisher/manifest.hpp"
#include "fisher/outputs.hpp"
#include "fisher/svg_plot.hpp"

using namespace fisher;
namespace fs = std::filesystem;

namespace {

SweepResult small_table(PlotKind kind) {
  SweepResult r;
  r.name = "table";
  r.coord_names = {"N", "delta"};
  r.metric_names = {"abs_rel_error"};
  for (double n : {100.0, 1000.0})
    for (double d : {0.1, 0.2, 0.3}) r.rows.push_back({{n, d}, {{0.1 * d, 0.2 * d, 0.3 * d, 5}}});
  r.plot.kind = kind;
  r.plot.x_coord = 1;
  r.plot.series_coord = 0;
  r.plot.has_series = true;
  r.plot.y_coord = 0;
  r.plot.title = "t";
  return r;
}

int count(const std::string& s, const std::string& what) {
  int n = 0;
  for (std::size_t p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("outputs") {

TEST_CASE("sweep CSV header and rows") {
  const std::string csv = sweep_csv(small_table(PlotKind::kLine));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "N,delta,abs_rel_error_median,abs_rel_error_p5,abs_rel_error_p95,n_repetitions");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 6);
}

TEST_CASE("plots are single SVG documents") {
  for (auto kind : {PlotKind::kLine, PlotKind::kHeatMap}) {
    const std::string svg = plot_sweep(small_table(kind));
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count(svg, "<svg") == 1);
    CHECK(count(svg, "</svg>") == 1);
  }
  LinePlot empty;
  CHECK(count(render_line_plot(empty), "<svg") == 1);
  HeatMap hm;
  hm.xs = {1, 2};
  hm.ys = {1};
  hm.values = {0.0, 3.0};
  CHECK(count(render_heat_map(hm), "</svg>") == 1);
}

TEST_CASE("write_outputs creates one CSV and SVG per table plus the manifest") {
  const fs::path dir = fs::temp_directory_path() / "fisher_tests" / "outputs";
  fs::remove_all(dir);
  std::vector<SweepResult> tables{small_table(PlotKind::kLine), small_table(PlotKind::kHeatMap)};
  tables[1].name = "other";
  Manifest m;
  m.set("experiment", "test");
  const auto files = write_outputs(tables, m, dir);
  CHECK(files.size() == 5);
  for (const char* f : {"table.csv", "table.svg", "other.csv", "other.svg", "manifest.txt"})
    CHECK(fs::exists(dir / f));
  CHECK(Manifest::read(dir / "manifest.txt").get("experiment") == "test");
}

TEST_CASE("unwritable destination is an error") {
  const fs::path file = fs::temp_directory_path() / "fisher_tests" / "a_file";
  fs::create_directories(file.parent_path());
  std::ofstream(file) << "x";
  std::vector<SweepResult> tables{small_table(PlotKind::kLine)};
  CHECK_THROWS(write_outputs(tables, Manifest{}, file / "sub"));
}

}  // TEST_SUITE
