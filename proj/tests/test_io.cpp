#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fisher/fim.hpp"
#include "fisher/manifest.hpp"
#include "fisher/sample_io.hpp"

using namespace fisher;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "fisher_tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("manifest text round trip") {
  Manifest m;
  m.set("experiment", "bench-normal");
  m.set("sigma", 0.1);
  m.set("samples", std::uint64_t{10000});
  m.set("sigmas", std::vector<double>{0.5, 1.0, 2.0});
  m.set("seeds", std::vector<std::uint64_t>{1, 18446744073709551615ULL});
  const Manifest back = Manifest::parse(m.to_string());
  CHECK(back.entries() == m.entries());
  CHECK(back.get_double("sigma") == 0.1);
  CHECK(back.get_u64("samples") == 10000);
  CHECK(back.get_doubles("sigmas") == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(back.get("experiment") == "bench-normal");
  CHECK_FALSE(back.find("nope").has_value());
  CHECK_THROWS(back.get("nope"));
}

TEST_CASE("manifest parsing rules") {
  const Manifest m = Manifest::parse("# comment\n\n  a =  1.5  \nb=x y\n");
  CHECK(m.get_double("a") == 1.5);
  CHECK(m.get("b") == "x y");
  CHECK_THROWS(Manifest::parse("a = 1\na = 2\n"));
  CHECK_THROWS(Manifest::parse("no separator\n"));
  Manifest d;
  d.set("k", "v");
  d.set("k", "w");
  CHECK(d.get("k") == "w");
  CHECK(d.entries().size() == 1);
}

TEST_CASE("manifest files") {
  const fs::path dir = scratch("manifest");
  Manifest m;
  m.set("x", 3.25);
  m.write(dir / "manifest.txt");
  CHECK(Manifest::read(dir / "manifest.txt").get_double("x") == 3.25);
  try {
    Manifest::read(dir / "missing.txt");
    FAIL("expected an error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("missing.txt") != std::string::npos);
  }
}

TEST_CASE("number parsing") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 20160105.0}) CHECK(parse_double(format_double(v)) == v);
  CHECK(parse_u64("1e4") == 10000);
  CHECK(parse_u64("42") == 42);
  CHECK_THROWS_AS(parse_u64("2.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_u64("-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double("1.0x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
  CHECK(utc_timestamp().back() == 'Z');
  CHECK_FALSE(tool_version().empty());
}

TEST_CASE("sample files") {
  std::istringstream in("# header\n1.5\n\n-2\n  3e-1 \n");
  const SampleSet s = parse_samples(in);
  REQUIRE(s.size() == 3);
  CHECK(s.values()[2] == 0.3);

  std::istringstream bad("1.0\nabc\n");
  CHECK_THROWS_AS(parse_samples(bad, "bad.txt"), std::invalid_argument);

  const fs::path dir = scratch("samples");
  const SampleSet t(std::vector<double>{0.1, 1.0 / 3.0, -7.25});
  write_samples(dir / "s.txt", t, {"drawn for a test"});
  CHECK(read_samples(dir / "s.txt").content_hash() == t.content_hash());
  CHECK_THROWS(read_samples(dir / "absent.txt"));
}

TEST_CASE("density and FIM CSV layout") {
  const GridSpec g = make_grid_spec(0.0, 1.0, 10);
  DensityEstimate d{g, std::vector<double>(10, 1.0)};
  std::ostringstream dens;
  write_density_csv(dens, d);
  std::istringstream lines(dens.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "x,q");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 10);

  FimEstimate f;
  f.names = {"mu", "sigma"};
  f.g = Matrix(2, {1.0, 0.0, 0.0, 2.0});
  f.epsilon.resize(4);
  f.samples = 100;
  std::ostringstream fim;
  write_fim_csv(fim, f);
  std::istringstream fl(fim.str());
  std::getline(fl, line);
  CHECK(line == "param_mu,param_nu,g,epsilon,verdict,N,scheme,cutoff");
  rows = 0;
  while (std::getline(fl, line)) ++rows;
  CHECK(rows == 3);
}

}  // TEST_SUITE
