#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fisher/grid.hpp"
#include "fisher/normal.hpp"
#include "oracles.hpp"

using namespace fisher;

TEST_SUITE("grid") {

TEST_CASE("make_grid AUTO doubles the sample range around the midrange") {
  const GridSpec g = make_grid(SampleSet({-1.0, 1.0}), BoxPolicy::automatic(), 100);
  CHECK(g.lower == -2.0);
  CHECK(g.upper == 2.0);
  CHECK(g.num_points == 100);
  CHECK(g.spacing() == doctest::Approx(0.04));

  const GridSpec shifted = make_grid(SampleSet({3.0, 7.0}), BoxPolicy::automatic(), 20);
  CHECK(shifted.lower == 1.0);
  CHECK(shifted.upper == 9.0);
}

TEST_CASE("make_grid with explicit bounds ignores the samples") {
  const GridSpec g = make_grid(SampleSet({0.0, 10.0}), BoxPolicy::fixed(-4.0, 1.0), 200);
  CHECK(g.lower == -4.0);
  CHECK(g.upper == 1.0);
  CHECK(g.spacing() == doctest::Approx(0.025));
}

TEST_CASE("make_grid rejects degenerate boxes") {
  CHECK_THROWS_AS(make_grid(SampleSet({5.0, 5.0}), BoxPolicy::automatic(), 100), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(SampleSet({5.0}), BoxPolicy::automatic(), 100), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(SampleSet({0.0, 1.0}), BoxPolicy::fixed(1.0, 1.0), 100), std::invalid_argument);
  CHECK_THROWS_AS(make_grid_spec(0.0, 1.0, 9), std::invalid_argument);
  CHECK_THROWS_AS(make_grid_spec(1.0, 0.0, 10), std::invalid_argument);
}

TEST_CASE("make_grid over several sets covers their union") {
  const std::vector<SampleSet> sets{SampleSet({0.0, 1.0}), SampleSet({-3.0, 0.5})};
  const GridSpec g = make_grid(sets, BoxPolicy::automatic(), 50);
  CHECK(g.lower == doctest::Approx(-5.0));
  CHECK(g.upper == doctest::Approx(3.0));
}

TEST_CASE("cell centers sit at lower + (i + 1/2) h") {
  const GridSpec g = make_grid_spec(-1.0, 1.0, 10);
  const auto c = g.centers();
  REQUIRE(c.size() == 10);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(-1.0 + (i + 0.5) * 0.2));
}

TEST_CASE("SampleSet rejects non-finite values and hashes content") {
  CHECK_THROWS_AS(SampleSet({1.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
  CHECK_THROWS_AS(SampleSet({std::numeric_limits<double>::infinity()}), std::invalid_argument);
  CHECK(SampleSet({1.0, 2.0}).content_hash() == SampleSet({1.0, 2.0}).content_hash());
  CHECK(SampleSet({1.0, 2.0}).content_hash() != SampleSet({2.0, 1.0}).content_hash());
  CHECK(SampleSet({4.0, -2.0, 3.0}).min() == -2.0);
  CHECK(SampleSet({4.0, -2.0, 3.0}).max() == 4.0);
}

TEST_CASE("histogram examples") {
  const RawHistogram one = histogram(SampleSet({0.5}), GridSpec{0.0, 1.0, 1});
  REQUIRE(one.density.size() == 1);
  CHECK(one.density[0] == 1.0);

  const RawHistogram two = histogram(SampleSet({0.25, 0.75}), GridSpec{0.0, 1.0, 2});
  CHECK(two.density[0] == 1.0);
  CHECK(two.density[1] == 1.0);
}

TEST_CASE("histogram conserves mass and reports dropped samples") {
  const SampleSet s = normal_sample({0.0, 1.0}, 10000, 3);
  const GridSpec g = make_grid_spec(-5.0, 5.0, 100);
  const RawHistogram h = histogram(s, g);
  double mass = 0.0;
  for (double r : h.density) mass += r * g.spacing();
  CHECK(std::abs(mass - 1.0) < 1e-12);
  CHECK(h.inside + h.dropped == 10000);

  const RawHistogram clipped = histogram(SampleSet({-1.0, 0.2, 0.4, 9.0}), make_grid_spec(0.0, 1.0, 10));
  CHECK(clipped.dropped == 2);
  CHECK(clipped.inside == 2);
  CHECK_THROWS_AS(histogram(SampleSet({5.0, 6.0}), make_grid_spec(0.0, 1.0, 10)), std::invalid_argument);
}

TEST_CASE("integrate is the midpoint sum") {
  const GridSpec g1 = make_grid_spec(0.0, 1.0, 10);
  CHECK(integrate(std::vector<double>(10, 1.0), g1) == doctest::Approx(1.0));
  const GridSpec g2 = make_grid_spec(0.0, 3.0, 30);
  CHECK(integrate(std::vector<double>(30, 2.0), g2) == doctest::Approx(6.0));
  CHECK_THROWS_AS(integrate(std::vector<double>(9, 1.0), g1), std::invalid_argument);
}

TEST_CASE("analytic_density is normalized") {
  const GridSpec g = make_grid_spec(-3.0, 3.0, 37);
  const auto d = analytic_density(g, [](double x) { return oracle::gauss(x, 0.5, 1.0); });
  CHECK(std::abs(integrate(d.values, g) - 1.0) < 1e-12);
  CHECK(d.method == DensityMethod::kAnalytic);
}

TEST_CASE("kl_divergence examples") {
  const GridSpec g = make_grid_spec(-12.0, 12.0, 2000);
  const auto p1 = analytic_density(g, [](double x) { return oracle::gauss(x, 0, 1); });
  const auto p2 = analytic_density(g, [](double x) { return oracle::gauss(x, 0, 2); });
  CHECK(kl_divergence(p1, p1) == doctest::Approx(0.0));
  const double expected = oracle::normal_kl_closed(0, 1, 0, 2);
  CHECK(expected == doctest::Approx(std::log(2.0) + 0.125 - 0.5));
  CHECK(std::abs(kl_divergence(p1, p2) - expected) < 1e-4);

  const GridSpec u = make_grid_spec(0.0, 1.0, 10);
  DensityEstimate left{u, std::vector<double>(10, 0.0)};
  DensityEstimate right{u, std::vector<double>(10, 0.0)};
  for (int i = 0; i < 5; ++i) left.values[i] = 2.0;
  for (int i = 5; i < 10; ++i) right.values[i] = 2.0;
  CHECK(std::isinf(kl_divergence(left, right)));

  CHECK_THROWS_AS(kl_divergence(p1, DensityEstimate{u, std::vector<double>(10, 1.0)}), std::invalid_argument);
}

TEST_CASE("kl_divergence is nonnegative for random same-grid pairs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GridSpec g = make_grid_spec(-1.0, 1.0, 40);
  for (int trial = 0; trial < 200; ++trial) {
    DensityEstimate q{g, std::vector<double>(40)}, p{g, std::vector<double>(40)};
    for (std::size_t i = 0; i < 40; ++i) {
      q.values[i] = u(rng) < 0.1 ? 0.0 : u(rng);
      p.values[i] = 1e-3 + u(rng);
    }
    normalize_on_grid(q.values, g);
    normalize_on_grid(p.values, g);
    CHECK(kl_divergence(q, p) >= -1e-9);
  }
}

}  // TEST_SUITE
