#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fisher/kde.hpp"
#include "fisher/normal.hpp"
#include "oracles.hpp"

using namespace fisher;

TEST_SUITE("kde") {

TEST_CASE("one sample with h = 1 is a unit Gaussian") {
  const GridSpec g = make_grid_spec(-8.005, 8.005, 1601);
  const DensityEstimate q = kde_fit(SampleSet({0.0}), g, KdeOptions::fixed(1.0));
  REQUIRE(g.center(800) == doctest::Approx(0.0));
  CHECK(std::abs(q.values[800] - 1.0 / std::sqrt(2.0 * oracle::kPi)) < 1e-4);
  CHECK(*q.bandwidth == 1.0);
  CHECK(q.method == DensityMethod::kKde);
}

TEST_CASE("Scott bandwidth is sd * N^(-1/5)") {
  const SampleSet s = normal_sample({0.0, 1.0}, 10000, 21);
  const auto v = s.values();
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  CHECK(scott_bandwidth(s) == doctest::Approx(sd * std::pow(10000.0, -0.2)).epsilon(1e-12));
  const GridSpec g = make_grid(s, BoxPolicy::automatic(), 100);
  CHECK(*kde_fit(s, g, KdeOptions::scott()).bandwidth == doctest::Approx(scott_bandwidth(s)));
}

TEST_CASE("invalid bandwidths") {
  const GridSpec g = make_grid_spec(-1.0, 1.0, 20);
  CHECK_THROWS_AS(kde_fit(SampleSet({0.0}), g, KdeOptions::scott()), std::invalid_argument);
  CHECK_THROWS_AS(kde_fit(SampleSet({1.0, 1.0, 1.0}), g, KdeOptions::scott()), std::invalid_argument);
  CHECK_THROWS_AS(kde_fit(SampleSet({0.0}), g, KdeOptions::fixed(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(kde_fit(SampleSet({0.0}), g, KdeOptions::fixed(-1.0)), std::invalid_argument);
}

TEST_CASE("max q is non-increasing in h for a single sample") {
  const GridSpec g = make_grid_spec(-5.0, 5.0, 200);
  double previous = std::numeric_limits<double>::infinity();
  for (double h : {0.001, 0.01, 0.05, 0.1, 0.3, 1.0, 3.0, 10.0, 100.0}) {
    const auto q = kde_fit(SampleSet({0.325}), g, KdeOptions::fixed(h));
    const double peak = *std::max_element(q.values.begin(), q.values.end());
    CHECK(peak <= previous * (1 + 1e-12));
    previous = peak;
  }
  const auto narrow = kde_fit(SampleSet({0.325}), g, KdeOptions::fixed(1e-4));
  CHECK(*std::max_element(narrow.values.begin(), narrow.values.end()) * g.spacing() == doctest::Approx(1.0));
}

TEST_CASE("very wide kernels approach the uniform density") {
  const GridSpec g = make_grid_spec(0.0, 1.0, 50);
  const auto q = kde_fit(SampleSet({0.2, 0.9}), g, KdeOptions::fixed(1e3));
  for (double v : q.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("output is normalized") {
  const SampleSet s = normal_sample({1.0, 3.0}, 777, 2);
  const auto q = kde_fit(s, make_grid(s, BoxPolicy::fixed(-2.0, 2.0), 64), KdeOptions::scott());
  CHECK(std::abs(integrate(q.values, q.grid) - 1.0) < 1e-12);
}

}  // TEST_SUITE
