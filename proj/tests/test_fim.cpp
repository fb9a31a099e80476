#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fisher/fim.hpp"
#include "fisher/normal.hpp"
#include "fisher/stencil.hpp"
#include "oracles.hpp"

using namespace fisher;

namespace {

const GridSpec kFine = make_grid_spec(-20.0, 20.0, 8000);

DensityEstimate normal_on(const GridSpec& g, double mu, double sigma) {
  return analytic_density(g, [=](double x) { return oracle::gauss(x, mu, sigma); });
}

Stencil sigma_stencil(double sigma, double delta, std::size_t n = 10000) {
  return Stencil({{"sigma", sigma}}, normal_on(kFine, 0.0, sigma),
                 {{"sigma", delta, normal_on(kFine, 0.0, sigma + delta), normal_on(kFine, 0.0, sigma - delta)}}, n);
}

FimOptions with_scheme(FdScheme s) {
  FimOptions o;
  o.scheme = s;
  return o;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("fim") {

TEST_CASE("identical plus and minus densities give zero information") {
  const auto p = normal_on(kFine, 0.0, 1.0);
  const Stencil st({{"sigma", 1.0}}, p, {{"sigma", 0.1, p, p}}, 1000);
  for (auto s : {FdScheme::kDensityDiff, FdScheme::kLogDiff}) {
    const FimEstimate f = fim_matrix(st, with_scheme(s));
    CHECK(f.g(0, 0) == 0.0);
    CHECK(std::isinf(f.epsilon_at(0, 0).epsilon));
    CHECK(f.epsilon_at(0, 0).verdict == EpsilonVerdict::kUndefined);
  }
}

TEST_CASE("log-difference scheme on exact normal densities matches the closed form") {
  const double closed_01 = oracle::log_diff_normal_closed(1.0, 0.1);
  const double closed_02 = oracle::log_diff_normal_closed(1.0, 0.2);
  CHECK(closed_01 == doctest::Approx(2.08233).epsilon(1e-5));
  CHECK(closed_02 == doctest::Approx(2.35985).epsilon(1e-5));
  CHECK(oracle::log_diff_normal_quadrature(1.0, 0.1) == doctest::Approx(closed_01).epsilon(1e-9));

  const double g01 = fim_entry(sigma_stencil(1.0, 0.1), "sigma", "sigma", with_scheme(FdScheme::kLogDiff));
  const double g02 = fim_entry(sigma_stencil(1.0, 0.2), "sigma", "sigma", with_scheme(FdScheme::kLogDiff));
  CHECK(rel(g01, closed_01) < 1e-3);
  CHECK(rel(g02, closed_02) < 1e-3);

  // Second-order truncation: doubling delta roughly quadruples the error.
  const double ratio = (g02 - 2.0) / (g01 - 2.0);
  CAPTURE(ratio);
  CHECK(ratio > 3.5);
  CHECK(ratio < 5.5);
}

TEST_CASE("density-difference scheme on exact normal densities matches quadrature") {
  for (double d : {0.05, 0.1, 0.2}) {
    CAPTURE(d);
    const double g = fim_entry(sigma_stencil(1.0, d), "sigma", "sigma", with_scheme(FdScheme::kDensityDiff));
    CHECK(rel(g, oracle::density_diff_normal_quadrature(1.0, d, 1e-10)) < 1e-3);
  }
  CHECK(oracle::density_diff_normal_quadrature(1.0, 0.1) == doctest::Approx(2.0026).epsilon(1e-4));
}

TEST_CASE("the two schemes agree for small steps") {
  for (double sigma : {0.5, 1.0, 2.0}) {
    CAPTURE(sigma);
    const Stencil st = sigma_stencil(sigma, 0.01 * sigma);
    const double dd = fim_entry(st, "sigma", "sigma", with_scheme(FdScheme::kDensityDiff));
    const double ld = fim_entry(st, "sigma", "sigma", with_scheme(FdScheme::kLogDiff));
    CHECK(rel(dd, ld) < 1e-3);
    CHECK(rel(ld, 2.0 / (sigma * sigma)) < 1e-3);
  }
}

TEST_CASE("(mu, sigma) matrix is symmetric with the exact normal information") {
  const double d = 0.01;
  const Stencil st({{"mu", 0.0}, {"sigma", 1.0}}, normal_on(kFine, 0, 1),
                   {{"mu", d, normal_on(kFine, d, 1), normal_on(kFine, -d, 1)},
                    {"sigma", d, normal_on(kFine, 0, 1 + d), normal_on(kFine, 0, 1 - d)}},
                   10000);
  for (auto s : {FdScheme::kDensityDiff, FdScheme::kLogDiff}) {
    const FimEstimate f = fim_matrix(st, with_scheme(s));
    REQUIRE(f.g.size() == 2);
    CHECK(f.g.is_symmetric());
    CHECK(f.g(0, 1) == f.g(1, 0));
    CHECK(std::abs(f.g(0, 1)) < 1e-6);
    CHECK(f.g(0, 0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(f.g(1, 1) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(f.g(0, 0) >= 0.0);
    CHECK(f.g(1, 1) >= 0.0);
    CHECK(f.names == std::vector<std::string>{"mu", "sigma"});
    CHECK(f.epsilon_at(0, 1).epsilon == f.epsilon_at(1, 0).epsilon);
  }
}

TEST_CASE("one-parameter matrix equals the single entry") {
  const Stencil st = sigma_stencil(1.0, 0.1);
  const FimEstimate f = fim_matrix(st, FimOptions{});
  CHECK(f.g(0, 0) == fim_entry(st, "sigma", "sigma", FimOptions{}));
  CHECK(f.samples == 10000);
  CHECK(f.epsilon_at(0, 0).epsilon == epsilon_radius(f.g(0, 0), 0.1, 10000));
}

TEST_CASE("cells below the cutoff contribute nothing") {
  const GridSpec g = make_grid_spec(0.0, 10.0, 10);  // h = 1
  std::vector<double> c(10, 0.1), p(10, 0.1), m(10, 0.1);
  p[0] = 0.2; m[0] = 0.0;       // minus below cutoff
  p[1] = 0.2; m[1] = 0.1;       // the only contributing cell
  c[2] = 1e-12; p[2] = 0.3;     // center below cutoff
  const DensityEstimate cd{g, c}, pd{g, p}, md{g, m};
  const Stencil st({{"a", 0.0}}, cd, {{"a", 0.5, pd, md}}, 100);
  // (0.2 - 0.1)^2 / (4 * 0.5^2 * 0.1) * 1
  CHECK(fim_entry(st, "a", "a", with_scheme(FdScheme::kDensityDiff)) == doctest::Approx(0.1));
  // (ln 2)^2 * 0.1 / (4 * 0.5^2)
  CHECK(fim_entry(st, "a", "a", with_scheme(FdScheme::kLogDiff)) == doctest::Approx(0.1 * std::log(2.0) * std::log(2.0)));
}

TEST_CASE("epsilon radius, verdicts and overlap") {
  CHECK(epsilon_radius(1.0, 0.2, 20000) == doctest::Approx(0.05));
  CHECK(epsilon_radius(1.0, 0.2, 10000) == doctest::Approx(std::sqrt(0.005)));
  CHECK(std::isinf(epsilon_radius(0.0, 0.2, 10000)));
  CHECK(std::isinf(epsilon_radius(-1.0, 0.2, 10000)));

  const FimOptions o;
  CHECK(classify_epsilon(0.05, o).verdict == EpsilonVerdict::kOk);
  CHECK(classify_epsilon(0.0707, o).verdict == EpsilonVerdict::kOk);
  CHECK(classify_epsilon(0.1001, o).verdict == EpsilonVerdict::kTooLarge);
  CHECK(classify_epsilon(std::numeric_limits<double>::infinity(), o).verdict == EpsilonVerdict::kUndefined);
  CHECK(classify_epsilon(0.05, o).target == 0.05);

  const Matrix g1(1, {1.0});
  const std::vector<double> d{0.2};
  CHECK(overlap_probability(g1, d, 20000, 0.05) == doctest::Approx(std::exp(-1.0)));
  CHECK(overlap_probability(g1, d, 20000, 0.0) == 1.0);
  CHECK(overlap_probability(g1, d, 20000, 0.1) == doctest::Approx(std::exp(-4.0)));

  const Matrix g2(2, {1.0, 0.3, 0.3, 2.0});
  const std::vector<double> d2{0.1, 0.2};
  const double form = 1.0 * 0.01 + 2 * 0.3 * 0.02 + 2.0 * 0.04;
  CHECK(epsilon_radius(g2, d2, 500) == doctest::Approx(std::sqrt(2.0 / (500 * form))));
  CHECK_THROWS_AS(epsilon_radius(g2, d, 500), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_radius(1.0, 0.1, 0), std::invalid_argument);
}

TEST_CASE("epsilon decreases in N, delta and g") {
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t n : {10u, 100u, 1000u, 10000u, 100000u}) {
    const double e = epsilon_radius(2.0, 0.1, n);
    CHECK(e < prev);
    prev = e;
  }
  CHECK(epsilon_radius(2.0, 0.2, 100) < epsilon_radius(2.0, 0.1, 100));
  CHECK(epsilon_radius(3.0, 0.1, 100) < epsilon_radius(2.0, 0.1, 100));
}

TEST_CASE("suggested delta") {
  CHECK(suggest_delta(2.0, 2500, 0.1) == doctest::Approx(0.2));
  CHECK(suggest_delta(0.5, 2500, 0.1) == doctest::Approx(0.4));
  for (double g : {0.3, 1.0, 8.0}) {
    const double d = suggest_delta(g, 4000, 0.05);
    CHECK(epsilon_radius(g, d, 4000) == doctest::Approx(0.05));
  }
  CHECK_THROWS_AS(suggest_delta(0.0, 100, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(suggest_delta(1.0, 0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(suggest_delta(1.0, 100, 0.0), std::invalid_argument);
}

TEST_CASE("sampled stencil recovers the sigma information") {
  const NormalParams c{0.0, 1.0};
  const double d = 0.2;
  const std::vector<ArmSamples> arms{{"sigma", d, normal_sample({0.0, 1.0 + d}, 20000, 2),
                                      normal_sample({0.0, 1.0 - d}, 20000, 3)}};
  const Stencil st = build_stencil({{"sigma", 1.0}}, normal_sample(c, 20000, 1), arms, EstimatorOptions{});
  CHECK(st.samples_per_density() == 20000);
  const double g = fim_entry(st, "sigma", "sigma", with_scheme(FdScheme::kDensityDiff));
  CAPTURE(g);
  CHECK(g == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("invalid input") {
  FimOptions o;
  o.cutoff = 1e-21;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o.cutoff = 0.02;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o.cutoff = 1e-2;
  CHECK_NOTHROW(o.validate());
  o.target_epsilon = 0.0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);

  const auto p = normal_on(kFine, 0, 1);
  CHECK_THROWS_AS(Stencil({{"sigma", 1.0}}, p, {{"sigma", 0.0, p, p}}, 10), std::invalid_argument);
  CHECK_THROWS_AS(Stencil({{"sigma", 1.0}}, p, {{"mu", 0.1, p, p}}, 10), std::invalid_argument);
  const auto other = normal_on(make_grid_spec(-10, 10, 100), 0, 1);
  CHECK_THROWS_AS(Stencil({{"sigma", 1.0}}, p, {{"sigma", 0.1, other, p}}, 10), std::invalid_argument);

  const Stencil st = sigma_stencil(1.0, 0.1);
  CHECK_THROWS_AS(fim_entry(st, "sigma", "mu", FimOptions{}), std::out_of_range);

  CHECK(parse_scheme("density_diff") == FdScheme::kDensityDiff);
  CHECK(parse_scheme("log_diff") == FdScheme::kLogDiff);
  CHECK(parse_scheme(to_string(FdScheme::kLogDiff)) == FdScheme::kLogDiff);
  CHECK_THROWS_AS(parse_scheme("forward"), std::invalid_argument);
  CHECK(to_string(EpsilonVerdict::kTooLarge) != to_string(EpsilonVerdict::kOk));
}

}  // TEST_SUITE
