#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fisher/ising.hpp"
#include "oracles.hpp"

using namespace fisher;

TEST_SUITE("ising") {

TEST_CASE("Metropolis acceptance") {
  CHECK(acceptance_probability(-4.0, 2.0) == 1.0);
  CHECK(acceptance_probability(0.0, 2.0) == 1.0);
  CHECK(acceptance_probability(4.0, 2.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(acceptance_probability(8.0, 1.0) == doctest::Approx(std::exp(-8.0)));
}

TEST_CASE("cold start and L = 2 bond counting") {
  IsingState s(2, 1);
  for (std::size_t i = 0; i < s.sites(); ++i) CHECK(s.spin(i) == 1);
  CHECK(s.energy() == -8.0);
  CHECK(s.recompute_energy() == -8.0);
  IsingState big(5, 1);
  CHECK(big.energy() == -50.0);
  IsingState field(4, 1, 0.5);
  CHECK(field.energy() == -32.0 - 8.0);
}

TEST_CASE("cached energy tracks the Hamiltonian over many steps") {
  for (double h : {0.0, 0.3}) {
    IsingState s(6, 17, h);
    for (int i = 0; i < 100000; ++i) metropolis_step(s, 2.5);
    CHECK(s.energy() == doctest::Approx(s.recompute_energy()).epsilon(1e-12));
    for (std::size_t site = 0; site < s.sites(); site += 7) {
      const double before = s.energy();
      const double d = s.flip_delta(site);
      s.flip(site);
      CHECK(s.energy() == doctest::Approx(before + d));
      CHECK(s.energy() == doctest::Approx(s.recompute_energy()));
    }
  }
}

TEST_CASE("global flip leaves the zero-field energy unchanged") {
  IsingState s(8, 3);
  for (int i = 0; i < 5000; ++i) metropolis_step(s, 3.0);
  const double e = s.energy();
  s.flip_all();
  CHECK(s.energy() == doctest::Approx(e));
  CHECK(s.recompute_energy() == doctest::Approx(e));
}

TEST_CASE("exact enumeration against independent references") {
  for (double T : {0.5, 1.0, 2.269, 4.0, 10.0}) {
    CAPTURE(T);
    const auto a = ising_exact_small(2, T);
    const auto o = oracle::ising_2x2(T);
    CHECK(a.mean_energy == doctest::Approx(o.mean));
    CHECK(a.heat_capacity == doctest::Approx(o.heat_capacity));
    const auto b = ising_exact_small(3, T);
    const auto ob = oracle::ising_brute_force(3, T);
    CHECK(b.mean_energy == doctest::Approx(ob.mean));
    CHECK(b.mean_energy_sq == doctest::Approx(ob.mean_sq));
    CHECK(b.heat_capacity == doctest::Approx(ob.heat_capacity));
  }
  CHECK(ising_exact_small(2, 0.05).mean_energy == doctest::Approx(-8.0));
  CHECK(std::abs(ising_exact_small(3, 1e4).mean_energy) < 0.01);
  CHECK_THROWS_AS(ising_exact_small(5, 1.0), std::invalid_argument);
}

TEST_CASE("sampler reproduces the exact L = 2 averages") {
  for (double T : {1.0, 2.0, 4.0}) {
    CAPTURE(T);
    IsingConfig c;
    c.L = 2;
    c.T = T;
    c.warmup_sweeps = 1000;
    c.thin_sweeps = 2;
    c.samples = 200000;
    c.seed = 12;
    const auto e = ising_sample_energies(c);
    const auto exact = ising_exact_small(2, T);
    const std::size_t batches = 50, per = e.size() / batches;
    std::vector<double> means, caps;
    for (std::size_t b = 0; b < batches; ++b) {
      const auto part = e.values().subspan(b * per, per);
      double m = 0.0;
      for (double x : part) m += 4.0 * x;
      means.push_back(m / static_cast<double>(per));
      caps.push_back(heat_capacity_per_spin(SampleSet(std::vector<double>(part.begin(), part.end())), T, 2));
    }
    const double m = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(batches);
    const double cm = std::accumulate(caps.begin(), caps.end(), 0.0) / static_cast<double>(batches);
    CHECK(std::abs(m - exact.mean_energy) < 3.0 * oracle::batch_standard_error(means) + 1e-12);
    CHECK(std::abs(cm - exact.heat_capacity) < 3.0 * oracle::batch_standard_error(caps) + 1e-12);
  }
}

TEST_CASE("low temperature lattice stays frozen") {
  IsingConfig c;
  c.L = 16;
  c.T = 0.5;
  c.warmup_sweeps = 100;
  c.samples = 200;
  const auto e = ising_sample_energies(c);
  double m = 0.0;
  for (double x : e.values()) m += x;
  CHECK(m / 200.0 < -1.99);
}

TEST_CASE("per-spin energies are bounded and reproducible") {
  IsingConfig c;
  c.L = 8;
  c.T = 2.3;
  c.warmup_sweeps = 50;
  c.samples = 300;
  c.seed = 5;
  const auto a = ising_sample_energies(c);
  CHECK(a.size() == 300);
  for (double x : a.values()) {
    CHECK(x >= -2.0);
    CHECK(x <= 2.0);
  }
  CHECK(a.content_hash() == ising_sample_energies(c).content_hash());
  c.seed = 6;
  CHECK(a.content_hash() != ising_sample_energies(c).content_hash());
}

TEST_CASE("heat capacity estimator") {
  const std::vector<double> e{-8.0, 8.0};
  CHECK(heat_capacity(e, 2.0, 2) == doctest::Approx(64.0 / 16.0));
  CHECK(heat_capacity_per_spin(SampleSet({-2.0, 2.0}), 2.0, 2) == doctest::Approx(4.0));
  CHECK_THROWS_AS(heat_capacity(std::vector<double>{1.0}, 2.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(heat_capacity(e, 0.0, 2), std::invalid_argument);
}

TEST_CASE("critical temperature") {
  CHECK(critical_temperature() == doctest::Approx(2.269185).epsilon(1e-6));
  CHECK(2.0 / critical_temperature() == doctest::Approx(0.881374).epsilon(1e-6));
}

TEST_CASE("invalid configuration") {
  IsingConfig c;
  c.L = 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = IsingConfig{};
  c.T = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = IsingConfig{};
  c.samples = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

}  // TEST_SUITE
