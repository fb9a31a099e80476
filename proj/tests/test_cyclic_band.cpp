#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "fisher/cyclic_band.hpp"

using namespace fisher;

namespace {

using Dense = std::vector<std::vector<double>>;

Dense to_dense(const CyclicBandMatrix& a) {
  const std::size_t n = a.size();
  Dense d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = a.band(0, i);
    for (std::size_t k = 1; k <= a.half_width(); ++k) {
      d[i][(i + k) % n] = a.band(k, i);
      d[(i + k) % n][i] = a.band(k, i);
    }
  }
  return d;
}

// Plain dense Cholesky, returning L.
Dense dense_cholesky(const Dense& a) {
  const std::size_t n = a.size();
  Dense l(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double s = a[j][j];
    for (std::size_t k = 0; k < j; ++k) s -= l[j][k] * l[j][k];
    l[j][j] = std::sqrt(s);
    for (std::size_t i = j + 1; i < n; ++i) {
      double t = a[i][j];
      for (std::size_t k = 0; k < j; ++k) t -= l[i][k] * l[j][k];
      l[i][j] = t / l[j][j];
    }
  }
  return l;
}

CyclicBandMatrix random_spd(std::size_t n, std::size_t b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CyclicBandMatrix a(n, b);
  for (std::size_t k = 1; k <= b; ++k)
    for (std::size_t i = 0; i < n; ++i) a.band(k, i) = u(rng);
  for (std::size_t i = 0; i < n; ++i) a.band(0, i) = 2.0 * static_cast<double>(b) + 0.5 + std::abs(u(rng));
  return a;
}

}  // namespace

TEST_SUITE("cyclic_band") {

TEST_CASE("entry access wraps around the corners") {
  CyclicBandMatrix a(7, 2);
  a.band(0, 3) = 4.0;
  a.band(1, 6) = -1.5;  // A(6, 0)
  a.band(2, 5) = 0.25;  // A(5, 0)
  CHECK(a(3, 3) == 4.0);
  CHECK(a(6, 0) == -1.5);
  CHECK(a(0, 6) == -1.5);
  CHECK(a(0, 5) == 0.25);
  CHECK(a(0, 3) == 0.0);
  CHECK_THROWS_AS(CyclicBandMatrix(6, 3), std::invalid_argument);
}

TEST_CASE("multiply, solve and log-determinant agree with dense algebra") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {7u, 12u, 50u}) {
    for (std::size_t b : {1u, 2u, 3u}) {
      if (n <= 2 * b) continue;
      CAPTURE(n);
      CAPTURE(b);
      const CyclicBandMatrix a = random_spd(n, b, rng);
      const Dense d = to_dense(a);

      std::vector<double> x(n), y(n), ref(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(1.0 + static_cast<double>(i));
      a.multiply(x, y);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ref[i] += d[i][j] * x[j];
      for (std::size_t i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(ref[i]).epsilon(1e-12));

      const CyclicBandCholesky chol(a);
      const auto sol = chol.solve(y);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(sol[i] - x[i]) < 1e-10);

      const Dense l = dense_cholesky(d);
      double logdet = 0.0;
      for (std::size_t i = 0; i < n; ++i) logdet += 2.0 * std::log(l[i][i]);
      CHECK(chol.log_determinant() == doctest::Approx(logdet).epsilon(1e-12));
    }
  }
}

TEST_CASE("non positive definite input is rejected") {
  CyclicBandMatrix a(10, 1);
  for (std::size_t i = 0; i < 10; ++i) {
    a.band(0, i) = 1.0;
    a.band(1, i) = -1.0;
  }
  CHECK_THROWS_AS(CyclicBandCholesky{a}, std::domain_error);
}

}  // TEST_SUITE
