#include "fisher/cyclic_band.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fisher {

CyclicBandMatrix::CyclicBandMatrix(std::size_t n, std::size_t half_width)
    : n_(n), b_(half_width), bands_((half_width + 1) * n, 0.0) {
  if (n <= 2 * half_width) {
    throw std::invalid_argument("cyclic band of half-width " + std::to_string(half_width) +
                                " needs more than " + std::to_string(2 * half_width) + " rows");
  }
}

double CyclicBandMatrix::operator()(std::size_t r, std::size_t c) const {
  if (r < c) std::swap(r, c);
  const std::size_t d = r - c;
  if (d <= b_) return band(d, c);
  if (n_ - d <= b_) return band(n_ - d, r);
  return 0.0;
}

void CyclicBandMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double s = band(0, i) * x[i];
    for (std::size_t k = 1; k <= b_; ++k) {
      s += band(k, i) * x[(i + k) % n_];
      s += band(k, (i + n_ - k) % n_) * x[(i + n_ - k) % n_];
    }
    y[i] = s;
  }
}

CyclicBandCholesky::CyclicBandCholesky(const CyclicBandMatrix& a) : n_(a.size()) {
  const std::size_t b = a.half_width();
  first_.resize(n_);
  offset_.resize(n_ + 1);
  offset_[0] = 0;
  for (std::size_t r = 0; r < n_; ++r) {
    first_[r] = (r + b >= n_) ? 0 : (r >= b ? r - b : 0);
    offset_[r + 1] = offset_[r] + (r - first_[r] + 1);
  }
  l_.assign(offset_[n_], 0.0);

  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = first_[r]; c <= r; ++c) {
      double s = a(r, c);
      for (std::size_t k = std::max(first_[r], first_[c]); k < c; ++k) s -= at(r, k) * at(c, k);
      if (c < r) {
        at(r, c) = s / at(c, c);
      } else {
        if (!(s > 0.0)) {
          throw std::domain_error("cyclic band matrix is not positive definite (pivot " +
                                  std::to_string(r) + ")");
        }
        at(r, r) = std::sqrt(s);
      }
    }
  }
}

std::vector<double> CyclicBandCholesky::solve(std::span<const double> rhs) const {
  if (rhs.size() != n_) throw std::invalid_argument("solve: right-hand side has the wrong length");
  std::vector<double> y(rhs.begin(), rhs.end());
  for (std::size_t r = 0; r < n_; ++r) {
    double s = y[r];
    for (std::size_t c = first_[r]; c < r; ++c) s -= at(r, c) * y[c];
    y[r] = s / at(r, r);
  }
  for (std::size_t r = n_; r-- > 0;) {
    y[r] /= at(r, r);
    for (std::size_t c = first_[r]; c < r; ++c) y[c] -= at(r, c) * y[r];
  }
  return y;
}

double CyclicBandCholesky::log_determinant() const {
  double s = 0.0;
  for (std::size_t r = 0; r < n_; ++r) s += std::log(at(r, r));
  return 2.0 * s;
}

}  // namespace fisher
