#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fisher {

/// Symmetric matrix with a periodic (wrap-around) band of half-width b:
/// A(i, (i + k) mod n) = bands[k][i] for k = 0..b, zero elsewhere.
/// Requires n > 2b so the wrapped band does not overlap itself.
class CyclicBandMatrix {
 public:
  CyclicBandMatrix(std::size_t n, std::size_t half_width);

  std::size_t size() const { return n_; }
  std::size_t half_width() const { return b_; }

  double& band(std::size_t k, std::size_t i) { return bands_[k * n_ + i]; }
  double band(std::size_t k, std::size_t i) const { return bands_[k * n_ + i]; }

  /// Entry (r, c) for any r, c.
  double operator()(std::size_t r, std::size_t c) const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;

 private:
  std::size_t n_;
  std::size_t b_;
  std::vector<double> bands_;
};

/// Envelope Cholesky factorization A = L L^T of a CyclicBandMatrix.
///
/// The lower envelope of a cyclic band is the ordinary band plus the last b
/// rows, which are full. Envelope Cholesky creates no fill outside it, so the
/// factorization costs O(n b^2) time and O(n b) storage.
class CyclicBandCholesky {
 public:
  /// Throws std::domain_error if the matrix is not positive definite.
  explicit CyclicBandCholesky(const CyclicBandMatrix& a);

  std::vector<double> solve(std::span<const double> rhs) const;
  double log_determinant() const;

 private:
  double& at(std::size_t r, std::size_t c) { return l_[offset_[r] + (c - first_[r])]; }
  double at(std::size_t r, std::size_t c) const { return l_[offset_[r] + (c - first_[r])]; }

  std::size_t n_;
  std::vector<std::size_t> first_;
  std::vector<std::size_t> offset_;
  std::vector<double> l_;
};

}  // namespace fisher
