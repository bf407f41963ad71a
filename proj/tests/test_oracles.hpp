// Test-only oracles and generators, kept independent of the library paths
// they check: the matrix exponential is validated against a scaled-and-
// squared Taylor series, the QFT against the directly constructed DFT
// matrix, and random instances come from a self-contained seeded generator.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hhllab/linalg.hpp"
#include "hhllab/rng.hpp"
#include "hhllab/statevector.hpp"

namespace oracles {

using hhllab::Complex;
using hhllab::ComplexMatrix;
using hhllab::ComplexVector;

inline constexpr double kPi = std::numbers::pi;

/// e^{iAt} by scaling-and-squaring a plain Taylor series. No
/// eigendecomposition anywhere, so it is a genuine second route.
inline ComplexMatrix taylor_expm_i(const ComplexMatrix& a, double t) {
  const std::size_t n = a.rows();
  ComplexMatrix b(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) b(r, c) = Complex(0, t) * a(r, c);

  double norm = 0;  // crude row-sum norm for the scaling power
  for (std::size_t r = 0; r < n; ++r) {
    double row = 0;
    for (std::size_t c = 0; c < n; ++c) row += std::abs(b(r, c));
    norm = std::max(norm, row);
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) b(r, c) = scale * b(r, c);

  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = term * b;
    term = Complex(1.0 / k) * term;
    result = result + term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

/// DFT matrix with the positive-exponent convention:
/// F[x][y] = exp(2*pi*i*x*y / 2^n) / 2^(n/2).
inline ComplexMatrix dft_matrix(int n) {
  const std::size_t dim = std::size_t{1} << n;
  const double root = 1.0 / std::sqrt(double(dim));
  ComplexMatrix f(dim, dim);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y)
      f(x, y) = root * std::exp(Complex(0, 2.0 * kPi * double(x) * double(y) /
                                               double(dim)));
  return f;
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return rng_.uniform(); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Box-Muller standard normal.
  double gaussian() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }
  Complex gaussian_complex() { return Complex(gaussian(), gaussian()); }
  std::uint64_t integer(std::uint64_t bound) { return rng_.next() % bound; }

 private:
  hhllab::Xoshiro256StarStar rng_;
};

inline ComplexMatrix random_hermitian(std::size_t n, Random& rng) {
  ComplexMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = rng.gaussian();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex v = rng.gaussian_complex();
      a(r, c) = v;
      a(c, r) = std::conj(v);
    }
  }
  return a;
}

/// Gram-Schmidt orthonormalization of a random Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n, Random& rng) {
  ComplexMatrix v(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) v(r, c) = rng.gaussian_complex();
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      Complex overlap = 0;
      for (std::size_t r = 0; r < n; ++r)
        overlap += std::conj(v(r, prev)) * v(r, c);
      for (std::size_t r = 0; r < n; ++r) v(r, c) -= overlap * v(r, prev);
    }
    double norm = 0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(v(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) v(r, c) = v(r, c) / norm;
  }
  return v;
}

/// A = V diag(values) V† for a random orthonormal V.
inline ComplexMatrix hermitian_with_spectrum(const std::vector<double>& values,
                                             Random& rng) {
  const std::size_t n = values.size();
  const ComplexMatrix v = random_unitary(n, rng);
  ComplexMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0;
      for (std::size_t j = 0; j < n; ++j)
        s += v(r, j) * values[j] * std::conj(v(c, j));
      a(r, c) = s;
    }
  return a;
}

inline ComplexMatrix random_spd(std::size_t n, Random& rng) {
  std::vector<double> values(n);
  for (double& v : values) v = rng.uniform(0.5, 4.0);
  return hermitian_with_spectrum(values, rng);
}

inline ComplexVector random_state_vector(std::size_t dim, Random& rng) {
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = rng.gaussian_complex();
  return v.normalized();
}

/// The 2x2 worked system: A = [[3/2,1/2],[1/2,3/2]], b = (0,1).
inline ComplexMatrix worked_matrix() {
  return ComplexMatrix{{1.5, 0.5}, {0.5, 1.5}};
}
inline ComplexVector worked_rhs() { return ComplexVector{0.0, 1.0}; }

/// Max elementwise difference after aligning the global phase on the
/// largest-magnitude reference component.
inline double max_diff_up_to_phase(const std::vector<Complex>& a,
                                   const std::vector<Complex>& b) {
  std::size_t imax = 0;
  double best = -1;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (std::abs(b[i]) > best) {
      best = std::abs(b[i]);
      imax = i;
    }
  if (best <= 0 || std::abs(a[imax]) == 0.0) {
    double diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      diff = std::max(diff, std::abs(a[i] - b[i]));
    return diff;
  }
  const Complex phase =
      (a[imax] / std::abs(a[imax])) / (b[imax] / std::abs(b[imax]));
  double diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    diff = std::max(diff, std::abs(a[i] - phase * b[i]));
  return diff;
}

inline double max_diff_up_to_phase(const hhllab::StateVector& a,
                                   const std::vector<Complex>& b) {
  return max_diff_up_to_phase(a.amplitudes(), b);
}

}  // namespace oracles
