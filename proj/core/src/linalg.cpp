// Copyright 2026 The hhllab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hhllab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hhllab {

double ComplexVector::norm() const {
  double s = 0;
  for (const Complex& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

ComplexVector ComplexVector::normalized() const {
  const double n = norm();
  if (n <= 0) throw ZeroRHS("cannot normalize the zero vector");
  ComplexVector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = entries_[i] / n;
  return out;
}

Complex inner_product(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("inner_product: dimension mismatch");
  Complex s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ComplexVector operator*(Complex s, const ComplexVector& v) {
  ComplexVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = s * v[i];
  return out;
}

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("vector add: dim mismatch");
  ComplexVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return out;
}

ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("vector sub: dim mismatch");
  ComplexVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return out;
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_)
      throw DimensionMismatch("ragged initializer for ComplexMatrix");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (!is_square()) return false;
  return max_abs_diff(adjoint() * (*this), identity(rows_)) <= tol;
}

double ComplexMatrix::max_abs() const {
  double m = 0;
  for (const Complex& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0;
  for (const Complex& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("matrix product: dimension mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex(0)) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.cols() != v.dim())
    throw DimensionMismatch("matrix-vector product: dimension mismatch");
  ComplexVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Complex s = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) s += a(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = s * a(r, c);
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix add: shape mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix sub: shape mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs();
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex v = a(ar, ac);
      if (v == Complex(0)) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
    }
  return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// Rotate each eigenvector so its largest-magnitude component (first on
// ties) is real and positive. Makes sign-sensitive comparisons stable.
void fix_eigenvector_phases(ComplexMatrix& v) {
  const std::size_t n = v.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t imax = 0;
    double amax = -1;
    for (std::size_t r = 0; r < n; ++r) {
      const double a = std::abs(v(r, c));
      if (a > amax + 1e-15) {
        amax = a;
        imax = r;
      }
    }
    if (amax <= 0) continue;
    const Complex phase = v(imax, c) / amax;
    for (std::size_t r = 0; r < n; ++r) v(r, c) /= phase;
  }
}

}  // namespace

EigenDecomposition hermitian_eigendecompose(const ComplexMatrix& a,
                                            double tol) {
  if (!a.is_square())
    throw NonSquareInput("hermitian_eigendecompose: matrix is not square");
  if (!a.is_hermitian(1e-12))
    throw NonHermitianInput("hermitian_eigendecompose: input is not Hermitian");

  const std::size_t n = a.rows();
  ComplexMatrix m = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(m.frobenius_norm(), 1e-300);
  constexpr int kMaxSweeps = 100;

  bool converged = (n < 2) || off_diagonal_norm(m) <= tol * scale;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double beta = std::abs(apq);
        if (beta <= 0 || beta <= tol * scale * 1e-2) continue;

        // Factor out the phase of a_pq, then apply the real Jacobi
        // rotation that zeroes the remaining symmetric 2x2 block.
        const Complex phase = apq / beta;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        // Small-magnitude root of t^2 - 2*tau*t - 1 = 0, which zeroes the
        // rotated off-diagonal for the sign convention of J below.
        const double tau = (aqq - app) / (2.0 * beta);
        double t;
        if (tau >= 0)
          t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
        else
          t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Plane rotation J: J(p,p)=c*phase, J(p,q)=-s*phase, J(q,p)=s, J(q,q)=c.
        const Complex jpp = c * phase;
        const Complex jpq = -s * phase;
        for (std::size_t r = 0; r < n; ++r) {  // M <- M J
          const Complex mp = m(r, p), mq = m(r, q);
          m(r, p) = mp * jpp + mq * s;
          m(r, q) = mp * jpq + mq * c;
        }
        for (std::size_t col = 0; col < n; ++col) {  // M <- J† M
          const Complex mp = m(p, col), mq = m(q, col);
          m(p, col) = std::conj(jpp) * mp + s * mq;
          m(q, col) = std::conj(jpq) * mp + c * mq;
        }
        for (std::size_t r = 0; r < n; ++r) {  // V <- V J
          const Complex vp = v(r, p), vq = v(r, q);
          v(r, p) = vp * jpp + vq * s;
          v(r, q) = vp * jpq + vq * c;
        }
        m(p, q) = 0;
        m(q, p) = 0;
      }
    }
    converged = off_diagonal_norm(m) <= tol * scale;
  }
  if (!converged)
    throw NoConvergence("hermitian_eigendecompose: Jacobi sweeps exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return m(i, i).real() < m(j, j).real();
  });

  EigenDecomposition eig;
  eig.values.resize(n);
  eig.vectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    eig.values[c] = m(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) eig.vectors(r, c) = v(r, order[c]);
  }
  fix_eigenvector_phases(eig.vectors);
  return eig;
}

namespace {

ComplexMatrix assemble_from_phases(const EigenDecomposition& eig,
                                   const std::vector<Complex>& diag) {
  const std::size_t n = eig.values.size();
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0;
      for (std::size_t j = 0; j < n; ++j)
        s += eig.vectors(r, j) * diag[j] * std::conj(eig.vectors(c, j));
      out(r, c) = s;
    }
  return out;
}

}  // namespace

ComplexMatrix matrix_exponential_i(const ComplexMatrix& a, double t) {
  const EigenDecomposition eig = hermitian_eigendecompose(a);
  return matrix_power_via_eigen(eig, t, 1);
}

ComplexMatrix matrix_power_via_eigen(const EigenDecomposition& eig, double t,
                                     std::int64_t l) {
  std::vector<Complex> diag(eig.values.size());
  for (std::size_t j = 0; j < diag.size(); ++j)
    diag[j] = std::exp(Complex(0, eig.values[j] * t * static_cast<double>(l)));
  return assemble_from_phases(eig, diag);
}

ComplexMatrix hermitian_embedding(const ComplexMatrix& a) {
  if (!a.is_square())
    throw NonSquareInput("hermitian_embedding: matrix is not square");
  const std::size_t n = a.rows();
  ComplexMatrix out(2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      out(r, n + c) = a(r, c);
      out(n + c, r) = std::conj(a(r, c));
    }
  return out;
}

GaussianSolve solve_linear_reference_instrumented(const ComplexMatrix& a,
                                                  const ComplexVector& b) {
  if (!a.is_square())
    throw NonSquareInput("solve_linear_reference: matrix is not square");
  if (a.rows() != b.dim())
    throw DimensionMismatch("solve_linear_reference: shape mismatch");

  const std::size_t n = a.rows();
  ComplexMatrix m = a;
  ComplexVector rhs = b;
  std::uint64_t ops = 0;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double cand = std::abs(m(r, k));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best <= 1e-12)
      throw SingularMatrix("solve_linear_reference: pivot below threshold");
    if (pivot != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(m(k, c), m(pivot, c));
      std::swap(rhs[k], rhs[pivot]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex factor = m(r, k) / m(k, k);
      ++ops;
      m(r, k) = 0;
      for (std::size_t c = k + 1; c < n; ++c) {
        m(r, c) -= factor * m(k, c);
        ++ops;
      }
      rhs[r] -= factor * rhs[k];
      ++ops;
    }
  }

  ComplexVector x(n);
  for (std::size_t ri = n; ri-- > 0;) {
    Complex s = rhs[ri];
    for (std::size_t c = ri + 1; c < n; ++c) {
      s -= m(ri, c) * x[c];
      ++ops;
    }
    x[ri] = s / m(ri, ri);
    ++ops;
  }
  return {std::move(x), ops};
}

ComplexVector solve_linear_reference(const ComplexMatrix& a,
                                     const ComplexVector& b) {
  return solve_linear_reference_instrumented(a, b).x;
}

ConjugateGradientSolve conjugate_gradient(const ComplexMatrix& a,
                                          const ComplexVector& b, double eps,
                                          int max_iter) {
  if (!a.is_square() || a.rows() != b.dim())
    throw DimensionMismatch("conjugate_gradient: shape mismatch");
  if (!a.is_hermitian(1e-12))
    throw NotPositiveDefinite("conjugate_gradient: matrix is not Hermitian");

  const std::size_t n = a.rows();
  ConjugateGradientSolve run;
  run.x = ComplexVector(n);
  ComplexVector r = b;
  ComplexVector p = r;
  double rr = std::real(inner_product(r, r));
  const double target = eps * b.norm();
  run.multiply_adds += n;

  while (std::sqrt(rr) > target) {
    if (run.iterations >= max_iter)
      throw MaxIterationsExceeded("conjugate_gradient: iteration cap reached");
    const ComplexVector ap = a * p;
    run.multiply_adds += n * n;
    const double curvature = std::real(inner_product(p, ap));
    run.multiply_adds += n;
    if (curvature <= 0)
      throw NotPositiveDefinite(
          "conjugate_gradient: non-positive curvature direction");
    const double alpha = rr / curvature;
    for (std::size_t i = 0; i < n; ++i) {
      run.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    run.multiply_adds += 2 * n;
    const double rr_new = std::real(inner_product(r, r));
    run.multiply_adds += n;
    const double beta = rr_new / rr;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    run.multiply_adds += n;
    rr = rr_new;
    ++run.iterations;
  }
  return run;
}

double condition_number(const ComplexMatrix& a) {
  const EigenDecomposition eig = hermitian_eigendecompose(a);
  double lo = std::abs(eig.values.front());
  double hi = lo;
  for (double v : eig.values) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  if (lo <= 1e-12 * hi)
    throw SingularMatrix("condition_number: matrix is numerically singular");
  return hi / lo;
}

}  // namespace hhllab
