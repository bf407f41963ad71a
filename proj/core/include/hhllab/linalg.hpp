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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "hhllab/errors.hpp"

namespace hhllab {

using Complex = std::complex<double>;

/// Dense complex vector. All values in this library are dimensionless
/// amplitudes; normalization is the caller's contract where required.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : entries_(dim) {}
  ComplexVector(std::initializer_list<Complex> xs) : entries_(xs) {}

  std::size_t dim() const { return entries_.size(); }
  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

  const std::vector<Complex>& entries() const { return entries_; }
  std::vector<Complex>& entries() { return entries_; }

  double norm() const;
  /// Returns this vector scaled to unit norm. Throws ZeroRHS on the zero vector.
  ComplexVector normalized() const;

 private:
  std::vector<Complex> entries_;
};

Complex inner_product(const ComplexVector& a, const ComplexVector& b);  // <a|b>
ComplexVector operator*(Complex s, const ComplexVector& v);
ComplexVector operator+(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator-(const ComplexVector& a, const ComplexVector& b);

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  /// Row-major construction from nested initializer lists.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  const std::vector<Complex>& entries() const { return entries_; }

  ComplexMatrix adjoint() const;

  bool is_hermitian(double tol = 1e-12) const;
  bool is_unitary(double tol = 1e-12) const;

  double max_abs() const;
  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product, a ⊗ b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hermitian eigendecomposition result. Eigenvalues ascend; eigenvector
/// columns are orthonormal with each column's largest-magnitude component
/// rotated to the positive real axis (first such component on ties).
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;  // column i pairs with values[i]
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Sweeps complex plane rotations until the off-diagonal Frobenius norm
/// drops below tol relative to ||A||_F, capped at 100 sweeps.
/// Throws NonHermitianInput when max|A - A†| > 1e-12 and NoConvergence
/// when the cap is hit.
EigenDecomposition hermitian_eigendecompose(const ComplexMatrix& a,
                                            double tol = 1e-14);

/// e^{iAt} for Hermitian A, via the eigendecomposition.
ComplexMatrix matrix_exponential_i(const ComplexMatrix& a, double t);

/// (e^{iAt})^l = V diag(e^{i λ_j t l}) V†. Negative l gives inverse powers.
ComplexMatrix matrix_power_via_eigen(const EigenDecomposition& eig, double t,
                                     std::int64_t l);

/// [[0, A], [A†, 0]] — Hermitian by construction for any square A.
ComplexMatrix hermitian_embedding(const ComplexMatrix& a);

/// Gaussian elimination with partial pivoting, instrumented with an exact
/// complex multiply-add count for the complexity comparisons.
struct GaussianSolve {
  ComplexVector x;
  std::uint64_t multiply_adds = 0;
};

GaussianSolve solve_linear_reference_instrumented(const ComplexMatrix& a,
                                                  const ComplexVector& b);
ComplexVector solve_linear_reference(const ComplexMatrix& a,
                                     const ComplexVector& b);

struct ConjugateGradientSolve {
  ComplexVector x;
  int iterations = 0;
  std::uint64_t multiply_adds = 0;
};

/// Conjugate gradient for Hermitian positive-definite systems.
/// Stops at ||Ax - b|| <= eps ||b||; throws NotPositiveDefinite on
/// non-positive curvature and MaxIterationsExceeded past max_iter.
ConjugateGradientSolve conjugate_gradient(const ComplexMatrix& a,
                                          const ComplexVector& b, double eps,
                                          int max_iter);

/// |λ_max| / |λ_min| over the Hermitian spectrum.
double condition_number(const ComplexMatrix& a);

}  // namespace hhllab
