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

#include <cstdint>
#include <string>
#include <vector>

#include "hhllab/linalg.hpp"

namespace hhllab {

// Analytic operation-count estimates, evaluated with constant factor 1.
// They illustrate scaling, never wall-clock predictions.

enum class SolverMethod {
  HHL,
  ConjugateGradient,
  GaussianElimination,
  BlockKrylov,
};

const char* solver_method_name(SolverMethod m);

struct CostEstimate {
  SolverMethod method{};
  double n = 0;    // system size
  double s = 0;    // nonzeros per row
  double k = 0;    // condition number
  double eps = 0;  // target accuracy
  double ops = 0;  // order-of-magnitude operation count
};

/// hhl: log2(N) s^2 k^2 / eps;  cg: N s sqrt(k) ln(1/eps);
/// gauss: N^3;  krylov: N^2.33. Throws InvalidParameter out of range.
CostEstimate complexity_estimate(SolverMethod method, double n, double s,
                                 double k, double eps);

struct CrossoverRow {
  double n = 0;
  double hhl_ops = 0;
  double cg_ops = 0;
  double gauss_ops = 0;
  double ratio_cg_over_hhl = 0;
};

struct CrossoverTable {
  std::vector<CrossoverRow> rows;
  /// Smallest grid N where the HHL estimate drops below CG / Gaussian
  /// elimination; 0 when it never does on the grid.
  double first_n_below_cg = 0;
  double first_n_below_gauss = 0;
};

CrossoverTable crossover_table(double s, double k, double eps,
                               const std::vector<double>& n_grid);

/// Measured multiply-add counts from the instrumented classical solvers.
std::uint64_t measured_ops(const GaussianSolve& run);
std::uint64_t measured_ops(const ConjugateGradientSolve& run);

}  // namespace hhllab
