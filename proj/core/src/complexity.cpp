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

#include "hhllab/complexity.hpp"

#include <cmath>

namespace hhllab {

const char* solver_method_name(SolverMethod m) {
  switch (m) {
    case SolverMethod::HHL:
      return "hhl";
    case SolverMethod::ConjugateGradient:
      return "conjugate_gradient";
    case SolverMethod::GaussianElimination:
      return "gaussian_elimination";
    case SolverMethod::BlockKrylov:
      return "block_krylov";
  }
  return "?";
}

CostEstimate complexity_estimate(SolverMethod method, double n, double s,
                                 double k, double eps) {
  if (n < 2 || s < 1 || k < 1 || eps <= 0 || eps >= 1)
    throw InvalidParameter(
        "complexity_estimate: need N >= 2, s >= 1, k >= 1, 0 < eps < 1");
  CostEstimate est{method, n, s, k, eps, 0};
  switch (method) {
    case SolverMethod::HHL:
      est.ops = std::log2(n) * s * s * k * k / eps;
      break;
    case SolverMethod::ConjugateGradient:
      est.ops = n * s * std::sqrt(k) * std::log(1.0 / eps);
      break;
    case SolverMethod::GaussianElimination:
      est.ops = n * n * n;
      break;
    case SolverMethod::BlockKrylov:
      est.ops = std::pow(n, 2.33);
      break;
  }
  return est;
}

CrossoverTable crossover_table(double s, double k, double eps,
                               const std::vector<double>& n_grid) {
  CrossoverTable table;
  for (double n : n_grid) {
    CrossoverRow row;
    row.n = n;
    row.hhl_ops = complexity_estimate(SolverMethod::HHL, n, s, k, eps).ops;
    row.cg_ops =
        complexity_estimate(SolverMethod::ConjugateGradient, n, s, k, eps).ops;
    row.gauss_ops =
        complexity_estimate(SolverMethod::GaussianElimination, n, s, k, eps)
            .ops;
    row.ratio_cg_over_hhl = row.cg_ops / row.hhl_ops;
    if (table.first_n_below_cg == 0 && row.hhl_ops < row.cg_ops)
      table.first_n_below_cg = n;
    if (table.first_n_below_gauss == 0 && row.hhl_ops < row.gauss_ops)
      table.first_n_below_gauss = n;
    table.rows.push_back(row);
  }
  return table;
}

std::uint64_t measured_ops(const GaussianSolve& run) {
  return run.multiply_adds;
}

std::uint64_t measured_ops(const ConjugateGradientSolve& run) {
  return run.multiply_adds;
}

}  // namespace hhllab
