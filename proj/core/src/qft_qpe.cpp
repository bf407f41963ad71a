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

#include "hhllab/qft_qpe.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace hhllab {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_spec(const QPESpec& spec) {
  if (spec.n_clock < 1)
    throw SpecInconsistent("QPE spec: n_clock must be >= 1");
  if (static_cast<int>(spec.clock_qubits.size()) != spec.n_clock)
    throw SpecInconsistent("QPE spec: clock qubit list size != n_clock");
  if (!spec.controlled_powers)
    throw SpecInconsistent("QPE spec: missing controlled-power supplier");

  const ComplexMatrix u0 = spec.controlled_powers(0);
  const std::size_t dim = std::size_t{1} << spec.target_qubits.size();
  if (u0.rows() != dim)
    throw SpecInconsistent("QPE spec: unitary dimension != target register");
  if (!u0.is_unitary(1e-10))
    throw SpecInconsistent("QPE spec: supplied matrix is not unitary");

  ComplexMatrix expected = u0;
  for (int j = 1; j < spec.n_clock; ++j) {
    expected = expected * expected;  // u0^(2^j)
    const ComplexMatrix supplied = spec.controlled_powers(j);
    if (!supplied.is_unitary(1e-10))
      throw SpecInconsistent("QPE spec: supplied matrix is not unitary");
    if (max_abs_diff(supplied, expected) > 1e-9)
      throw SpecInconsistent(
          "QPE spec: supplier(" + std::to_string(j) +
          ") is not supplier(0)^(2^" + std::to_string(j) + ")");
  }
}

}  // namespace

Circuit build_qft(int n) {
  if (n < 1) throw InvalidParameter("build_qft: n must be >= 1");
  Circuit c(n);
  for (int j = n - 1; j >= 0; --j) {
    c.add_gate(Gate::h(), {j});
    for (int k = j - 1; k >= 0; --k)
      c.add_gate(Gate::phase(kPi / double(1 << (j - k))).controlled({k}), {j});
  }
  for (int j = 0; j < n / 2; ++j) c.add_gate(Gate::swap(), {j, n - 1 - j});
  return c;
}

Circuit build_iqft(int n) {
  if (n < 1) throw InvalidParameter("build_iqft: n must be >= 1");
  Circuit c(n);
  for (int j = 0; j < n / 2; ++j) c.add_gate(Gate::swap(), {j, n - 1 - j});
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k)
      c.add_gate(Gate::phase(-kPi / double(1 << (j - k))).controlled({k}), {j});
    c.add_gate(Gate::h(), {j});
  }
  return c;
}

Circuit build_qpe(const QPESpec& spec) {
  validate_spec(spec);
  Circuit c(spec.num_qubits);
  for (int q : spec.clock_qubits) c.add_gate(Gate::h(), {q});
  for (int j = 0; j < spec.n_clock; ++j)
    c.add_gate(
        Gate::from_matrix(spec.controlled_powers(j)).controlled(
            {spec.clock_qubits[j]}),
        spec.target_qubits);
  c.append(build_iqft(spec.n_clock), spec.clock_qubits);
  return c;
}

Circuit build_inverse_qpe(const QPESpec& spec) {
  validate_spec(spec);
  Circuit c(spec.num_qubits);
  c.append(build_qft(spec.n_clock), spec.clock_qubits);
  for (int j = spec.n_clock - 1; j >= 0; --j)
    c.add_gate(
        Gate::from_matrix(spec.controlled_powers(j).adjoint()).controlled(
            {spec.clock_qubits[j]}),
        spec.target_qubits);
  for (int q : spec.clock_qubits) c.add_gate(Gate::h(), {q});
  return c;
}

double eigenvalue_to_clock(double lambda, double t, int n_clock) {
  if (t <= 0) throw InvalidParameter("eigenvalue_to_clock: t must be > 0");
  return double(std::size_t{1} << n_clock) * lambda * t / (2.0 * kPi);
}

}  // namespace hhllab
