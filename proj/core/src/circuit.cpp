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

#include "hhllab/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace hhllab {

Gate Gate::x() {
  Gate g;
  g.kind = GateKind::X;
  return g;
}
Gate Gate::h() {
  Gate g;
  g.kind = GateKind::H;
  return g;
}

Gate Gate::phase(double theta) {
  Gate g;
  g.kind = GateKind::Phase;
  g.theta = theta;
  return g;
}

Gate Gate::u(double theta, double phi, double lambda, double gamma) {
  Gate g;
  g.kind = GateKind::U;
  g.theta = theta;
  g.phi = phi;
  g.lambda = lambda;
  g.gamma = gamma;
  return g;
}

Gate Gate::ry(double theta) {
  Gate g;
  g.kind = GateKind::RY;
  g.theta = theta;
  return g;
}

Gate Gate::swap() {
  Gate g;
  g.kind = GateKind::Swap;
  return g;
}

Gate Gate::from_matrix(const ComplexMatrix& m) {
  if (!m.is_square() || m.rows() == 0)
    throw NotUnitary("from_matrix: matrix must be square");
  const std::size_t n = m.rows();
  if ((n & (n - 1)) != 0)
    throw NotUnitary("from_matrix: dimension must be a power of two");
  if (!m.is_unitary(1e-12))
    throw NotUnitary("from_matrix: matrix is not unitary within 1e-12");
  Gate g;
  g.kind = GateKind::FromMatrix;
  g.matrix = m;
  return g;
}

Gate Gate::controlled(std::vector<int> control_qubits) const {
  Gate g = *this;
  g.controls.insert(g.controls.end(), control_qubits.begin(),
                    control_qubits.end());
  return g;
}

Gate Gate::adjoint() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::Swap:
      break;  // self-adjoint
    case GateKind::Phase:
    case GateKind::RY:
      g.theta = -theta;
      break;
    case GateKind::U:
      // U(θ,φ,λ,γ)† = U(-θ,-λ,-φ,-γ)
      g.theta = -theta;
      g.phi = -lambda;
      g.lambda = -phi;
      g.gamma = -gamma;
      break;
    case GateKind::FromMatrix:
      g.matrix = matrix.adjoint();
      break;
  }
  return g;
}

int Gate::arity() const {
  switch (kind) {
    case GateKind::Swap:
      return 2;
    case GateKind::FromMatrix: {
      int k = 0;
      for (std::size_t d = matrix.rows(); d > 1; d >>= 1) ++k;
      return k;
    }
    default:
      return 1;
  }
}

const char* Gate::name() const {
  switch (kind) {
    case GateKind::X:
      return "x";
    case GateKind::H:
      return "h";
    case GateKind::Phase:
      return "p";
    case GateKind::U:
      return "u";
    case GateKind::RY:
      return "ry";
    case GateKind::Swap:
      return "swap";
    case GateKind::FromMatrix:
      return "unitary";
  }
  return "?";
}

ComplexMatrix gate_base_matrix(const Gate& g) {
  const double c = std::cos(g.theta / 2.0);
  const double s = std::sin(g.theta / 2.0);
  switch (g.kind) {
    case GateKind::X:
      return ComplexMatrix{{0, 1}, {1, 0}};
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      return ComplexMatrix{{r, r}, {r, -r}};
    }
    case GateKind::Phase:
      return ComplexMatrix{{1, 0}, {0, std::exp(Complex(0, g.theta))}};
    case GateKind::U: {
      const Complex global = std::exp(Complex(0, g.gamma));
      ComplexMatrix m{{c, -std::exp(Complex(0, g.lambda)) * s},
                      {std::exp(Complex(0, g.phi)) * s,
                       std::exp(Complex(0, g.phi + g.lambda)) * c}};
      return global * m;
    }
    case GateKind::RY:
      return ComplexMatrix{{c, -s}, {s, c}};
    case GateKind::Swap:
      return ComplexMatrix{
          {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    case GateKind::FromMatrix:
      return g.matrix;
  }
  throw Error("gate_base_matrix: unknown gate kind");
}

ComplexMatrix gate_matrix(const Gate& g) {
  const ComplexMatrix base = gate_base_matrix(g);
  const std::size_t nc = g.controls.size();
  if (nc == 0) return base;
  const std::size_t base_dim = base.rows();
  const std::size_t dim = base_dim << nc;
  ComplexMatrix full = ComplexMatrix::identity(dim);
  // Controls occupy the high bits; only the all-ones block is the gate.
  const std::size_t block = dim - base_dim;
  for (std::size_t r = 0; r < base_dim; ++r)
    for (std::size_t c = 0; c < base_dim; ++c)
      full(block + r, block + c) = base(r, c);
  return full;
}

Circuit::Circuit(int num_qubits, int num_clbits)
    : num_qubits_(num_qubits), num_clbits_(num_clbits) {
  if (num_qubits < 0 || num_clbits < 0)
    throw IndexOutOfRange("circuit sizes must be non-negative");
}

void Circuit::set_register(const std::string& name, std::vector<int> qubits) {
  for (int q : qubits) check_qubit(q);
  registers_[name] = std::move(qubits);
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits_)
    throw IndexOutOfRange("qubit index " + std::to_string(q) +
                          " out of range for " + std::to_string(num_qubits_) +
                          " qubits");
}

void Circuit::add_gate(const Gate& g, std::vector<int> targets) {
  if (static_cast<int>(targets.size()) != g.arity())
    throw ArityMismatch("gate expects " + std::to_string(g.arity()) +
                        " targets, got " + std::to_string(targets.size()));
  std::set<int> seen;
  for (int q : targets) {
    check_qubit(q);
    if (!seen.insert(q).second)
      throw DuplicateTarget("duplicate target qubit " + std::to_string(q));
  }
  for (int q : g.controls) {
    check_qubit(q);
    if (!seen.insert(q).second)
      throw DuplicateTarget("control qubit " + std::to_string(q) +
                            " collides with another operand");
  }
  ops_.push_back(GateOp{g, std::move(targets)});
}

void Circuit::add_barrier(std::string label) {
  ops_.push_back(BarrierOp{std::move(label)});
}

void Circuit::add_measure(int qubit, int clbit) {
  check_qubit(qubit);
  if (clbit < 0 || clbit >= num_clbits_)
    throw IndexOutOfRange("clbit index out of range");
  ops_.push_back(MeasureOp{qubit, clbit});
}

void Circuit::append(const Circuit& other, const std::vector<int>& qubit_map,
                     const std::vector<int>& clbit_map) {
  if (qubit_map.size() != static_cast<std::size_t>(other.num_qubits()))
    throw DimensionMismatch("append: qubit map size mismatch");
  auto map_qubit = [&](int q) { return qubit_map[q]; };
  for (const CircuitOp& op : other.ops()) {
    if (const auto* gop = std::get_if<GateOp>(&op)) {
      Gate g = gop->gate;
      for (int& c : g.controls) c = map_qubit(c);
      std::vector<int> targets = gop->targets;
      for (int& t : targets) t = map_qubit(t);
      add_gate(g, std::move(targets));
    } else if (const auto* bop = std::get_if<BarrierOp>(&op)) {
      add_barrier(bop->label);
    } else {
      const auto& mop = std::get<MeasureOp>(op);
      if (mop.clbit < 0 ||
          static_cast<std::size_t>(mop.clbit) >= clbit_map.size())
        throw DimensionMismatch("append: clbit map does not cover measurement");
      add_measure(map_qubit(mop.qubit), clbit_map[mop.clbit]);
    }
  }
}

bool Circuit::has_measurement() const {
  return std::any_of(ops_.begin(), ops_.end(), [](const CircuitOp& op) {
    return std::holds_alternative<MeasureOp>(op);
  });
}

std::size_t Circuit::gate_count() const {
  std::size_t n = 0;
  for (const CircuitOp& op : ops_)
    if (std::holds_alternative<GateOp>(op)) ++n;
  return n;
}

Circuit append_gate(Circuit c, const Gate& g, std::vector<int> targets) {
  c.add_gate(g, std::move(targets));
  return c;
}

Circuit invert_circuit(const Circuit& c) {
  if (c.has_measurement())
    throw ContainsMeasurement("invert_circuit: circuit contains measurements");
  Circuit out(c.num_qubits(), c.num_clbits());
  for (const auto& [name, qubits] : c.registers())
    out.set_register(name, qubits);
  for (auto it = c.ops().rbegin(); it != c.ops().rend(); ++it) {
    if (const auto* gop = std::get_if<GateOp>(&*it)) {
      out.add_gate(gop->gate.adjoint(), gop->targets);
    } else if (const auto* bop = std::get_if<BarrierOp>(&*it)) {
      out.add_barrier(bop->label);
    }
  }
  return out;
}

namespace {

// Applies `base` (with control mask) to every column of u, treating each
// column as a state. Direct index arithmetic; independent of the
// statevector simulator so circuit_unitary can serve as its oracle.
void apply_gate_to_columns(ComplexMatrix& u, const ComplexMatrix& base,
                           const std::vector<int>& targets,
                           const std::vector<int>& controls) {
  const std::size_t dim = u.rows();
  const std::size_t k = targets.size();
  const std::size_t block = std::size_t{1} << k;
  std::size_t target_mask = 0;
  for (int t : targets) target_mask |= std::size_t{1} << t;
  std::size_t control_mask = 0;
  for (int cq : controls) control_mask |= std::size_t{1} << cq;

  std::vector<std::size_t> offsets(block);
  for (std::size_t sub = 0; sub < block; ++sub) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (sub & (std::size_t{1} << j)) off |= std::size_t{1} << targets[j];
    offsets[sub] = off;
  }

  std::vector<Complex> scratch(block);
  for (std::size_t col = 0; col < u.cols(); ++col) {
    for (std::size_t base_idx = 0; base_idx < dim; ++base_idx) {
      if (base_idx & target_mask) continue;
      if ((base_idx & control_mask) != control_mask) continue;
      for (std::size_t sub = 0; sub < block; ++sub)
        scratch[sub] = u(base_idx | offsets[sub], col);
      for (std::size_t r = 0; r < block; ++r) {
        Complex s = 0;
        for (std::size_t cc = 0; cc < block; ++cc)
          s += base(r, cc) * scratch[cc];
        u(base_idx | offsets[r], col) = s;
      }
    }
  }
}

}  // namespace

ComplexMatrix circuit_unitary(const Circuit& c) {
  if (c.has_measurement())
    throw ContainsMeasurement("circuit_unitary: circuit contains measurements");
  if (c.num_qubits() > 10)
    throw TooLarge("circuit_unitary: limited to 10 qubits");
  const std::size_t dim = std::size_t{1} << c.num_qubits();
  ComplexMatrix u = ComplexMatrix::identity(dim);
  for (const CircuitOp& op : c.ops()) {
    const auto* gop = std::get_if<GateOp>(&op);
    if (!gop) continue;
    apply_gate_to_columns(u, gate_base_matrix(gop->gate), gop->targets,
                          gop->gate.controls);
  }
  return u;
}

}  // namespace hhllab
