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

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "hhllab/linalg.hpp"

namespace hhllab {

// Qubit ordering is little-endian throughout: qubit 0 is the least
// significant bit of a basis-state index.

enum class GateKind { X, H, Phase, U, RY, Swap, FromMatrix };

/// A gate application: a base unitary plus zero or more control qubits.
/// Control indices refer to circuit qubits; target qubits are supplied
/// when the gate is appended to a circuit.
struct Gate {
  GateKind kind = GateKind::X;
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  ComplexMatrix matrix;  // FromMatrix payload only
  std::vector<int> controls;

  static Gate x();
  static Gate h();
  static Gate phase(double theta);
  /// e^{iγ} [[cos(θ/2), -e^{iλ} sin(θ/2)], [e^{iφ} sin(θ/2), e^{i(φ+λ)} cos(θ/2)]]
  static Gate u(double theta, double phi, double lambda, double gamma = 0.0);
  static Gate ry(double theta);
  static Gate swap();
  /// Throws NotUnitary unless m is unitary within 1e-12 and a power-of-two square.
  static Gate from_matrix(const ComplexMatrix& m);

  /// Same gate with the given control qubits attached.
  Gate controlled(std::vector<int> control_qubits) const;
  Gate adjoint() const;

  /// Number of target qubits the gate acts on (controls excluded).
  int arity() const;

  const char* name() const;
};

/// Base unitary on the target qubits only (2^arity square).
ComplexMatrix gate_base_matrix(const Gate& g);

/// Full unitary including controls. Local ordering: targets occupy the low
/// bits (target 0 least significant), controls the high bits; every block
/// is the identity except the all-controls-one block, which holds the base
/// matrix.
ComplexMatrix gate_matrix(const Gate& g);

struct GateOp {
  Gate gate;
  std::vector<int> targets;
};

/// Semantic no-op naming a snapshot point for state inspection.
struct BarrierOp {
  std::string label;
};

struct MeasureOp {
  int qubit = 0;
  int clbit = 0;
};

using CircuitOp = std::variant<GateOp, BarrierOp, MeasureOp>;

/// An ordered list of gate applications, barriers and measurements over
/// named qubit registers. Immutable values once built; copying is cheap
/// enough at desk scale that builders pass circuits by value.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_qubits, int num_clbits = 0);

  int num_qubits() const { return num_qubits_; }
  int num_clbits() const { return num_clbits_; }
  const std::vector<CircuitOp>& ops() const { return ops_; }

  void set_register(const std::string& name, std::vector<int> qubits);
  const std::map<std::string, std::vector<int>>& registers() const {
    return registers_;
  }

  /// Validates targets/controls (range, arity, duplicates) and appends.
  void add_gate(const Gate& g, std::vector<int> targets);
  void add_barrier(std::string label);
  void add_measure(int qubit, int clbit);

  /// Appends another circuit with its qubit i mapped to qubit_map[i]
  /// (and clbit j to clbit_map[j] when measurements are present).
  void append(const Circuit& other, const std::vector<int>& qubit_map,
              const std::vector<int>& clbit_map = {});

  bool has_measurement() const;
  std::size_t gate_count() const;

 private:
  void check_qubit(int q) const;

  int num_qubits_ = 0;
  int num_clbits_ = 0;
  std::vector<CircuitOp> ops_;
  std::map<std::string, std::vector<int>> registers_;
};

/// Value-semantics append: returns a new circuit, input unchanged.
Circuit append_gate(Circuit c, const Gate& g, std::vector<int> targets);

/// Reverses execution order and replaces every gate by its adjoint.
/// Throws ContainsMeasurement if the circuit measures.
Circuit invert_circuit(const Circuit& c);

/// Full 2^n x 2^n unitary of a measurement-free circuit, n <= 10.
/// Intended as a small-n test oracle, not a simulation path.
ComplexMatrix circuit_unitary(const Circuit& c);

}  // namespace hhllab
