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
#include <optional>
#include <vector>

#include "hhllab/circuit.hpp"
#include "hhllab/linalg.hpp"
#include "hhllab/noise.hpp"
#include "hhllab/qft_qpe.hpp"
#include "hhllab/statevector.hpp"

namespace hhllab {

/// A preprocessed linear system ready for the quantum pipeline.
///
/// `a`/`b` are the (possibly Hermitian-embedded) normalized system; the raw
/// inputs are kept for rescaling and verification. Register layout of the
/// built circuit: ancilla = qubit 0, clock = qubits 1..n_clock, b register
/// above that (b's least significant qubit first).
struct HHLProblem {
  ComplexMatrix a;
  ComplexVector b;  // unit norm
  int n_clock = 0;
  double t = 0.0;  // evolution time in e^{iAt}
  double c = 0.0;  // inversion constant, same scale as the clock eigenvalues

  double b_norm = 0.0;  // norm of the raw right-hand side
  bool embedded = false;
  std::size_t original_dim = 0;
  ComplexMatrix a_original;
  ComplexVector b_original;

  /// True when every clock eigenvalue is a positive integer below 2^n_clock,
  /// i.e. phase estimation is exact and the solver reproduces the classical
  /// solution to numerical precision.
  bool exact_mode = false;

  EigenDecomposition eig;                // of `a`
  std::vector<double> clock_eigenvalues;  // lambda~_j, ascending with eig

  int n_b_qubits() const;
  int num_qubits() const { return 1 + n_clock + n_b_qubits(); }
  std::vector<int> clock_qubit_indices() const;
  std::vector<int> b_qubit_indices() const;
  /// Measured-qubit list in render order: b register (most significant bit
  /// first), then the ancilla — so the 2x2 worked system reads "b ancilla".
  std::vector<int> measured_qubit_indices() const;
};

/// Validates, embeds non-Hermitian input, normalizes b and picks
/// (n_clock, t, C) unless overridden. Exact mode searches n_clock <= 8 for
/// a time making every clock eigenvalue a distinct positive integer; the
/// fallback scales the largest eigenvalue to 2^n - 1 and flags approximate
/// mode. Throws ZeroRHS / SingularMatrix / NotPowerOfTwo.
HHLProblem preprocess(const ComplexMatrix& a_raw, const ComplexVector& b_raw,
                      std::optional<int> n_clock = {},
                      std::optional<double> t = {},
                      std::optional<double> c = {});

/// Amplitude-encoding circuit mapping |0...0> to v (unit norm, power-of-two
/// dimension) up to global phase, via a binary tree of multiplexed RY
/// rotations plus per-basis phase corrections; basis states normalize to
/// plain X gates.
Circuit prepare_state(const ComplexVector& v);

/// Ancilla rotation block: for every clock value m in [1, 2^n) with
/// C/m <= 1, RY(2 asin(C/m)) on the ancilla conditioned on clock == m.
/// Local layout: qubit 0 = ancilla, qubits 1..n = clock (LSB first).
Circuit build_eigeninversion(int n_clock, double c);

/// Box 7-style variant: one singly-controlled RY per clock qubit, valid
/// when the populated clock values are one-hot. Kept for the equivalence
/// regression against the multiplexed construction.
Circuit build_eigeninversion_onehot(int n_clock, double c);

/// Full pipeline with barriers phi1..phi9 between stages and terminal
/// measurements on the b register and ancilla.
Circuit build_hhl_circuit(const HHLProblem& p);

struct RunMode {
  enum class Kind { Statevector, Shots, Noisy };
  Kind kind = Kind::Statevector;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::optional<NoiseModel> model;

  static RunMode statevector() { return {}; }
  static RunMode with_shots(std::uint64_t shots, std::uint64_t seed);
  static RunMode noisy(NoiseModel model, std::uint64_t shots,
                       std::uint64_t seed);
};

struct HHLResult {
  double success_probability = 0.0;  // ancilla = 1 mass
  /// Unit-norm solution direction. Statevector mode keeps signs and phases;
  /// shot modes can only provide magnitudes.
  ComplexVector direction;
  /// direction scaled by the least-squares factor against the raw system;
  /// statevector mode only (empty otherwise).
  ComplexVector rescaled_solution;
  ShotHistogram histogram;  // shot and noisy modes
  /// count("11")/count("01") (or the probability ratio in statevector
  /// mode); present when the b register is a single qubit.
  std::optional<double> ratio_11_01;
  /// Barrier snapshots from statevector execution.
  SnapshotSet snapshots;
};

HHLResult run_hhl(const HHLProblem& p, const RunMode& mode);

struct VerificationReport {
  double residual = 0.0;           // ||A x - b|| / ||b|| on the raw system
  double cosine_similarity = 0.0;  // |<direction, classical direction>|
  ComplexVector classical_solution;
};

/// Compares a statevector-mode result against Gaussian elimination.
VerificationReport verify_solution(const HHLProblem& p, const HHLResult& r);

}  // namespace hhllab
