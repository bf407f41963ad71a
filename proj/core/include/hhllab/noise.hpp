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

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hhllab/circuit.hpp"
#include "hhllab/linalg.hpp"

namespace hhllab {

struct HHLProblem;  // hhl.hpp

using ReadoutConfusion = std::array<std::array<double, 2>, 2>;

/// Device-style noise parameters. Times in microseconds; t1/t2 of infinity
/// disable the relaxation channels. The readout confusion matrix is
/// row-stochastic: row = true bit, column = reported bit.
struct NoiseModel {
  double p_2q = 0.0;
  double t1_us = std::numeric_limits<double>::infinity();
  double t2_us = std::numeric_limits<double>::infinity();
  double gate_time_1q_us = 0.05;
  double gate_time_2q_us = 0.3;
  /// Per-qubit confusion matrices; empty means ideal readout everywhere.
  std::vector<ReadoutConfusion> readout;

  static NoiseModel zero() { return NoiseModel{}; }
  /// Same symmetric confusion on every qubit.
  static ReadoutConfusion symmetric_confusion(double flip_probability);

  bool has_relaxation() const;
  ReadoutConfusion confusion_for(int qubit) const;

  /// Throws UnphysicalModel (t2 > 2 t1), InvalidParameter on bad ranges.
  void validate() const;
};

/// Mixed state of n qubits: Hermitian, trace-one 2^n x 2^n matrix.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  /// |0...0><0...0| on n qubits.
  explicit DensityMatrix(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return std::size_t{1} << num_qubits_; }
  Complex& entry(std::size_t r, std::size_t c) { return rho_(r, c); }
  const Complex& entry(std::size_t r, std::size_t c) const { return rho_(r, c); }
  const ComplexMatrix& matrix() const { return rho_; }

  double trace_real() const;

  /// rho -> U rho U† for a local gate, without building the full unitary.
  void apply_gate(const Gate& g, const std::vector<int>& targets);

  /// rho -> sum_i K_i rho K_i† with each Kraus operator acting on `qubits`.
  void apply_kraus(const std::vector<ComplexMatrix>& kraus_ops,
                   const std::vector<int>& qubits);

  /// Z-basis projection sum_b P_b rho P_b on one qubit.
  void dephase_qubit(int qubit);

  /// Diagonal marginal over `measured`, keyed like sample()'s bitstrings
  /// but returned as a dense vector indexed with measured[j] as bit j.
  std::vector<double> measured_probabilities(
      const std::vector<int>& measured) const;

 private:
  ComplexMatrix rho_;
  int num_qubits_ = 0;
};

/// Kraus sets for the channels used by run_noisy. Each satisfies
/// sum_i K_i† K_i = I exactly up to rounding.
std::vector<ComplexMatrix> depolarizing_kraus(double p, int num_qubits);
std::vector<ComplexMatrix> amplitude_damping_kraus(double gamma);
std::vector<ComplexMatrix> dephasing_kraus(double p_z);

/// Relaxation parameters for one gate duration.
struct RelaxationStep {
  double gamma = 0.0;  // amplitude damping strength
  double p_z = 0.0;    // pure-dephasing phase-flip probability
};
RelaxationStep relaxation_step(const NoiseModel& m, double duration_us);

/// Density-matrix execution: every gate as rho -> U rho U†, then a
/// depolarizing channel with parameter p_2q on the support of any gate
/// touching two or more qubits, then T1 damping and pure dephasing on the
/// participating qubits for the gate duration. Mid-circuit measurements
/// become Z-basis projections; terminal ones are deferred.
DensityMatrix run_noisy(const Circuit& c, const NoiseModel& m);

/// Pushes an outcome distribution through the per-qubit confusion matrices
/// as an exact tensor-product stochastic map.
std::vector<double> apply_readout_error(const std::vector<double>& probs,
                                        const NoiseModel& m,
                                        const std::vector<int>& measured);

enum class SweepMode { TwoQubitOnly, Full };

const char* sweep_mode_name(SweepMode mode);

/// One grid point of the noise study; probabilities over the measured
/// (b, ancilla) pair, so P_01 is "b=0, ancilla=1".
struct SweepRow {
  double p_2q = 0.0;
  SweepMode mode = SweepMode::TwoQubitOnly;
  double p00 = 0.0, p01 = 0.0, p10 = 0.0, p11 = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // Noise-free reference values (the dashed lines of the study plots).
  double ideal_p00 = 0.0, ideal_p01 = 0.0, ideal_p10 = 0.0, ideal_p11 = 0.0;
};

struct SweepSampling {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Runs the HHL circuit once per (grid point, mode). TwoQubitOnly zeroes
/// T1/T2 and readout; Full applies everything in `base`. Exact mode reads
/// probabilities from the density-matrix diagonal; pass `sampling` to
/// post-sample shot frequencies instead.
SweepResult noise_sweep(const HHLProblem& p, const NoiseModel& base,
                        const std::vector<double>& grid,
                        const std::vector<SweepMode>& modes,
                        std::optional<SweepSampling> sampling = {});

}  // namespace hhllab
