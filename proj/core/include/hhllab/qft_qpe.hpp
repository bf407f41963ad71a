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

#include <functional>
#include <vector>

#include "hhllab/circuit.hpp"
#include "hhllab/linalg.hpp"

namespace hhllab {

/// Phase-estimation layout: clock_qubits[j] controls controlled_powers(j),
/// which must equal controlled_powers(0) raised to the 2^j power (checked
/// at build time within 1e-9).
struct QPESpec {
  int n_clock = 0;
  /// Supplier of U^(2^j) as a unitary on the target register.
  std::function<ComplexMatrix(int)> controlled_powers;
  std::vector<int> clock_qubits;   // clock_qubits[0] is the clock LSB
  std::vector<int> target_qubits;  // eigenvector register
  int num_qubits = 0;              // size of the circuit to build
};

/// Quantum Fourier transform on n qubits: per-qubit Hadamard followed by
/// positive controlled phases +pi/2^v, with the qubit-reversal SWAP block
/// at the end. Equals the DFT matrix exp(2*pi*i*x*y/2^n)/2^(n/2) under the
/// little-endian convention.
Circuit build_qft(int n);

/// Inverse QFT: SWAP block first, then the mirrored cascade with negative
/// phases -pi/2^v. Exact adjoint of build_qft(n), built independently.
Circuit build_iqft(int n);

/// Hadamards on the clock, controlled powers, then the inverse QFT on the
/// clock. On an eigenstate with eigenphase k/2^n the clock ends in |k>.
Circuit build_qpe(const QPESpec& spec);

/// QFT on the clock, controlled inverse powers in descending order, then
/// Hadamards; undoes build_qpe.
Circuit build_inverse_qpe(const QPESpec& spec);

/// Clock encoding of an eigenvalue: lambda~ = 2^n * lambda * t / (2*pi).
double eigenvalue_to_clock(double lambda, double t, int n_clock);

}  // namespace hhllab
