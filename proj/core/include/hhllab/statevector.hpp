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
#include <map>
#include <string>
#include <vector>

#include "hhllab/circuit.hpp"
#include "hhllab/linalg.hpp"

namespace hhllab {

/// Pure state of n qubits: 2^n complex amplitudes, little-endian indexing.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0> on n qubits.
  explicit StateVector(int num_qubits);
  static StateVector from_amplitudes(std::vector<Complex> amps);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  Complex& amp(std::size_t i) { return amps_[i]; }
  const Complex& amp(std::size_t i) const { return amps_[i]; }
  const std::vector<Complex>& amplitudes() const { return amps_; }

  double norm() const;

  /// In-place gate application by amplitude-pair updates over bit masks;
  /// O(2^n) per single-qubit gate, no full matrices are built.
  void apply(const Gate& g, const std::vector<int>& targets);

  double probability_of(int qubit, int outcome) const;

 private:
  std::vector<Complex> amps_;
  int num_qubits_ = 0;
};

/// Counts over rendered bitstrings. The seed that produced the histogram is
/// recorded so any run can be reproduced exactly.
struct ShotHistogram {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  std::uint64_t count(const std::string& bits) const {
    auto it = counts.find(bits);
    return it == counts.end() ? 0 : it->second;
  }
};

/// Barrier label -> state copy, taken eagerly during execution.
using SnapshotSet = std::map<std::string, StateVector>;

struct IdealRun {
  StateVector state;
  SnapshotSet snapshots;
  /// Measurements whose qubits see no later gate; left uncollapsed so the
  /// returned state stays pure (deferred-measurement principle).
  std::vector<MeasureOp> terminal_measurements;
  /// Outcomes of mid-circuit measurements that had to collapse, clbit -> bit.
  std::map<int, int> collapsed_bits;
};

/// Executes every unitary of the circuit on |0...0>, recording a snapshot at
/// each barrier. Mid-circuit measurements collapse a seeded random branch;
/// terminal ones are deferred. The seed matters only for the former.
IdealRun run_ideal(const Circuit& c, std::uint64_t seed = 0);

/// Draws `shots` samples from the marginal distribution over `measured`
/// qubits by inverse-CDF with the library RNG (see rng.hpp). Bitstrings are
/// rendered with measured[0] as the leftmost character.
ShotHistogram sample(const StateVector& s, const std::vector<int>& measured,
                     std::uint64_t shots, std::uint64_t seed);

struct Postselection {
  StateVector state;
  double probability = 0.0;
};

/// Projects onto `qubit` == outcome and renormalizes; returns the
/// pre-selection probability. Throws ZeroProbabilityBranch below 1e-14.
Postselection postselect(const StateVector& s, int qubit, int outcome);

/// |<a|b>|^2 — global-phase invariant by construction.
double state_fidelity(const StateVector& a, const StateVector& b);

}  // namespace hhllab
