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

#include "hhllab/statevector.hpp"

#include <algorithm>
#include <cmath>

#include "hhllab/rng.hpp"

namespace hhllab {

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  amps_.assign(std::size_t{1} << num_qubits, Complex(0));
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps) {
  StateVector s;
  std::size_t n = amps.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw DimensionMismatch("statevector length must be a power of two");
  s.amps_ = std::move(amps);
  while (n > 1) {
    n >>= 1;
    ++s.num_qubits_;
  }
  return s;
}

double StateVector::norm() const {
  double s = 0;
  for (const Complex& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::apply(const Gate& g, const std::vector<int>& targets) {
  std::size_t control_mask = 0;
  for (int c : g.controls) control_mask |= std::size_t{1} << c;

  if (g.kind == GateKind::Swap) {
    const std::size_t m0 = std::size_t{1} << targets[0];
    const std::size_t m1 = std::size_t{1} << targets[1];
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      const bool b0 = i & m0, b1 = i & m1;
      if (b0 && !b1 && (i & control_mask) == control_mask)
        std::swap(amps_[i], amps_[(i ^ m0) | m1]);
    }
    return;
  }

  if (g.arity() == 1) {
    const ComplexMatrix m = gate_base_matrix(g);
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    const std::size_t mask = std::size_t{1} << targets[0];
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    const std::size_t half = amps_.size() >> 1;
    for (std::size_t i = 0; i < half; ++i) {
      const std::size_t i0 = ((i & hi) << 1) | (i & lo);
      if ((i0 & control_mask) != control_mask) continue;
      const std::size_t i1 = i0 | mask;
      const Complex a0 = amps_[i0], a1 = amps_[i1];
      amps_[i0] = m00 * a0 + m01 * a1;
      amps_[i1] = m10 * a0 + m11 * a1;
    }
    return;
  }

  // General k-target gather/scatter path.
  const ComplexMatrix m = gate_base_matrix(g);
  const std::size_t k = targets.size();
  const std::size_t block = std::size_t{1} << k;
  std::size_t target_mask = 0;
  for (int t : targets) target_mask |= std::size_t{1} << t;
  std::vector<std::size_t> offsets(block);
  for (std::size_t sub = 0; sub < block; ++sub) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (sub & (std::size_t{1} << j)) off |= std::size_t{1} << targets[j];
    offsets[sub] = off;
  }
  std::vector<Complex> scratch(block);
  for (std::size_t base = 0; base < amps_.size(); ++base) {
    if (base & target_mask) continue;
    if ((base & control_mask) != control_mask) continue;
    for (std::size_t sub = 0; sub < block; ++sub)
      scratch[sub] = amps_[base | offsets[sub]];
    for (std::size_t r = 0; r < block; ++r) {
      Complex s = 0;
      for (std::size_t c = 0; c < block; ++c) s += m(r, c) * scratch[c];
      amps_[base | offsets[r]] = s;
    }
  }
}

double StateVector::probability_of(int qubit, int outcome) const {
  const std::size_t mask = std::size_t{1} << qubit;
  double p = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if (((i & mask) != 0) == (outcome != 0)) p += std::norm(amps_[i]);
  return p;
}

namespace {

// A measurement is terminal when no later op touches its qubit.
bool qubit_used_after(const Circuit& c, std::size_t op_index, int qubit) {
  for (std::size_t j = op_index + 1; j < c.ops().size(); ++j) {
    const CircuitOp& op = c.ops()[j];
    if (const auto* gop = std::get_if<GateOp>(&op)) {
      if (std::find(gop->targets.begin(), gop->targets.end(), qubit) !=
          gop->targets.end())
        return true;
      if (std::find(gop->gate.controls.begin(), gop->gate.controls.end(),
                    qubit) != gop->gate.controls.end())
        return true;
    } else if (const auto* mop = std::get_if<MeasureOp>(&op)) {
      if (mop->qubit == qubit) return true;
    }
  }
  return false;
}

}  // namespace

IdealRun run_ideal(const Circuit& c, std::uint64_t seed) {
  IdealRun run;
  run.state = StateVector(c.num_qubits());
  Xoshiro256StarStar rng(seed);

  for (std::size_t i = 0; i < c.ops().size(); ++i) {
    const CircuitOp& op = c.ops()[i];
    if (const auto* gop = std::get_if<GateOp>(&op)) {
      run.state.apply(gop->gate, gop->targets);
    } else if (const auto* bop = std::get_if<BarrierOp>(&op)) {
      run.snapshots.emplace(bop->label, run.state);
    } else {
      const auto& mop = std::get<MeasureOp>(op);
      if (!qubit_used_after(c, i, mop.qubit)) {
        run.terminal_measurements.push_back(mop);
        continue;
      }
      // Mid-circuit: collapse one branch with the seeded generator.
      const double p1 = run.state.probability_of(mop.qubit, 1);
      const int outcome = rng.uniform() < p1 ? 1 : 0;
      Postselection sel = postselect(run.state, mop.qubit, outcome);
      run.state = std::move(sel.state);
      run.collapsed_bits[mop.clbit] = outcome;
    }
  }
  return run;
}

ShotHistogram sample(const StateVector& s, const std::vector<int>& measured,
                     std::uint64_t shots, std::uint64_t seed) {
  if (measured.empty())
    throw EmptyMeasurementSet("sample: no measured qubits given");
  if (shots < 1) throw InvalidParameter("sample: shots must be >= 1");

  const std::size_t outcomes = std::size_t{1} << measured.size();
  std::vector<double> probs(outcomes, 0.0);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    std::size_t key = 0;
    for (std::size_t j = 0; j < measured.size(); ++j)
      if (i & (std::size_t{1} << measured[j])) key |= std::size_t{1} << j;
    probs[key] += std::norm(s.amp(i));
  }

  std::vector<double> cdf(outcomes);
  double acc = 0;
  for (std::size_t k = 0; k < outcomes; ++k) {
    acc += probs[k];
    cdf[k] = acc;
  }
  cdf.back() = std::max(cdf.back(), 1.0);  // guard the final bin

  auto render = [&](std::size_t key) {
    std::string bits(measured.size(), '0');
    // measured[0] is the leftmost character of the rendered string.
    for (std::size_t j = 0; j < measured.size(); ++j)
      if (key & (std::size_t{1} << j)) bits[j] = '1';
    return bits;
  };

  ShotHistogram hist;
  hist.shots = shots;
  hist.seed = seed;
  Xoshiro256StarStar rng(seed);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform();
    const std::size_t key =
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    ++hist.counts[render(std::min(key, outcomes - 1))];
  }
  return hist;
}

Postselection postselect(const StateVector& s, int qubit, int outcome) {
  const double p = s.probability_of(qubit, outcome);
  if (p <= 1e-14)
    throw ZeroProbabilityBranch("postselect: branch probability below 1e-14");
  std::vector<Complex> amps(s.dim());
  const std::size_t mask = std::size_t{1} << qubit;
  const double scale = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const bool match = (((i & mask) != 0) == (outcome != 0));
    amps[i] = match ? s.amp(i) * scale : Complex(0);
  }
  return {StateVector::from_amplitudes(std::move(amps)), p};
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("state_fidelity: dimension mismatch");
  Complex overlap = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    overlap += std::conj(a.amp(i)) * b.amp(i);
  return std::norm(overlap);
}

}  // namespace hhllab
