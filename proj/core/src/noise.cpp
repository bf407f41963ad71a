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

#include "hhllab/noise.hpp"

#include <algorithm>
#include <cmath>

#include "hhllab/hhl.hpp"
#include "hhllab/rng.hpp"
#include "hhllab/statevector.hpp"

namespace hhllab {

ReadoutConfusion NoiseModel::symmetric_confusion(double flip_probability) {
  return {{{1.0 - flip_probability, flip_probability},
           {flip_probability, 1.0 - flip_probability}}};
}

bool NoiseModel::has_relaxation() const {
  return std::isfinite(t1_us) || std::isfinite(t2_us);
}

ReadoutConfusion NoiseModel::confusion_for(int qubit) const {
  if (readout.size() == 1) return readout.front();  // one entry = every qubit
  if (static_cast<std::size_t>(qubit) < readout.size()) return readout[qubit];
  return {{{1.0, 0.0}, {0.0, 1.0}}};
}

void NoiseModel::validate() const {
  if (p_2q < 0.0 || p_2q >= 1.0)
    throw InvalidParameter("noise model: p_2q must lie in [0, 1)");
  if (t1_us <= 0 || t2_us <= 0)
    throw InvalidParameter("noise model: T1 and T2 must be positive");
  if (gate_time_1q_us < 0 || gate_time_2q_us < 0)
    throw InvalidParameter("noise model: gate times must be non-negative");
  if (std::isfinite(t1_us) || std::isfinite(t2_us)) {
    if (t2_us > 2.0 * t1_us + 1e-12)
      throw UnphysicalModel("noise model: requires T2 <= 2*T1");
  }
  for (const ReadoutConfusion& m : readout) {
    for (int r = 0; r < 2; ++r) {
      if (std::abs(m[r][0] + m[r][1] - 1.0) > 1e-12)
        throw InvalidParameter("noise model: confusion rows must sum to 1");
      if (m[r][0] < 0 || m[r][1] < 0)
        throw InvalidParameter("noise model: confusion entries must be >= 0");
    }
  }
}

DensityMatrix::DensityMatrix(int num_qubits) : num_qubits_(num_qubits) {
  const std::size_t d = std::size_t{1} << num_qubits;
  rho_ = ComplexMatrix(d, d);
  rho_(0, 0) = 1.0;
}

double DensityMatrix::trace_real() const {
  double t = 0;
  for (std::size_t i = 0; i < dim(); ++i) t += rho_(i, i).real();
  return t;
}

namespace {

struct LocalOperator {
  const ComplexMatrix* matrix;
  std::vector<std::size_t> offsets;  // sub-block index -> global offset
  std::size_t target_mask = 0;
  std::size_t control_mask = 0;
};

LocalOperator make_local(const ComplexMatrix& m, const std::vector<int>& qubits,
                         const std::vector<int>& controls) {
  LocalOperator op;
  op.matrix = &m;
  const std::size_t k = qubits.size();
  op.offsets.resize(std::size_t{1} << k);
  for (std::size_t sub = 0; sub < op.offsets.size(); ++sub) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (sub & (std::size_t{1} << j)) off |= std::size_t{1} << qubits[j];
    op.offsets[sub] = off;
  }
  for (int q : qubits) op.target_mask |= std::size_t{1} << q;
  for (int q : controls) op.control_mask |= std::size_t{1} << q;
  return op;
}

// rho <- (M rho), with M acting over the row index.
void left_apply(ComplexMatrix& rho, const LocalOperator& op) {
  const std::size_t dim = rho.rows();
  const std::size_t block = op.offsets.size();
  const ComplexMatrix& m = *op.matrix;
  std::vector<Complex> scratch(block);
  for (std::size_t col = 0; col < dim; ++col) {
    for (std::size_t base = 0; base < dim; ++base) {
      if (base & op.target_mask) continue;
      if ((base & op.control_mask) != op.control_mask) continue;
      for (std::size_t sub = 0; sub < block; ++sub)
        scratch[sub] = rho(base | op.offsets[sub], col);
      for (std::size_t r = 0; r < block; ++r) {
        Complex s = 0;
        for (std::size_t c = 0; c < block; ++c) s += m(r, c) * scratch[c];
        rho(base | op.offsets[r], col) = s;
      }
    }
  }
}

// rho <- (rho M†), i.e. conj(M) applied over the column index.
void right_apply_adjoint(ComplexMatrix& rho, const LocalOperator& op) {
  const std::size_t dim = rho.rows();
  const std::size_t block = op.offsets.size();
  const ComplexMatrix& m = *op.matrix;
  std::vector<Complex> scratch(block);
  for (std::size_t row = 0; row < dim; ++row) {
    for (std::size_t base = 0; base < dim; ++base) {
      if (base & op.target_mask) continue;
      if ((base & op.control_mask) != op.control_mask) continue;
      for (std::size_t sub = 0; sub < block; ++sub)
        scratch[sub] = rho(row, base | op.offsets[sub]);
      for (std::size_t r = 0; r < block; ++r) {
        Complex s = 0;
        for (std::size_t c = 0; c < block; ++c)
          s += std::conj(m(r, c)) * scratch[c];
        rho(row, base | op.offsets[r]) = s;
      }
    }
  }
}

}  // namespace

void DensityMatrix::apply_gate(const Gate& g, const std::vector<int>& targets) {
  const ComplexMatrix base = gate_base_matrix(g);
  const LocalOperator op = make_local(base, targets, g.controls);
  left_apply(rho_, op);
  right_apply_adjoint(rho_, op);
}

void DensityMatrix::apply_kraus(const std::vector<ComplexMatrix>& kraus_ops,
                                const std::vector<int>& qubits) {
  ComplexMatrix acc(rho_.rows(), rho_.cols());
  for (const ComplexMatrix& k : kraus_ops) {
    ComplexMatrix term = rho_;
    const LocalOperator op = make_local(k, qubits, {});
    left_apply(term, op);
    right_apply_adjoint(term, op);
    acc = acc + term;
  }
  rho_ = std::move(acc);
}

void DensityMatrix::dephase_qubit(int qubit) {
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c)
      if ((r & mask) != (c & mask)) rho_(r, c) = 0;
}

std::vector<double> DensityMatrix::measured_probabilities(
    const std::vector<int>& measured) const {
  std::vector<double> probs(std::size_t{1} << measured.size(), 0.0);
  for (std::size_t i = 0; i < dim(); ++i) {
    std::size_t key = 0;
    for (std::size_t j = 0; j < measured.size(); ++j)
      if (i & (std::size_t{1} << measured[j])) key |= std::size_t{1} << j;
    probs[key] += rho_(i, i).real();
  }
  return probs;
}

std::vector<ComplexMatrix> depolarizing_kraus(double p, int num_qubits) {
  if (p < 0 || p >= 1)
    throw InvalidParameter("depolarizing_kraus: p must lie in [0, 1)");
  const ComplexMatrix pauli_i = ComplexMatrix::identity(2);
  const ComplexMatrix pauli_x{{0, 1}, {1, 0}};
  const ComplexMatrix pauli_y{{0, Complex(0, -1)}, {Complex(0, 1), 0}};
  const ComplexMatrix pauli_z{{1, 0}, {0, -1}};
  const ComplexMatrix* paulis[4] = {&pauli_i, &pauli_x, &pauli_y, &pauli_z};

  const std::size_t count = std::size_t{1} << (2 * num_qubits);
  const double uniform_weight = p / double(count);
  std::vector<ComplexMatrix> ops;
  ops.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    ComplexMatrix k = ComplexMatrix::identity(1);
    for (int q = 0; q < num_qubits; ++q)
      k = tensor(*paulis[(code >> (2 * q)) & 3], k);
    const double weight =
        code == 0 ? 1.0 - p + uniform_weight : uniform_weight;
    ops.push_back(Complex(std::sqrt(weight)) * k);
  }
  return ops;
}

std::vector<ComplexMatrix> amplitude_damping_kraus(double gamma) {
  if (gamma < 0 || gamma > 1)
    throw InvalidParameter("amplitude_damping_kraus: gamma must lie in [0, 1]");
  ComplexMatrix k0{{1, 0}, {0, std::sqrt(1.0 - gamma)}};
  ComplexMatrix k1{{0, std::sqrt(gamma)}, {0, 0}};
  return {k0, k1};
}

std::vector<ComplexMatrix> dephasing_kraus(double p_z) {
  if (p_z < 0 || p_z > 0.5)
    throw InvalidParameter("dephasing_kraus: p_z must lie in [0, 1/2]");
  ComplexMatrix k0 = Complex(std::sqrt(1.0 - p_z)) * ComplexMatrix::identity(2);
  ComplexMatrix k1{{std::sqrt(p_z), 0}, {0, -std::sqrt(p_z)}};
  return {k0, k1};
}

RelaxationStep relaxation_step(const NoiseModel& m, double duration_us) {
  RelaxationStep step;
  if (duration_us <= 0) return step;
  if (std::isfinite(m.t1_us))
    step.gamma = 1.0 - std::exp(-duration_us / m.t1_us);
  // 1/T2 = 1/(2 T1) + 1/T_phi; the pure-dephasing remainder drives the
  // phase-flip probability (1 - e^{-dt/T_phi}) / 2.
  double rate_phi = 0.0;
  if (std::isfinite(m.t2_us)) rate_phi += 1.0 / m.t2_us;
  if (std::isfinite(m.t1_us)) rate_phi -= 1.0 / (2.0 * m.t1_us);
  if (rate_phi > 0)
    step.p_z = (1.0 - std::exp(-duration_us * rate_phi)) / 2.0;
  return step;
}

DensityMatrix run_noisy(const Circuit& c, const NoiseModel& m) {
  m.validate();
  if (c.num_qubits() > 8)
    throw TooLarge("run_noisy: limited to 8 qubits");

  DensityMatrix rho(c.num_qubits());
  for (std::size_t i = 0; i < c.ops().size(); ++i) {
    const CircuitOp& op = c.ops()[i];
    if (const auto* gop = std::get_if<GateOp>(&op)) {
      rho.apply_gate(gop->gate, gop->targets);

      std::vector<int> involved = gop->targets;
      involved.insert(involved.end(), gop->gate.controls.begin(),
                      gop->gate.controls.end());
      std::sort(involved.begin(), involved.end());

      if (involved.size() >= 2 && m.p_2q > 0)
        rho.apply_kraus(depolarizing_kraus(m.p_2q, int(involved.size())),
                        involved);

      const double duration =
          involved.size() >= 2 ? m.gate_time_2q_us : m.gate_time_1q_us;
      const RelaxationStep step = relaxation_step(m, duration);
      if (step.gamma > 0)
        for (int q : involved)
          rho.apply_kraus(amplitude_damping_kraus(step.gamma), {q});
      if (step.p_z > 0)
        for (int q : involved)
          rho.apply_kraus(dephasing_kraus(step.p_z), {q});
    } else if (std::holds_alternative<MeasureOp>(op)) {
      const auto& mop = std::get<MeasureOp>(op);
      bool used_later = false;
      for (std::size_t j = i + 1; j < c.ops().size() && !used_later; ++j) {
        if (const auto* later = std::get_if<GateOp>(&c.ops()[j])) {
          used_later =
              std::find(later->targets.begin(), later->targets.end(),
                        mop.qubit) != later->targets.end() ||
              std::find(later->gate.controls.begin(),
                        later->gate.controls.end(),
                        mop.qubit) != later->gate.controls.end();
        }
      }
      if (used_later) rho.dephase_qubit(mop.qubit);
    }
  }
  return rho;
}

std::vector<double> apply_readout_error(const std::vector<double>& probs,
                                        const NoiseModel& m,
                                        const std::vector<int>& measured) {
  std::vector<double> out = probs;
  for (std::size_t j = 0; j < measured.size(); ++j) {
    const ReadoutConfusion conf = m.confusion_for(measured[j]);
    const std::size_t mask = std::size_t{1} << j;
    for (std::size_t key = 0; key < out.size(); ++key) {
      if (key & mask) continue;
      const double p0 = out[key];
      const double p1 = out[key | mask];
      out[key] = conf[0][0] * p0 + conf[1][0] * p1;
      out[key | mask] = conf[0][1] * p0 + conf[1][1] * p1;
    }
  }
  return out;
}

const char* sweep_mode_name(SweepMode mode) {
  return mode == SweepMode::TwoQubitOnly ? "2q_only" : "full";
}

SweepResult noise_sweep(const HHLProblem& p, const NoiseModel& base,
                        const std::vector<double>& grid,
                        const std::vector<SweepMode>& modes,
                        std::optional<SweepSampling> sampling) {
  base.validate();
  for (double g : grid)
    if (g < 0 || g >= 1)
      throw InvalidParameter("noise_sweep: grid values must lie in [0, 1)");
  if (p.n_b_qubits() != 1)
    throw InvalidParameter(
        "noise_sweep: the (b, ancilla) study needs a single-qubit b register");

  const Circuit circuit = build_hhl_circuit(p);
  const std::vector<int> measured = p.measured_qubit_indices();

  SweepResult result;
  {
    const IdealRun ideal = run_ideal(circuit);
    std::vector<double> probs(4, 0.0);
    for (std::size_t i = 0; i < ideal.state.dim(); ++i) {
      std::size_t key = 0;
      for (std::size_t j = 0; j < measured.size(); ++j)
        if (i & (std::size_t{1} << measured[j])) key |= std::size_t{1} << j;
      probs[key] += std::norm(ideal.state.amp(i));
    }
    result.ideal_p00 = probs[0];
    result.ideal_p10 = probs[1];  // key bit 0 is the b qubit
    result.ideal_p01 = probs[2];
    result.ideal_p11 = probs[3];
  }

  std::size_t row_index = 0;
  for (double g : grid) {
    for (SweepMode mode : modes) {
      NoiseModel model = base;
      model.p_2q = g;
      if (mode == SweepMode::TwoQubitOnly) {
        model.t1_us = std::numeric_limits<double>::infinity();
        model.t2_us = std::numeric_limits<double>::infinity();
        model.readout.clear();
      }

      const DensityMatrix rho = run_noisy(circuit, model);
      std::vector<double> probs = rho.measured_probabilities(measured);
      if (mode == SweepMode::Full)
        probs = apply_readout_error(probs, model, measured);

      if (sampling) {
        Xoshiro256StarStar rng(sampling->seed + row_index);
        std::vector<std::uint64_t> counts(probs.size(), 0);
        std::vector<double> cdf(probs.size());
        double acc = 0;
        for (std::size_t k = 0; k < probs.size(); ++k) {
          acc += probs[k];
          cdf[k] = acc;
        }
        cdf.back() = std::max(cdf.back(), 1.0);
        for (std::uint64_t s = 0; s < sampling->shots; ++s) {
          const double u = rng.uniform();
          std::size_t key =
              std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
          ++counts[std::min(key, probs.size() - 1)];
        }
        for (std::size_t k = 0; k < probs.size(); ++k)
          probs[k] = double(counts[k]) / double(sampling->shots);
      }

      SweepRow row;
      row.p_2q = g;
      row.mode = mode;
      row.p00 = probs[0];
      row.p10 = probs[1];
      row.p01 = probs[2];
      row.p11 = probs[3];
      result.rows.push_back(row);
      ++row_index;
    }
  }
  return result;
}

}  // namespace hhllab
