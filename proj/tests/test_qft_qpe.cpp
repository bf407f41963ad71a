#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hhllab/qft_qpe.hpp"
#include "hhllab/statevector.hpp"
#include "test_oracles.hpp"

using namespace hhllab;
using oracles::kPi;

namespace {

// QPE circuit on a phase gate with eigenphase theta, target prepared in |1>.
QPESpec phase_gate_spec(double theta, int n_clock) {
  QPESpec spec;
  spec.n_clock = n_clock;
  spec.controlled_powers = [theta](int j) {
    ComplexMatrix u = ComplexMatrix::identity(2);
    u(1, 1) = std::exp(Complex(0, 2.0 * kPi * theta * double(1 << j)));
    return u;
  };
  for (int j = 0; j < n_clock; ++j) spec.clock_qubits.push_back(j);
  spec.target_qubits = {n_clock};
  spec.num_qubits = n_clock + 1;
  return spec;
}

std::vector<double> clock_distribution(const StateVector& s, int n_clock) {
  std::vector<double> probs(std::size_t{1} << n_clock, 0.0);
  for (std::size_t i = 0; i < s.dim(); ++i)
    probs[i & ((std::size_t{1} << n_clock) - 1)] += std::norm(s.amp(i));
  return probs;
}

}  // namespace

TEST_CASE("QFT on one qubit is the Hadamard") {
  CHECK(max_abs_diff(circuit_unitary(build_qft(1)), gate_matrix(Gate::h())) <
        1e-15);
  CHECK(max_abs_diff(circuit_unitary(build_iqft(1)), gate_matrix(Gate::h())) <
        1e-15);
}

TEST_CASE("QFT equals the DFT matrix for n = 1..5") {
  for (int n = 1; n <= 5; ++n) {
    const ComplexMatrix f = circuit_unitary(build_qft(n));
    CHECK(max_abs_diff(f, oracles::dft_matrix(n)) < 1e-12);
  }
}

TEST_CASE("inverse QFT is the adjoint and the inverse") {
  for (int n = 1; n <= 5; ++n) {
    const ComplexMatrix f = circuit_unitary(build_qft(n));
    const ComplexMatrix fi = circuit_unitary(build_iqft(n));
    CHECK(max_abs_diff(fi, f.adjoint()) < 1e-12);
    CHECK(max_abs_diff(f * fi, ComplexMatrix::identity(f.rows())) < 1e-11);
    CHECK(max_abs_diff(fi * f, ComplexMatrix::identity(f.rows())) < 1e-11);
  }
}

TEST_CASE("inverse QFT structure: swaps first, then the mirrored cascade") {
  const Circuit iqft = build_iqft(3);
  REQUIRE(iqft.gate_count() == 7);
  const auto& first = std::get<GateOp>(iqft.ops().front());
  CHECK(first.gate.kind == GateKind::Swap);
  const auto& last = std::get<GateOp>(iqft.ops().back());
  CHECK(last.gate.kind == GateKind::H);
}

TEST_CASE("two-qubit inverse QFT equals the swap-last gate ordering") {
  // Common alternative ordering: H on the clock MSB, CP(-pi/2), H on the
  // clock LSB, SWAP at the end. Our builder places the SWAP first; moving
  // the SWAP block across the cascade relabels it, so the unitaries agree.
  Circuit swap_last(2);
  swap_last.add_gate(Gate::h(), {1});
  swap_last.add_gate(Gate::phase(-kPi / 2).controlled({0}), {1});
  swap_last.add_gate(Gate::h(), {0});
  swap_last.add_gate(Gate::swap(), {0, 1});
  CHECK(max_abs_diff(circuit_unitary(build_iqft(2)),
                     circuit_unitary(swap_last)) < 1e-12);
}

TEST_CASE("two-qubit QFT equals the swap-first gate ordering") {
  // Mirror case: SWAP, H on LSB, CP(+pi/2), H on MSB. Our builder ends
  // with the SWAP instead; same unitary.
  Circuit swap_first(2);
  swap_first.add_gate(Gate::swap(), {0, 1});
  swap_first.add_gate(Gate::h(), {0});
  swap_first.add_gate(Gate::phase(kPi / 2).controlled({0}), {1});
  swap_first.add_gate(Gate::h(), {1});
  CHECK(max_abs_diff(circuit_unitary(build_qft(2)),
                     circuit_unitary(swap_first)) < 1e-12);
}

TEST_CASE("QPE reads an exactly representable phase with certainty") {
  // theta = 3/8 on three clock qubits.
  const QPESpec spec = phase_gate_spec(3.0 / 8.0, 3);
  Circuit c(spec.num_qubits);
  c.add_gate(Gate::x(), {spec.target_qubits[0]});
  c.append(build_qpe(spec), {0, 1, 2, 3});
  const IdealRun run = run_ideal(c);
  const std::vector<double> probs = clock_distribution(run.state, 3);
  CHECK(probs[3] >= 1.0 - 1e-9);
}

TEST_CASE("QPE of the identity returns clock zero") {
  const QPESpec spec = phase_gate_spec(0.0, 3);
  Circuit c(spec.num_qubits);
  c.add_gate(Gate::x(), {spec.target_qubits[0]});
  c.append(build_qpe(spec), {0, 1, 2, 3});
  const IdealRun run = run_ideal(c);
  CHECK(clock_distribution(run.state, 3)[0] >= 1.0 - 1e-9);
}

TEST_CASE("QPE exactness for every representable phase, n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
      const QPESpec spec =
          phase_gate_spec(double(k) / double(std::size_t{1} << n), n);
      Circuit c(spec.num_qubits);
      c.add_gate(Gate::x(), {spec.target_qubits[0]});
      std::vector<int> map(spec.num_qubits);
      for (int q = 0; q < spec.num_qubits; ++q) map[q] = q;
      c.append(build_qpe(spec), map);
      const IdealRun run = run_ideal(c);
      CHECK(clock_distribution(run.state, n)[k] >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("QPE on a non-representable phase peaks at the nearest value") {
  const double theta = 0.3;  // between 4/16 and 5/16, nearer 5/16
  const QPESpec spec = phase_gate_spec(theta, 4);
  Circuit c(spec.num_qubits);
  c.add_gate(Gate::x(), {spec.target_qubits[0]});
  std::vector<int> map{0, 1, 2, 3, 4};
  c.append(build_qpe(spec), map);
  const IdealRun run = run_ideal(c);
  const std::vector<double> probs = clock_distribution(run.state, 4);

  std::size_t argmax = 0;
  for (std::size_t k = 0; k < probs.size(); ++k)
    if (probs[k] > probs[argmax]) argmax = k;
  CHECK(argmax == 5);
  CHECK(probs[5] >= 4.0 / (kPi * kPi));
}

TEST_CASE("QPE spec power-consistency check") {
  QPESpec spec = phase_gate_spec(0.25, 2);
  spec.controlled_powers = [](int j) {
    ComplexMatrix u = ComplexMatrix::identity(2);
    // Wrong power law: every entry is the base unitary.
    u(1, 1) = std::exp(Complex(0, 2.0 * kPi * 0.25));
    (void)j;
    return u;
  };
  CHECK_THROWS_AS(build_qpe(spec), SpecInconsistent);
  CHECK_THROWS_AS(build_inverse_qpe(spec), SpecInconsistent);
}

TEST_CASE("inverse QPE undoes QPE on random states") {
  oracles::Random rng(401);
  const ComplexMatrix u = oracles::random_unitary(2, rng);
  QPESpec spec;
  spec.n_clock = 2;
  spec.controlled_powers = [u](int j) {
    ComplexMatrix power = u;
    for (int rep = 0; rep < j; ++rep) power = power * power;
    return power;
  };
  spec.clock_qubits = {0, 1};
  spec.target_qubits = {2};
  spec.num_qubits = 3;

  for (int rep = 0; rep < 5; ++rep) {
    const ComplexVector v = oracles::random_state_vector(8, rng);
    StateVector initial = StateVector::from_amplitudes(v.entries());
    StateVector evolved = initial;
    const Circuit qpe = build_qpe(spec);
    const Circuit inverse = build_inverse_qpe(spec);
    for (const CircuitOp& op : qpe.ops())
      if (const auto* gop = std::get_if<GateOp>(&op))
        evolved.apply(gop->gate, gop->targets);
    for (const CircuitOp& op : inverse.ops())
      if (const auto* gop = std::get_if<GateOp>(&op))
        evolved.apply(gop->gate, gop->targets);
    CHECK(state_fidelity(evolved, initial) >= 1.0 - 1e-9);
  }
}

TEST_CASE("inverse QPE with the identity supplier is QFT then Hadamards") {
  QPESpec spec = phase_gate_spec(0.0, 2);
  const Circuit inverse = build_inverse_qpe(spec);

  Circuit literal(3);
  literal.append(build_qft(2), {0, 1});
  // Controlled identities contribute nothing.
  literal.add_gate(Gate::h(), {0});
  literal.add_gate(Gate::h(), {1});
  CHECK(max_abs_diff(circuit_unitary(inverse), circuit_unitary(literal)) <
        1e-12);
}

TEST_CASE("inverse QPE applies QFT, descending inverse powers, Hadamards") {
  // QFT block first (SWAP + cascade), then the inverse controlled powers
  // in descending clock order, then the closing Hadamards.
  oracles::Random rng(403);
  const ComplexMatrix u = oracles::random_unitary(2, rng);
  QPESpec spec;
  spec.n_clock = 2;
  spec.controlled_powers = [u](int j) { return j == 0 ? u : u * u; };
  spec.clock_qubits = {0, 1};
  spec.target_qubits = {2};
  spec.num_qubits = 3;

  const Circuit inverse = build_inverse_qpe(spec);
  std::vector<const GateOp*> gates;
  for (const CircuitOp& op : inverse.ops())
    if (const auto* gop = std::get_if<GateOp>(&op)) gates.push_back(gop);
  REQUIRE(gates.size() == 4 + 2 + 2);  // qft(2) + two CUs + two Hadamards

  CHECK(gates[0]->gate.kind == GateKind::H);  // qft cascade
  CHECK(gates[1]->gate.kind == GateKind::Phase);
  CHECK(gates[2]->gate.kind == GateKind::H);
  CHECK(gates[3]->gate.kind == GateKind::Swap);
  CHECK(gates[4]->gate.kind == GateKind::FromMatrix);  // U^-2 before U^-1
  CHECK(gates[4]->gate.controls == std::vector<int>{1});
  CHECK(max_abs_diff(gates[4]->gate.matrix, (u * u).adjoint()) < 1e-12);
  CHECK(gates[5]->gate.controls == std::vector<int>{0});
  CHECK(max_abs_diff(gates[5]->gate.matrix, u.adjoint()) < 1e-12);
  CHECK(gates[6]->gate.kind == GateKind::H);
  CHECK(gates[7]->gate.kind == GateKind::H);
}

TEST_CASE("eigenvalue to clock encoding") {
  CHECK(eigenvalue_to_clock(1.0, kPi / 2, 2) == doctest::Approx(1.0));
  CHECK(eigenvalue_to_clock(2.0, kPi / 2, 2) == doctest::Approx(2.0));
  CHECK(eigenvalue_to_clock(0.0, kPi / 2, 2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(eigenvalue_to_clock(1.0, 0.0, 2), InvalidParameter);
}

TEST_CASE("QFT and inverse QFT compose to the identity for n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    Circuit both = build_qft(n);
    std::vector<int> map(n);
    for (int q = 0; q < n; ++q) map[q] = q;
    both.append(build_iqft(n), map);
    CHECK(max_abs_diff(circuit_unitary(both),
                       ComplexMatrix::identity(std::size_t{1} << n)) < 1e-11);
  }
}
