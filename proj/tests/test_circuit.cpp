#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hhllab/circuit.hpp"
#include "hhllab/qft_qpe.hpp"
#include "test_oracles.hpp"

using namespace hhllab;
using oracles::kPi;

namespace {

Circuit random_small_circuit(oracles::Random& rng, int qubits, int gates) {
  Circuit c(qubits);
  for (int g = 0; g < gates; ++g) {
    const int target = int(rng.integer(qubits));
    switch (rng.integer(4)) {
      case 0:
        c.add_gate(Gate::h(), {target});
        break;
      case 1:
        c.add_gate(Gate::ry(rng.uniform(-kPi, kPi)), {target});
        break;
      case 2:
        c.add_gate(Gate::phase(rng.uniform(-kPi, kPi)), {target});
        break;
      default: {
        int control = int(rng.integer(qubits));
        if (control == target) control = (control + 1) % qubits;
        c.add_gate(Gate::u(rng.uniform(0, kPi), rng.uniform(-kPi, kPi),
                           rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi))
                       .controlled({control}),
                   {target});
        break;
      }
    }
  }
  return c;
}

}  // namespace

TEST_CASE("hadamard gate matrix") {
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix h = gate_matrix(Gate::h());
  CHECK(max_abs_diff(h, ComplexMatrix{{r, r}, {r, -r}}) < 1e-15);
}

TEST_CASE("CNOT matrix and truth table") {
  // Control on qubit 1 (high bit), target on qubit 0.
  const ComplexMatrix cnot = gate_matrix(Gate::x().controlled({1}));
  const ComplexMatrix expected{
      {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  CHECK(max_abs_diff(cnot, expected) < 1e-15);

  // Truth table rows (control, target) -> target out.
  const int table[4][3] = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  for (const auto& row : table) {
    const std::size_t in = std::size_t(row[1]) | (std::size_t(row[0]) << 1);
    const std::size_t out = std::size_t(row[2]) | (std::size_t(row[0]) << 1);
    CHECK(std::abs(cnot(out, in) - Complex(1)) < 1e-15);
  }
}

TEST_CASE("U gate parametrization at the worked-example angles") {
  const ComplexMatrix u =
      gate_base_matrix(Gate::u(kPi / 2, -kPi / 2, kPi / 2, 3 * kPi / 4));
  const ComplexMatrix expected{
      {Complex(-0.5, 0.5), Complex(0.5, 0.5)},
      {Complex(0.5, 0.5), Complex(-0.5, 0.5)}};
  CHECK(max_abs_diff(u, expected) < 1e-12);
}

TEST_CASE("controlled phase gate matrix") {
  const double theta = 0.7;
  const ComplexMatrix cp = gate_matrix(Gate::phase(theta).controlled({1}));
  ComplexMatrix expected = ComplexMatrix::identity(4);
  expected(3, 3) = std::exp(Complex(0, theta));
  CHECK(max_abs_diff(cp, expected) < 1e-15);
}

TEST_CASE("every constructible gate matrix is unitary") {
  oracles::Random rng(101);
  std::vector<Gate> gates = {Gate::x(), Gate::h(), Gate::swap(),
                             Gate::phase(rng.uniform(-kPi, kPi)),
                             Gate::ry(rng.uniform(-kPi, kPi))};
  for (int rep = 0; rep < 4; ++rep) {
    gates.push_back(Gate::u(rng.uniform(0, 2 * kPi), rng.uniform(-kPi, kPi),
                            rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)));
    gates.push_back(Gate::from_matrix(oracles::random_unitary(4, rng)));
  }
  for (const Gate& g : gates) {
    CHECK(gate_matrix(g).is_unitary(1e-12));
    CHECK(gate_matrix(g.controlled({g.arity()})).is_unitary(1e-12));
  }
}

TEST_CASE("FromMatrix rejects non-unitary input") {
  CHECK_THROWS_AS(Gate::from_matrix(ComplexMatrix{{1.0, 0.0}, {0.0, 2.0}}),
                  NotUnitary);
  CHECK_THROWS_AS(Gate::from_matrix(ComplexMatrix(2, 3)), NotUnitary);
}

TEST_CASE("append_gate keeps the original circuit unchanged") {
  Circuit c(4);
  c.set_register("b", {3});
  const Circuit extended = append_gate(c, Gate::x(), {3});
  CHECK(c.ops().empty());
  REQUIRE(extended.ops().size() == 1);
  CHECK(extended.gate_count() == 1);
}

TEST_CASE("append_gate validation") {
  Circuit empty(0);
  CHECK_THROWS_AS(empty.add_gate(Gate::x(), {0}), IndexOutOfRange);

  Circuit c(4);
  CHECK_THROWS_AS(c.add_gate(Gate::x(), {4}), IndexOutOfRange);
  CHECK_THROWS_AS(c.add_gate(Gate::x(), {0, 1}), ArityMismatch);
  CHECK_THROWS_AS(c.add_gate(Gate::swap(), {2, 2}), DuplicateTarget);
  CHECK_THROWS_AS(c.add_gate(Gate::ry(kPi).controlled({0}), {0}),
                  DuplicateTarget);

  // Controlled rotation onto the ancilla, as in the eigeninversion stage.
  c.add_gate(Gate::ry(kPi).controlled({1}), {0});
  const auto& op = std::get<GateOp>(c.ops().front());
  CHECK(op.gate.kind == GateKind::RY);
  CHECK(op.gate.controls == std::vector<int>{1});
  CHECK(op.targets == std::vector<int>{0});
}

TEST_CASE("invert_circuit of the QFT equals the explicit inverse builder") {
  for (int n = 1; n <= 4; ++n) {
    const ComplexMatrix inverted = circuit_unitary(invert_circuit(build_qft(n)));
    const ComplexMatrix direct = circuit_unitary(build_iqft(n));
    CHECK(max_abs_diff(inverted, direct) < 1e-12);
  }
}

TEST_CASE("invert_circuit trivia") {
  const Circuit empty(3);
  CHECK(invert_circuit(empty).ops().empty());

  Circuit h(1);
  h.add_gate(Gate::h(), {0});
  const Circuit h_inv = invert_circuit(h);
  CHECK(max_abs_diff(circuit_unitary(h_inv), circuit_unitary(h)) < 1e-15);

  Circuit measured(1, 1);
  measured.add_measure(0, 0);
  CHECK_THROWS_AS(invert_circuit(measured), ContainsMeasurement);
}

TEST_CASE("invert_circuit is an involution and a true inverse") {
  oracles::Random rng(57);
  for (int rep = 0; rep < 4; ++rep) {
    const Circuit c = random_small_circuit(rng, 3, 10);
    const Circuit inv = invert_circuit(c);

    // Involution at the gate-matrix level.
    const Circuit twice = invert_circuit(inv);
    REQUIRE(twice.ops().size() == c.ops().size());
    for (std::size_t i = 0; i < c.ops().size(); ++i) {
      const auto& a = std::get<GateOp>(c.ops()[i]);
      const auto& b = std::get<GateOp>(twice.ops()[i]);
      CHECK(max_abs_diff(gate_matrix(a.gate), gate_matrix(b.gate)) < 1e-12);
      CHECK(a.targets == b.targets);
    }

    // Composing с then invert(c) acts as the identity.
    Circuit round_trip = c;
    std::vector<int> identity_map{0, 1, 2};
    round_trip.append(inv, identity_map);
    CHECK(max_abs_diff(circuit_unitary(round_trip),
                       ComplexMatrix::identity(8)) < 1e-10);
  }
}

TEST_CASE("circuit_unitary basics") {
  Circuit h(1);
  h.add_gate(Gate::h(), {0});
  CHECK(max_abs_diff(circuit_unitary(h), gate_matrix(Gate::h())) < 1e-15);

  Circuit swap(2);
  swap.add_gate(Gate::swap(), {0, 1});
  ComplexMatrix expected = ComplexMatrix::identity(4);
  expected(1, 1) = expected(2, 2) = 0;
  expected(1, 2) = expected(2, 1) = 1;
  CHECK(max_abs_diff(circuit_unitary(swap), expected) < 1e-15);
}

TEST_CASE("circuit_unitary of QFT(2) equals the DFT matrix") {
  CHECK(max_abs_diff(circuit_unitary(build_qft(2)), oracles::dft_matrix(2)) <
        1e-12);
}

TEST_CASE("circuit_unitary composition order") {
  oracles::Random rng(71);
  const Circuit c1 = random_small_circuit(rng, 3, 6);
  const Circuit c2 = random_small_circuit(rng, 3, 6);
  Circuit combined = c1;
  combined.append(c2, {0, 1, 2});
  CHECK(max_abs_diff(circuit_unitary(combined),
                     circuit_unitary(c2) * circuit_unitary(c1)) < 1e-11);
}

TEST_CASE("circuit_unitary limits") {
  Circuit measured(1, 1);
  measured.add_measure(0, 0);
  CHECK_THROWS_AS(circuit_unitary(measured), ContainsMeasurement);
  CHECK_THROWS_AS(circuit_unitary(Circuit(11)), TooLarge);
}
