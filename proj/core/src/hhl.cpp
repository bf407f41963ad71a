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

#include "hhllab/hhl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hhllab/rng.hpp"

namespace hhllab {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

// Largest g (within tol) such that a/g and b/g are both integers.
double real_gcd(double a, double b, double tol) {
  a = std::abs(a);
  b = std::abs(b);
  if (a < b) std::swap(a, b);
  while (b > tol) {
    double r = std::fmod(a, b);
    if (r > b - tol) r = 0;  // landed just below a multiple
    a = b;
    b = r;
  }
  return a;
}

struct ClockSelection {
  int n_clock = 0;
  double t = 0.0;
  bool exact = false;
};

// Exact mode: a time t = 2*pi / (2^n * g) with g the rational gcd of the
// spectrum makes every clock eigenvalue the integer lambda_j / g. Search
// the smallest clock register (n <= 8) that holds the largest of them.
ClockSelection select_clock(const std::vector<double>& eigenvalues,
                            std::optional<int> n_override) {
  const int n_max = 8;
  double abs_max = 0;
  bool all_positive = true;
  for (double v : eigenvalues) {
    abs_max = std::max(abs_max, std::abs(v));
    all_positive = all_positive && v > 0;
  }

  if (all_positive) {
    const double tol = 1e-9 * abs_max;
    double g = eigenvalues.front();
    for (double v : eigenvalues) g = real_gcd(g, v, tol);
    if (g > tol) {
      bool integral = true;
      double ratio_max = 0;
      for (double v : eigenvalues) {
        const double ratio = v / g;
        integral = integral && std::abs(ratio - std::round(ratio)) <= 1e-6 &&
                   std::round(ratio) >= 1;
        ratio_max = std::max(ratio_max, std::round(ratio));
      }
      if (integral) {
        for (int n = 1; n <= n_max; ++n) {
          if (n_override && *n_override != n) continue;
          if (ratio_max <= double((std::size_t{1} << n) - 1))
            return {n, 2.0 * kPi / (double(std::size_t{1} << n) * g), true};
        }
      }
    }
  }

  // Approximate fallback: scale the largest |eigenvalue| to 2^n - 1.
  const int n = n_override.value_or(4);
  const double t =
      2.0 * kPi * double((std::size_t{1} << n) - 1) /
      (double(std::size_t{1} << n) * abs_max);
  return {n, t, false};
}

bool clock_values_exact(const std::vector<double>& clock_values, int n_clock) {
  const double limit = double(std::size_t{1} << n_clock);
  for (double lt : clock_values) {
    const double rounded = std::round(lt);
    if (std::abs(lt - rounded) > 1e-9) return false;
    if (rounded < 1 || rounded >= limit) return false;
  }
  return true;
}

}  // namespace

int HHLProblem::n_b_qubits() const { return log2_exact(b.dim()); }

std::vector<int> HHLProblem::clock_qubit_indices() const {
  std::vector<int> idx(n_clock);
  for (int j = 0; j < n_clock; ++j) idx[j] = 1 + j;
  return idx;
}

std::vector<int> HHLProblem::b_qubit_indices() const {
  std::vector<int> idx(n_b_qubits());
  for (int j = 0; j < n_b_qubits(); ++j) idx[j] = 1 + n_clock + j;
  return idx;
}

std::vector<int> HHLProblem::measured_qubit_indices() const {
  std::vector<int> idx;
  const std::vector<int> b_qubits = b_qubit_indices();
  for (auto it = b_qubits.rbegin(); it != b_qubits.rend(); ++it)
    idx.push_back(*it);
  idx.push_back(0);  // ancilla last, so strings read "b...b a"
  return idx;
}

HHLProblem preprocess(const ComplexMatrix& a_raw, const ComplexVector& b_raw,
                      std::optional<int> n_clock, std::optional<double> t,
                      std::optional<double> c) {
  if (!a_raw.is_square())
    throw NonSquareInput("preprocess: A must be square");
  if (a_raw.rows() != b_raw.dim())
    throw DimensionMismatch("preprocess: A and b dimensions differ");
  if (b_raw.norm() <= 0) throw ZeroRHS("preprocess: right-hand side is zero");

  HHLProblem p;
  p.a_original = a_raw;
  p.b_original = b_raw;
  p.original_dim = a_raw.rows();
  p.embedded = !a_raw.is_hermitian(1e-12);

  if (p.embedded) {
    p.a = hermitian_embedding(a_raw);
    ComplexVector padded(2 * b_raw.dim());
    for (std::size_t i = 0; i < b_raw.dim(); ++i) padded[i] = b_raw[i];
    p.b_norm = padded.norm();
    p.b = padded.normalized();
  } else {
    p.a = a_raw;
    p.b_norm = b_raw.norm();
    p.b = b_raw.normalized();
  }
  if (!is_power_of_two(p.a.rows()))
    throw NotPowerOfTwo("preprocess: system dimension must be a power of two");

  p.eig = hermitian_eigendecompose(p.a);
  double abs_max = 0;
  double abs_min = std::abs(p.eig.values.front());
  for (double v : p.eig.values) {
    abs_max = std::max(abs_max, std::abs(v));
    abs_min = std::min(abs_min, std::abs(v));
  }
  if (abs_min <= 1e-12 * abs_max)
    throw SingularMatrix("preprocess: matrix is numerically singular");

  if (t) {
    if (*t <= 0) throw InvalidParameter("preprocess: t must be positive");
    p.n_clock = n_clock.value_or(select_clock(p.eig.values, {}).n_clock);
    p.t = *t;
  } else {
    const ClockSelection sel = select_clock(p.eig.values, n_clock);
    p.n_clock = sel.n_clock;
    p.t = sel.t;
  }

  p.clock_eigenvalues.reserve(p.eig.values.size());
  for (double v : p.eig.values)
    p.clock_eigenvalues.push_back(eigenvalue_to_clock(v, p.t, p.n_clock));
  p.exact_mode = clock_values_exact(p.clock_eigenvalues, p.n_clock);

  double min_abs_clock = std::abs(p.clock_eigenvalues.front());
  for (double lt : p.clock_eigenvalues)
    min_abs_clock = std::min(min_abs_clock, std::abs(lt));
  if (c) {
    if (*c <= 0 || *c > min_abs_clock + 1e-9)
      throw InvalidC("preprocess: C must satisfy 0 < C <= min |lambda~|");
    p.c = *c;
  } else {
    p.c = p.exact_mode ? std::round(min_abs_clock) : min_abs_clock;
  }
  return p;
}

Circuit prepare_state(const ComplexVector& v) {
  const std::size_t dim = v.dim();
  if (!is_power_of_two(dim))
    throw NotPowerOfTwo("prepare_state: dimension must be a power of two");
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw NotNormalized("prepare_state: vector must have unit norm");
  const int k = log2_exact(dim);
  Circuit c(k);

  // Normal form: a computational basis state needs only X gates.
  std::size_t basis_index = 0;
  int populated = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    if (std::abs(v[i]) > 1e-10) {
      basis_index = i;
      ++populated;
    }
  }
  if (populated == 1) {
    for (int q = 0; q < k; ++q)
      if (basis_index & (std::size_t{1} << q)) c.add_gate(Gate::x(), {q});
    return c;
  }

  std::vector<double> masses(dim);
  for (std::size_t i = 0; i < dim; ++i) masses[i] = std::norm(v[i]);

  // Binary tree of multiplexed RY rotations, most significant qubit first.
  // The rotation for qubit j under prefix m splits the subtree mass between
  // the bit-j = 0 and bit-j = 1 halves.
  for (int j = k - 1; j >= 0; --j) {
    const std::size_t prefixes = std::size_t{1} << (k - 1 - j);
    for (std::size_t m = 0; m < prefixes; ++m) {
      double mass0 = 0, mass1 = 0;
      for (std::size_t x = 0; x < dim; ++x) {
        if ((x >> (j + 1)) != m) continue;
        ((x >> j) & 1 ? mass1 : mass0) += masses[x];
      }
      const double total = mass0 + mass1;
      if (total < 1e-28) continue;
      const double theta = 2.0 * std::atan2(std::sqrt(mass1), std::sqrt(mass0));
      if (std::abs(theta) < 1e-12) continue;

      std::vector<int> controls;
      std::vector<int> flipped;
      for (int q = j + 1; q < k; ++q) {
        controls.push_back(q);
        if (!((m >> (q - j - 1)) & 1)) flipped.push_back(q);
      }
      for (int q : flipped) c.add_gate(Gate::x(), {q});
      c.add_gate(Gate::ry(theta).controlled(controls), {j});
      for (int q : flipped) c.add_gate(Gate::x(), {q});
    }
  }

  // Phase corrections, relative to the first populated basis state so the
  // result matches v up to a global phase only.
  double reference = 0;
  bool have_reference = false;
  for (std::size_t x = 0; x < dim; ++x) {
    if (masses[x] < 1e-28) continue;
    if (!have_reference) {
      reference = std::arg(v[x]);
      have_reference = true;
      continue;
    }
    double phase = std::arg(v[x]) - reference;
    phase = std::remainder(phase, 2.0 * kPi);
    if (std::abs(phase) < 1e-12) continue;

    int target = -1;
    for (int q = 0; q < k; ++q)
      if (x & (std::size_t{1} << q)) {
        target = q;
        break;
      }
    // x = 0 is always the reference when populated, so target exists here.
    std::vector<int> controls;
    std::vector<int> flipped;
    for (int q = 0; q < k; ++q) {
      if (q == target) continue;
      controls.push_back(q);
      if (!(x & (std::size_t{1} << q))) flipped.push_back(q);
    }
    for (int q : flipped) c.add_gate(Gate::x(), {q});
    c.add_gate(Gate::phase(phase).controlled(controls), {target});
    for (int q : flipped) c.add_gate(Gate::x(), {q});
  }
  return c;
}

Circuit build_eigeninversion(int n_clock, double c) {
  if (c <= 0) throw InvalidC("build_eigeninversion: C must be positive");
  if (n_clock < 1)
    throw InvalidParameter("build_eigeninversion: n_clock must be >= 1");
  Circuit circ(1 + n_clock);
  const std::size_t values = std::size_t{1} << n_clock;
  for (std::size_t m = 1; m < values; ++m) {
    const double ratio = c / double(m);
    if (ratio > 1.0 + 1e-12) continue;  // arcsin undefined; branch untouched
    const double theta = 2.0 * std::asin(std::min(ratio, 1.0));
    std::vector<int> controls;
    std::vector<int> flipped;
    for (int j = 0; j < n_clock; ++j) {
      controls.push_back(1 + j);
      if (!((m >> j) & 1)) flipped.push_back(1 + j);
    }
    for (int q : flipped) circ.add_gate(Gate::x(), {q});
    circ.add_gate(Gate::ry(theta).controlled(controls), {0});
    for (int q : flipped) circ.add_gate(Gate::x(), {q});
  }
  return circ;
}

Circuit build_eigeninversion_onehot(int n_clock, double c) {
  if (c <= 0) throw InvalidC("build_eigeninversion_onehot: C must be positive");
  Circuit circ(1 + n_clock);
  for (int j = 0; j < n_clock; ++j) {
    const double m = double(std::size_t{1} << j);
    if (c / m > 1.0 + 1e-12) continue;
    const double theta = 2.0 * std::asin(std::min(c / m, 1.0));
    circ.add_gate(Gate::ry(theta).controlled({1 + j}), {0});
  }
  return circ;
}

Circuit build_hhl_circuit(const HHLProblem& p) {
  const int n_b = p.n_b_qubits();
  Circuit c(p.num_qubits(), n_b + 1);
  c.set_register("ancilla", {0});
  c.set_register("clock", p.clock_qubit_indices());
  c.set_register("b", p.b_qubit_indices());

  const std::vector<int> clock = p.clock_qubit_indices();
  const std::vector<int> b_qubits = p.b_qubit_indices();

  c.append(prepare_state(p.b), b_qubits);
  c.add_barrier("phi1");

  for (int q : clock) c.add_gate(Gate::h(), {q});
  c.add_barrier("phi2");

  for (int j = 0; j < p.n_clock; ++j) {
    const ComplexMatrix power =
        matrix_power_via_eigen(p.eig, p.t, std::int64_t{1} << j);
    c.add_gate(Gate::from_matrix(power).controlled({clock[j]}), b_qubits);
  }
  c.add_barrier("phi3");

  c.append(build_iqft(p.n_clock), clock);
  c.add_barrier("phi4");

  {
    std::vector<int> inversion_map{0};
    inversion_map.insert(inversion_map.end(), clock.begin(), clock.end());
    c.append(build_eigeninversion(p.n_clock, p.c), inversion_map);
  }
  c.add_barrier("phi5");
  // The ancilla could be measured at this point; deferring it to the end
  // commutes because no later gate touches it, and keeps the state pure.
  c.add_barrier("phi6");

  c.append(build_qft(p.n_clock), clock);
  c.add_barrier("phi7");

  for (int j = p.n_clock - 1; j >= 0; --j) {
    const ComplexMatrix inverse_power =
        matrix_power_via_eigen(p.eig, p.t, -(std::int64_t{1} << j));
    c.add_gate(Gate::from_matrix(inverse_power).controlled({clock[j]}),
               b_qubits);
  }
  c.add_barrier("phi8");

  for (int q : clock) c.add_gate(Gate::h(), {q});
  c.add_barrier("phi9");

  for (int i = 0; i < n_b; ++i) c.add_measure(b_qubits[i], i);
  c.add_measure(0, n_b);
  return c;
}

RunMode RunMode::with_shots(std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidParameter("run mode: shots must be >= 1");
  RunMode m;
  m.kind = Kind::Shots;
  m.shots = shots;
  m.seed = seed;
  return m;
}

RunMode RunMode::noisy(NoiseModel model, std::uint64_t shots,
                       std::uint64_t seed) {
  if (shots < 1) throw InvalidParameter("run mode: shots must be >= 1");
  RunMode m;
  m.kind = Kind::Noisy;
  m.shots = shots;
  m.seed = seed;
  m.model = std::move(model);
  return m;
}

namespace {

// Least-squares scale: s minimizing ||A (s d) - b||.
Complex rescale_factor(const ComplexMatrix& a, const ComplexVector& direction,
                       const ComplexVector& b) {
  const ComplexVector ad = a * direction;
  const Complex denom = inner_product(ad, ad);
  if (std::abs(denom) < 1e-300) return Complex(0);
  return inner_product(ad, b) / denom;
}

// Slice the solution block out of an embedded direction and renormalize.
ComplexVector extract_original_block(const ComplexVector& direction,
                                     std::size_t original_dim) {
  ComplexVector block(original_dim);
  for (std::size_t i = 0; i < original_dim; ++i)
    block[i] = direction[original_dim + i];
  return block.normalized();
}

std::optional<double> ratio_from_histogram(const ShotHistogram& hist) {
  const std::uint64_t c01 = hist.count("01");
  const std::uint64_t c11 = hist.count("11");
  if (c01 == 0) return std::nullopt;
  return double(c11) / double(c01);
}

}  // namespace

HHLResult run_hhl(const HHLProblem& p, const RunMode& mode) {
  const Circuit circuit = build_hhl_circuit(p);
  HHLResult result;
  const int n_b = p.n_b_qubits();
  const std::vector<int> measured = p.measured_qubit_indices();

  if (mode.kind == RunMode::Kind::Statevector) {
    IdealRun run = run_ideal(circuit);
    result.snapshots = std::move(run.snapshots);

    const double success = run.state.probability_of(0, 1);
    if (success < 1e-12)
      throw PostselectionFailed("run_hhl: ancilla=1 probability vanishes");
    result.success_probability = success;

    const Postselection sel = postselect(run.state, 0, 1);
    // Solution amplitudes live in the clock = 0 slice of the ancilla = 1
    // branch (the clock register uncomputes exactly in exact mode).
    ComplexVector direction(std::size_t{1} << n_b);
    for (std::size_t x = 0; x < direction.dim(); ++x) {
      const std::size_t index = 1 | (x << (1 + p.n_clock));
      direction[x] = sel.state.amp(index);
    }
    direction = direction.normalized();

    if (std::abs(direction[0]) > 1e-300) {
      // Statevector ratio of the worked-example readout pair.
      if (n_b == 1)
        result.ratio_11_01 =
            std::norm(direction[1]) / std::norm(direction[0]);
    }

    if (p.embedded) direction = extract_original_block(direction, p.original_dim);
    result.direction = direction;
    const Complex scale =
        rescale_factor(p.a_original, direction, p.b_original);
    result.rescaled_solution = scale * direction;
    return result;
  }

  if (mode.kind == RunMode::Kind::Shots) {
    IdealRun run = run_ideal(circuit);
    result.snapshots = std::move(run.snapshots);
    result.histogram = sample(run.state, measured, mode.shots, mode.seed);

    std::uint64_t anc1 = 0;
    std::vector<std::uint64_t> b_counts(std::size_t{1} << n_b, 0);
    for (const auto& [bits, count] : result.histogram.counts) {
      if (bits.back() != '1') continue;
      anc1 += count;
      std::size_t b_value = 0;  // bits are rendered b MSB first
      for (int i = 0; i < n_b; ++i)
        b_value = (b_value << 1) | (bits[i] == '1' ? 1 : 0);
      b_counts[b_value] += count;
    }
    result.success_probability = double(anc1) / double(mode.shots);
    if (anc1 > 0) {
      ComplexVector magnitudes(b_counts.size());
      for (std::size_t x = 0; x < b_counts.size(); ++x)
        magnitudes[x] = std::sqrt(double(b_counts[x]) / double(anc1));
      if (p.embedded)
        magnitudes = extract_original_block(magnitudes, p.original_dim);
      result.direction = magnitudes;
    }
    if (n_b == 1) result.ratio_11_01 = ratio_from_histogram(result.histogram);
    return result;
  }

  // Noisy mode: exact diagonal probabilities with the closed-form readout
  // map, then shot sampling on top for the reported histogram.
  const NoiseModel& model = mode.model.value();
  const DensityMatrix rho = run_noisy(circuit, model);
  std::vector<double> probs = rho.measured_probabilities(measured);
  probs = apply_readout_error(probs, model, measured);

  double anc1_mass = 0;
  std::vector<double> b_mass(std::size_t{1} << n_b, 0.0);
  for (std::size_t key = 0; key < probs.size(); ++key) {
    // Key bit j corresponds to measured[j]; the ancilla is listed last.
    if (!(key & (std::size_t{1} << n_b))) continue;
    anc1_mass += probs[key];
    std::size_t b_value = 0;
    for (int i = 0; i < n_b; ++i)
      if (key & (std::size_t{1} << i)) b_value |= std::size_t{1} << (n_b - 1 - i);
    b_mass[b_value] += probs[key];
  }
  result.success_probability = anc1_mass;
  if (anc1_mass > 0) {
    ComplexVector magnitudes(b_mass.size());
    for (std::size_t x = 0; x < b_mass.size(); ++x)
      magnitudes[x] = std::sqrt(b_mass[x] / anc1_mass);
    if (p.embedded)
      magnitudes = extract_original_block(magnitudes, p.original_dim);
    result.direction = magnitudes;
  }

  // Sample the reported histogram from the readout-adjusted distribution.
  Xoshiro256StarStar rng(mode.seed);
  std::vector<double> cdf(probs.size());
  double acc = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    cdf[k] = acc;
  }
  cdf.back() = std::max(cdf.back(), 1.0);
  result.histogram.shots = mode.shots;
  result.histogram.seed = mode.seed;
  for (std::uint64_t shot = 0; shot < mode.shots; ++shot) {
    const double u = rng.uniform();
    std::size_t key =
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    key = std::min(key, probs.size() - 1);
    std::string bits(measured.size(), '0');
    for (std::size_t j = 0; j < measured.size(); ++j)
      if (key & (std::size_t{1} << j)) bits[j] = '1';
    ++result.histogram.counts[bits];
  }
  if (n_b == 1) result.ratio_11_01 = ratio_from_histogram(result.histogram);
  return result;
}

VerificationReport verify_solution(const HHLProblem& p, const HHLResult& r) {
  if (r.rescaled_solution.dim() == 0)
    throw InvalidParameter(
        "verify_solution: requires a statevector-mode result");
  VerificationReport report;
  report.classical_solution = solve_linear_reference(p.a_original, p.b_original);

  const ComplexVector residual_vec =
      p.a_original * r.rescaled_solution - p.b_original;
  report.residual = residual_vec.norm() / p.b_original.norm();

  const ComplexVector classical_direction =
      report.classical_solution.normalized();
  report.cosine_similarity =
      std::abs(inner_product(r.direction, classical_direction));
  return report;
}

}  // namespace hhllab
