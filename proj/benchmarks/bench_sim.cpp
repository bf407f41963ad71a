// Microbenchmarks for the simulation kernels and classical solvers.
// Run: ./hhllab_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "hhllab/hhl.hpp"
#include "hhllab/linalg.hpp"
#include "hhllab/noise.hpp"
#include "hhllab/qft_qpe.hpp"
#include "hhllab/rng.hpp"
#include "hhllab/statevector.hpp"

using namespace hhllab;

namespace {

ComplexMatrix seeded_hermitian(std::size_t n, std::uint64_t seed) {
  Xoshiro256StarStar rng(seed);
  auto gauss = [&rng] {
    const double u1 = std::max(rng.uniform(), 1e-300);
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  };
  ComplexMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = gauss() + 4.0 * double(n);  // diagonally dominant, SPD-ish
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex v(gauss(), gauss());
      a(r, c) = v;
      a(c, r) = std::conj(v);
    }
  }
  return a;
}

void BM_HadamardLayer(benchmark::State& state) {
  const int n = int(state.range(0));
  for (auto _ : state) {
    StateVector s(n);
    for (int q = 0; q < n; ++q) s.apply(Gate::h(), {q});
    benchmark::DoNotOptimize(s.amp(0));
  }
  state.SetItemsProcessed(state.iterations() * n * (int64_t(1) << n));
}
BENCHMARK(BM_HadamardLayer)->Arg(10)->Arg(14)->Arg(18);

void BM_QftRun(benchmark::State& state) {
  const int n = int(state.range(0));
  const Circuit qft = build_qft(n);
  for (auto _ : state) {
    StateVector s(n);
    for (const CircuitOp& op : qft.ops())
      if (const auto* gop = std::get_if<GateOp>(&op))
        s.apply(gop->gate, gop->targets);
    benchmark::DoNotOptimize(s.amp(0));
  }
}
BENCHMARK(BM_QftRun)->Arg(6)->Arg(10)->Arg(14);

void BM_JacobiEigendecompose(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const ComplexMatrix a = seeded_hermitian(n, 7);
  for (auto _ : state) {
    const EigenDecomposition eig = hermitian_eigendecompose(a);
    benchmark::DoNotOptimize(eig.values[0]);
  }
}
BENCHMARK(BM_JacobiEigendecompose)->Arg(4)->Arg(16)->Arg(32);

void BM_GaussianSolve(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const ComplexMatrix a = seeded_hermitian(n, 11);
  ComplexVector b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = 1.0;
  for (auto _ : state) {
    const GaussianSolve run = solve_linear_reference_instrumented(a, b);
    benchmark::DoNotOptimize(run.x[0]);
  }
}
BENCHMARK(BM_GaussianSolve)->Arg(16)->Arg(64)->Arg(128);

void BM_HhlStatevector(benchmark::State& state) {
  const HHLProblem p = preprocess(ComplexMatrix{{1.5, 0.5}, {0.5, 1.5}},
                                  ComplexVector{0.0, 1.0});
  for (auto _ : state) {
    const HHLResult r = run_hhl(p, RunMode::statevector());
    benchmark::DoNotOptimize(r.success_probability);
  }
}
BENCHMARK(BM_HhlStatevector);

void BM_NoisyWorkedExample(benchmark::State& state) {
  const HHLProblem p = preprocess(ComplexMatrix{{1.5, 0.5}, {0.5, 1.5}},
                                  ComplexVector{0.0, 1.0});
  const Circuit circuit = build_hhl_circuit(p);
  NoiseModel m;
  m.p_2q = 0.05;
  m.t1_us = 50.0;
  m.t2_us = 70.0;
  for (auto _ : state) {
    const DensityMatrix rho = run_noisy(circuit, m);
    benchmark::DoNotOptimize(rho.trace_real());
  }
}
BENCHMARK(BM_NoisyWorkedExample);

}  // namespace

BENCHMARK_MAIN();
