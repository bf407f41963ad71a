#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hhllab/complexity.hpp"
#include "test_oracles.hpp"

using namespace hhllab;

TEST_CASE("cost formulas at pinned points") {
  CHECK(complexity_estimate(SolverMethod::GaussianElimination, 100, 1, 1, 0.5)
            .ops == doctest::Approx(1e6));
  // N = 2^10, s = 2, k = 2, eps = 0.1 -> 10 * 4 * 4 / 0.1 = 1600.
  CHECK(complexity_estimate(SolverMethod::HHL, 1024, 2, 2, 0.1).ops ==
        doctest::Approx(1600.0));
  // N = 100, s = 2, k = 4, eps = e^-1 -> 100 * 2 * 2 * 1 = 400.
  CHECK(complexity_estimate(SolverMethod::ConjugateGradient, 100, 2, 4,
                            std::exp(-1.0))
            .ops == doctest::Approx(400.0));
  CHECK(complexity_estimate(SolverMethod::BlockKrylov, 10, 1, 1, 0.5).ops ==
        doctest::Approx(std::pow(10.0, 2.33)));
}

TEST_CASE("cost formula parameter validation") {
  CHECK_THROWS_AS(complexity_estimate(SolverMethod::HHL, 1, 1, 1, 0.5),
                  InvalidParameter);
  CHECK_THROWS_AS(complexity_estimate(SolverMethod::HHL, 4, 0, 1, 0.5),
                  InvalidParameter);
  CHECK_THROWS_AS(complexity_estimate(SolverMethod::HHL, 4, 1, 0.5, 0.5),
                  InvalidParameter);
  CHECK_THROWS_AS(complexity_estimate(SolverMethod::HHL, 4, 1, 1, 1.0),
                  InvalidParameter);
}

TEST_CASE("cost formulas are monotone in each parameter") {
  const double base =
      complexity_estimate(SolverMethod::HHL, 256, 2, 3, 0.1).ops;
  CHECK(complexity_estimate(SolverMethod::HHL, 512, 2, 3, 0.1).ops > base);
  CHECK(complexity_estimate(SolverMethod::HHL, 256, 3, 3, 0.1).ops > base);
  CHECK(complexity_estimate(SolverMethod::HHL, 256, 2, 4, 0.1).ops > base);
  CHECK(complexity_estimate(SolverMethod::HHL, 256, 2, 3, 0.05).ops > base);
}

TEST_CASE("doubling N only adds a log factor to the HHL estimate") {
  const double at_1024 =
      complexity_estimate(SolverMethod::HHL, 1024, 2, 2, 0.1).ops;
  const double at_2048 =
      complexity_estimate(SolverMethod::HHL, 2048, 2, 2, 0.1).ops;
  CHECK(at_2048 / at_1024 ==
        doctest::Approx(std::log2(2048.0) / std::log2(1024.0)).epsilon(1e-12));
}

TEST_CASE("crossover table ratio grows strictly with N") {
  std::vector<double> grid;
  for (int e = 4; e <= 20; ++e) grid.push_back(double(std::size_t{1} << e));
  const CrossoverTable table = crossover_table(2, 2, 0.1, grid);
  REQUIRE(table.rows.size() == grid.size());
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    CHECK(table.rows[i].ratio_cg_over_hhl >
          table.rows[i - 1].ratio_cg_over_hhl);
  CHECK(table.first_n_below_cg > 0);
}

TEST_CASE("crossover table single row at N = 2") {
  const CrossoverTable table = crossover_table(2, 2, 0.1, {2.0});
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].gauss_ops == doctest::Approx(8.0));
}

TEST_CASE("measured gaussian-elimination ops stay near N^3/3") {
  oracles::Random rng(601);
  for (std::size_t n : {8u, 16u, 32u}) {
    const ComplexMatrix a = oracles::random_spd(n, rng);
    const ComplexVector b = oracles::random_state_vector(n, rng);
    const GaussianSolve run = solve_linear_reference_instrumented(a, b);
    const double cube_third = double(n) * double(n) * double(n) / 3.0;
    CHECK(double(measured_ops(run)) >= cube_third / 2.0);
    CHECK(double(measured_ops(run)) <= cube_third * 2.0);
  }
}

TEST_CASE("measured gaussian-elimination ops grow cubically") {
  oracles::Random rng(603);
  std::map<std::size_t, double> ops;
  for (std::size_t n : {16u, 32u, 64u}) {
    const ComplexMatrix a = oracles::random_spd(n, rng);
    const ComplexVector b = oracles::random_state_vector(n, rng);
    ops[n] = double(measured_ops(solve_linear_reference_instrumented(a, b)));
  }
  CHECK(ops[32] / ops[16] >= 6.0);
  CHECK(ops[32] / ops[16] <= 10.0);
  CHECK(ops[64] / ops[32] >= 6.0);
  CHECK(ops[64] / ops[32] <= 10.0);
}

TEST_CASE("CG on the identity costs one iteration's worth of work") {
  oracles::Random rng(605);
  const ComplexVector b = oracles::random_state_vector(8, rng);
  const ConjugateGradientSolve run =
      conjugate_gradient(ComplexMatrix::identity(8), b, 1e-12, 10);
  CHECK(run.iterations == 1);
  // One matvec dominates: N^2 plus O(N) vector work.
  CHECK(measured_ops(run) >= 64);
  CHECK(measured_ops(run) <= 64 + 8 * 8);
}

TEST_CASE("CG iterations bounded by the distinct-eigenvalue count") {
  oracles::Random rng(607);
  // Spectrum with exactly three distinct values on an 8-dim space.
  const std::vector<double> spectrum{1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 5.0, 5.0};
  const ComplexMatrix a = oracles::hermitian_with_spectrum(spectrum, rng);
  const ComplexVector b = oracles::random_state_vector(8, rng);
  const ConjugateGradientSolve run = conjugate_gradient(a, b, 1e-9, 50);
  CHECK(run.iterations <= 3 + 1);
}

TEST_CASE("solver method names for table output") {
  CHECK(std::string(solver_method_name(SolverMethod::HHL)) == "hhl");
  CHECK(std::string(solver_method_name(SolverMethod::GaussianElimination)) ==
        "gaussian_elimination");
}
