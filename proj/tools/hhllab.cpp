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

// Command-line driver: reproduce the 2x2 worked example, solve general
// systems from problem files, run the noise sweep and emit the complexity
// comparison tables.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hhllab/complexity.hpp"
#include "hhllab/hhl.hpp"
#include "hhllab/serialize.hpp"

namespace fs = std::filesystem;
using namespace hhllab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct CommonOptions {
  std::uint64_t shots = 4096;
  std::uint64_t seed = 42;
  std::string backend = "statevector";
  std::string problem_path;
  std::string noise_spec;  // "zero", a named default or a file path
  std::string grid = "0.0:0.15:0.025";
  std::string out_dir = ".";
  bool quiet = false;
};

std::ostream& value_stream(std::ostream& os) {
  os << std::setprecision(12);
  return os;
}

fs::path resolve_out_dir(const CommonOptions& opt) {
  const char* env = std::getenv("HHLLAB_OUT");
  fs::path dir = env && *env ? fs::path(env) : fs::path(opt.out_dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot open " + path.string());
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Accepts "zero", "default" or a JSON file path.
NoiseModel load_noise_model(const std::string& spec) {
  if (spec.empty() || spec == "default") {
    NoiseModel m;
    m.t1_us = 50.0;
    m.t2_us = 70.0;
    m.readout = {NoiseModel::symmetric_confusion(0.05)};
    return m;
  }
  if (spec == "zero") return NoiseModel::zero();
  return noise_model_from_json(read_file(spec));
}

std::vector<double> parse_grid(const std::string& text) {
  double lo = 0, hi = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
      step <= 0 || hi < lo)
    throw InvalidParameter("grid must be lo:hi:step, got \"" + text + "\"");
  std::vector<double> grid;
  for (double v = lo; v <= hi + 1e-12; v += step) grid.push_back(v);
  return grid;
}

ProblemFile worked_example_problem() {
  ProblemFile file;
  file.a = ComplexMatrix{{1.5, 0.5}, {0.5, 1.5}};
  file.b = ComplexVector{0.0, 1.0};
  return file;
}

void print_amplitude_table(std::ostream& os, const std::string& label,
                           const StateVector& s, const HHLProblem& p) {
  const int n_clock = p.n_clock;
  const int n_b = p.n_b_qubits();
  os << label << ":\n";
  os << "  index  |b clock a>   re              im              prob\n";
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const Complex a = s.amp(i);
    if (std::abs(a) < 5e-13) continue;
    const std::size_t anc = i & 1;
    const std::size_t clock = (i >> 1) & ((std::size_t{1} << n_clock) - 1);
    const std::size_t b = i >> (1 + n_clock);
    std::string bits;
    for (int q = n_b - 1; q >= 0; --q) bits += char('0' + ((b >> q) & 1));
    bits += ' ';
    for (int q = n_clock - 1; q >= 0; --q) bits += char('0' + ((clock >> q) & 1));
    bits += ' ';
    bits += char('0' + anc);
    os << "  " << std::setw(5) << i << "  |" << bits << ">   " << std::left
       << std::setw(15) << a.real() << " " << std::setw(15) << a.imag() << " "
       << std::norm(a) << std::right << "\n";
  }
}

void print_histogram(std::ostream& os, const ShotHistogram& h) {
  os << "histogram (" << h.shots << " shots, seed " << h.seed << "):\n";
  for (const auto& [bits, count] : h.counts)
    os << "  " << bits << "  " << std::setw(8) << count << "  "
       << double(count) / double(h.shots) << "\n";
}

std::string gnuplot_script(const std::string& csv_name, double ideal_p01,
                           double ideal_p11) {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "set datafile separator \",\"\n"
      << "set xlabel \"two-qubit error rate\"\n"
      << "set ylabel \"probability\"\n"
      << "set key outside\n"
      << "plot \\\n"
      << "  \"< grep 2q_only " << csv_name
      << "\" using 1:6 with linespoints title \"P(11) 2q only\", \\\n"
      << "  \"< grep 2q_only " << csv_name
      << "\" using 1:4 with linespoints title \"P(01) 2q only\", \\\n"
      << "  \"< grep full " << csv_name
      << "\" using 1:6 with linespoints title \"P(11) full\", \\\n"
      << "  \"< grep full " << csv_name
      << "\" using 1:4 with linespoints title \"P(01) full\", \\\n"
      << "  " << ideal_p11 << " with lines dashtype 2 title \"ideal P(11)\", \\\n"
      << "  " << ideal_p01 << " with lines dashtype 2 title \"ideal P(01)\"\n";
  return out.str();
}

int cmd_example(const CommonOptions& opt) {
  const fs::path out_dir = resolve_out_dir(opt);
  const ProblemFile file = worked_example_problem();
  const HHLProblem problem = preprocess(file.a, file.b);

  const HHLResult sv = run_hhl(problem, RunMode::statevector());
  const VerificationReport report = verify_solution(problem, sv);
  const HHLResult shots =
      run_hhl(problem, RunMode::with_shots(opt.shots, opt.seed));

  std::ostream& os = std::cout;
  value_stream(os);
  if (!opt.quiet) {
    os << "2x2 worked example: A=[[3/2,1/2],[1/2,3/2]], b=(0,1), t=pi/2, "
          "n_clock=2, C=1\n\n";
    for (int stage = 1; stage <= 9; ++stage) {
      const std::string label = "phi" + std::to_string(stage);
      const auto it = sv.snapshots.find(label);
      if (it != sv.snapshots.end())
        print_amplitude_table(os, label, it->second, problem);
    }
    os << "\n";
    print_histogram(os, shots.histogram);
    os << "\n";
  }

  os << "success probability (ancilla=1): " << sv.success_probability << "\n";
  os << "solution direction: (" << sv.direction[0] << ", " << sv.direction[1]
     << ")\n";
  os << "rescaled solution:  (" << sv.rescaled_solution[0].real() << ", "
     << sv.rescaled_solution[1].real() << ")\n";
  os << "classical solution: (" << report.classical_solution[0].real() << ", "
     << report.classical_solution[1].real() << ")\n";
  os << "statevector ratio |x1|^2 : |x0|^2 = " << *sv.ratio_11_01 << " : 1\n";
  if (shots.ratio_11_01)
    os << "sampled ratio count(11)/count(01) = " << *shots.ratio_11_01 << "\n";
  os << "relative residual: " << report.residual << "\n";

  if (opt.backend == "density") {
    const NoiseModel model =
        load_noise_model(opt.noise_spec.empty() ? "zero" : opt.noise_spec);
    const HHLResult noisy =
        run_hhl(problem, RunMode::noisy(model, opt.shots, opt.seed));
    os << "density backend success probability: " << noisy.success_probability
       << "\n";
    if (!opt.quiet) print_histogram(os, noisy.histogram);
    write_file(out_dir / "histogram_density.csv",
               histogram_to_csv(noisy.histogram));
  }

  write_file(out_dir / "result.json", result_to_json(problem, sv, &report));
  write_file(out_dir / "histogram.csv", histogram_to_csv(shots.histogram));

  // Built-in checks: final amplitudes, ratio and residual against the
  // closed-form values of the worked example.
  const double inv_sqrt10 = 1.0 / std::sqrt(10.0);
  const Complex overlap = std::conj(sv.direction[0]) * Complex(-inv_sqrt10) +
                          std::conj(sv.direction[1]) * Complex(3 * inv_sqrt10);
  bool ok = true;
  if (std::abs(overlap) < 1.0 - 1e-9) {
    os << "CHECK FAILED: solution direction deviates from (-1, 3)/sqrt(10)\n";
    ok = false;
  }
  if (std::abs(*sv.ratio_11_01 - 9.0) > 1e-9) {
    os << "CHECK FAILED: statevector ratio is not 9\n";
    ok = false;
  }
  if (report.residual > 1e-9) {
    os << "CHECK FAILED: residual above 1e-9\n";
    ok = false;
  }
  if (shots.ratio_11_01 &&
      (*shots.ratio_11_01 < 7.5 || *shots.ratio_11_01 > 10.5)) {
    os << "CHECK FAILED: sampled ratio outside [7.5, 10.5]\n";
    ok = false;
  }
  os << (ok ? "all checks passed\n" : "checks failed\n");
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_solve(const CommonOptions& opt) {
  if (opt.problem_path.empty())
    throw ParseError("solve requires --problem <file>");
  const ProblemFile file = problem_from_json(read_file(opt.problem_path));
  const HHLProblem problem =
      preprocess(file.a, file.b, file.n_clock, file.t, file.c);
  if (!problem.exact_mode)
    std::cerr << "warning: clock encoding is approximate for this spectrum; "
                 "results carry phase-estimation error\n";

  const HHLResult sv = run_hhl(problem, RunMode::statevector());
  const VerificationReport report = verify_solution(problem, sv);
  const HHLResult shots =
      run_hhl(problem, RunMode::with_shots(opt.shots, opt.seed));

  const fs::path out_dir = resolve_out_dir(opt);
  write_file(out_dir / "result.json", result_to_json(problem, sv, &report));
  write_file(out_dir / "histogram.csv", histogram_to_csv(shots.histogram));

  std::ostream& os = std::cout;
  value_stream(os);
  if (!opt.quiet) {
    os << "n_clock=" << problem.n_clock << " t=" << problem.t
       << " C=" << problem.c << (problem.exact_mode ? " (exact)" : " (approx)")
       << (problem.embedded ? " embedded" : "") << "\n";
    os << "success probability: " << sv.success_probability << "\n";
    os << "rescaled solution:";
    for (std::size_t i = 0; i < sv.rescaled_solution.dim(); ++i) {
      const Complex x = sv.rescaled_solution[i];
      os << " (" << x.real() << (x.imag() < 0 ? "-" : "+")
         << std::abs(x.imag()) << "i)";
    }
    os << "\nrelative residual: " << report.residual
       << "\ncosine similarity: " << report.cosine_similarity << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const CommonOptions& opt) {
  const NoiseModel model = load_noise_model(opt.noise_spec);
  const ProblemFile file = opt.problem_path.empty()
                               ? worked_example_problem()
                               : problem_from_json(read_file(opt.problem_path));
  const HHLProblem problem =
      preprocess(file.a, file.b, file.n_clock, file.t, file.c);
  const std::vector<double> grid = parse_grid(opt.grid);

  const SweepResult sweep =
      noise_sweep(problem, model, grid,
                  {SweepMode::TwoQubitOnly, SweepMode::Full});

  const fs::path out_dir = resolve_out_dir(opt);
  const std::string csv = sweep_to_csv(sweep);
  write_file(out_dir / "sweep.csv", csv);
  write_file(out_dir / "sweep.gp",
             gnuplot_script("sweep.csv", sweep.ideal_p01, sweep.ideal_p11));
  if (!opt.quiet) std::cout << csv;
  std::cout << "wrote " << (out_dir / "sweep.csv").string() << " ("
            << sweep.rows.size() << " rows)\n";
  return kExitOk;
}

struct ComplexityOptions {
  double s = 2.0;
  double k = 2.0;
  double eps = 0.1;
  int n_min_exp = 4;
  int n_max_exp = 20;
};

int cmd_complexity(const CommonOptions& opt, const ComplexityOptions& cx) {
  if (cx.n_min_exp < 1 || cx.n_max_exp < cx.n_min_exp)
    throw InvalidParameter("complexity: need 1 <= n-min-exp <= n-max-exp");
  std::vector<double> grid;
  for (int e = cx.n_min_exp; e <= cx.n_max_exp; ++e)
    grid.push_back(double(std::size_t{1} << e));
  const CrossoverTable table = crossover_table(cx.s, cx.k, cx.eps, grid);

  std::ostringstream csv;
  csv << std::setprecision(12);
  csv << "# operation-count estimates with constant factor 1; scaling "
         "illustration, not wall-clock predictions\n";
  csv << "N,hhl_ops,cg_ops,gauss_ops,ratio_cg_over_hhl\n";
  for (const CrossoverRow& row : table.rows)
    csv << row.n << ',' << row.hhl_ops << ',' << row.cg_ops << ','
        << row.gauss_ops << ',' << row.ratio_cg_over_hhl << '\n';

  const fs::path out_dir = resolve_out_dir(opt);
  write_file(out_dir / "complexity.csv", csv.str());
  if (!opt.quiet) std::cout << csv.str();
  value_stream(std::cout);
  if (table.first_n_below_cg > 0)
    std::cout << "HHL estimate drops below conjugate gradient at N = "
              << table.first_n_below_cg << "\n";
  if (table.first_n_below_gauss > 0)
    std::cout << "HHL estimate drops below Gaussian elimination at N = "
              << table.first_n_below_gauss << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HHL linear-system laboratory"};
  app.require_subcommand(1);

  CommonOptions opt;
  ComplexityOptions cx;

  auto add_common = [&](CLI::App* cmd, bool with_problem, bool with_noise) {
    cmd->add_option("--shots", opt.shots, "number of measurement shots");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--out", opt.out_dir,
                    "output directory (HHLLAB_OUT overrides)");
    cmd->add_flag("--quiet", opt.quiet, "suppress tables on stdout");
    if (with_problem)
      cmd->add_option("--problem", opt.problem_path, "problem JSON file");
    if (with_noise)
      cmd->add_option("--noise", opt.noise_spec,
                      "noise model JSON file, or \"zero\"/\"default\"");
  };

  CLI::App* example = app.add_subcommand(
      "example", "reproduce the 2x2 worked example end to end");
  add_common(example, false, true);
  example->add_option("--backend", opt.backend,
                      "statevector or density (adds a noisy run)");

  CLI::App* solve =
      app.add_subcommand("solve", "solve a linear system from a problem file");
  add_common(solve, true, false);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "two-qubit error sweep of the noisy simulator");
  add_common(sweep, true, true);
  sweep->add_option("--grid", opt.grid, "p_2q grid as lo:hi:step");

  CLI::App* complexity = app.add_subcommand(
      "complexity", "emit the classical-vs-HHL operation-count table");
  add_common(complexity, false, false);
  complexity->add_option("-s", cx.s, "nonzeros per row");
  complexity->add_option("-k", cx.k, "condition number");
  complexity->add_option("--eps", cx.eps, "target accuracy");
  complexity->add_option("--n-min-exp", cx.n_min_exp, "smallest N as 2^e");
  complexity->add_option("--n-max-exp", cx.n_max_exp, "largest N as 2^e");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(example)) return cmd_example(opt);
    if (app.got_subcommand(solve)) return cmd_solve(opt);
    if (app.got_subcommand(sweep)) return cmd_sweep(opt);
    return cmd_complexity(opt, cx);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const UnphysicalModel& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvalidParameter& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
