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

#include "hhllab/serialize.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace hhllab {

using nlohmann::json;

namespace {

json matrix_to_value(const ComplexMatrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  json re = json::array();
  json im = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

ComplexMatrix matrix_from_value(const json& j) {
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != rows * cols || im.size() != rows * cols)
    throw ParseError("matrix: re/im length must equal rows*cols");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i)
    m(i / cols, i % cols) = Complex(re[i].get<double>(), im[i].get<double>());
  return m;
}

json vector_to_value(const ComplexVector& v) {
  ComplexMatrix column(v.dim(), 1);
  for (std::size_t i = 0; i < v.dim(); ++i) column(i, 0) = v[i];
  return matrix_to_value(column);
}

ComplexVector vector_from_value(const json& j) {
  const ComplexMatrix m = matrix_from_value(j);
  if (m.cols() != 1) throw ParseError("vector: expected a single column");
  ComplexVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, 0);
  return v;
}

json gate_op_to_value(const GateOp& op) {
  json j;
  std::string name(op.gate.controls.size(), 'c');
  name += op.gate.name();
  j["gate"] = name;
  json params = json::array();
  switch (op.gate.kind) {
    case GateKind::Phase:
    case GateKind::RY:
      params.push_back(op.gate.theta);
      break;
    case GateKind::U:
      params = {op.gate.theta, op.gate.phi, op.gate.lambda, op.gate.gamma};
      break;
    default:
      break;
  }
  j["params"] = std::move(params);
  j["controls"] = op.gate.controls;
  j["targets"] = op.targets;
  if (op.gate.kind == GateKind::FromMatrix)
    j["matrix"] = matrix_to_value(op.gate.matrix);
  return j;
}

GateOp gate_op_from_value(const json& j) {
  std::string name = j.at("gate").get<std::string>();
  std::size_t control_prefix = 0;
  // "swap" starts with no 'c'; strip prefix c's only while the remainder
  // is not itself a known gate name.
  auto is_base = [](const std::string& s) {
    return s == "x" || s == "h" || s == "p" || s == "u" || s == "ry" ||
           s == "swap" || s == "unitary";
  };
  while (!name.empty() && name.front() == 'c' && !is_base(name)) {
    name.erase(name.begin());
    ++control_prefix;
  }
  if (!is_base(name)) throw ParseError("circuit: unknown gate \"" + name + "\"");

  const std::vector<double> params =
      j.value("params", std::vector<double>{});
  Gate g = Gate::x();
  if (name == "x") {
    g = Gate::x();
  } else if (name == "h") {
    g = Gate::h();
  } else if (name == "p") {
    if (params.size() != 1) throw ParseError("circuit: p takes one parameter");
    g = Gate::phase(params[0]);
  } else if (name == "ry") {
    if (params.size() != 1) throw ParseError("circuit: ry takes one parameter");
    g = Gate::ry(params[0]);
  } else if (name == "u") {
    if (params.size() != 4)
      throw ParseError("circuit: u takes four parameters");
    g = Gate::u(params[0], params[1], params[2], params[3]);
  } else if (name == "swap") {
    g = Gate::swap();
  } else {
    g = Gate::from_matrix(matrix_from_value(j.at("matrix")));
  }
  g.controls = j.value("controls", std::vector<int>{});
  if (g.controls.size() != control_prefix)
    throw ParseError("circuit: control prefix disagrees with control list");
  return GateOp{std::move(g), j.at("targets").get<std::vector<int>>()};
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

std::string format_probability(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& m) {
  return matrix_to_value(m).dump();
}

ComplexMatrix matrix_from_json(const std::string& text) {
  try {
    return matrix_from_value(parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
}

std::string vector_to_json(const ComplexVector& v) {
  return vector_to_value(v).dump();
}

ComplexVector vector_from_json(const std::string& text) {
  try {
    return vector_from_value(parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("vector: ") + e.what());
  }
}

std::string circuit_to_json(const Circuit& c) {
  json j;
  j["qubits"] = c.num_qubits();
  j["clbits"] = c.num_clbits();
  json ops = json::array();
  for (const CircuitOp& op : c.ops()) {
    if (const auto* gop = std::get_if<GateOp>(&op)) {
      ops.push_back(gate_op_to_value(*gop));
    } else if (const auto* bop = std::get_if<BarrierOp>(&op)) {
      ops.push_back(json{{"barrier", bop->label}});
    } else {
      const auto& mop = std::get<MeasureOp>(op);
      ops.push_back(json{{"measure", {{"q", mop.qubit}, {"c", mop.clbit}}}});
    }
  }
  j["ops"] = std::move(ops);
  return j.dump();
}

Circuit circuit_from_json(const std::string& text) {
  try {
    const json j = parse(text);
    Circuit c(j.at("qubits").get<int>(), j.value("clbits", 0));
    for (const json& op : j.at("ops")) {
      if (op.contains("barrier")) {
        c.add_barrier(op.at("barrier").get<std::string>());
      } else if (op.contains("measure")) {
        c.add_measure(op.at("measure").at("q").get<int>(),
                      op.at("measure").at("c").get<int>());
      } else {
        GateOp gop = gate_op_from_value(op);
        c.add_gate(gop.gate, gop.targets);
      }
    }
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("circuit: ") + e.what());
  }
}

std::string problem_to_json(const ProblemFile& p) {
  json j;
  j["A"] = matrix_to_value(p.a);
  j["b"] = vector_to_value(p.b);
  if (p.n_clock) j["n_clock"] = *p.n_clock;
  if (p.t) j["t"] = *p.t;
  if (p.c) j["C"] = *p.c;
  return j.dump();
}

ProblemFile problem_from_json(const std::string& text) {
  try {
    const json j = parse(text);
    ProblemFile p;
    p.a = matrix_from_value(j.at("A"));
    p.b = vector_from_value(j.at("b"));
    if (j.contains("n_clock")) p.n_clock = j.at("n_clock").get<int>();
    if (j.contains("t")) p.t = j.at("t").get<double>();
    if (j.contains("C")) p.c = j.at("C").get<double>();
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("problem: ") + e.what());
  }
}

std::string noise_model_to_json(const NoiseModel& m) {
  json j;
  j["p_2q"] = m.p_2q;
  if (std::isfinite(m.t1_us)) j["t1_us"] = m.t1_us;
  if (std::isfinite(m.t2_us)) j["t2_us"] = m.t2_us;
  j["gate_time_1q_us"] = m.gate_time_1q_us;
  j["gate_time_2q_us"] = m.gate_time_2q_us;
  if (!m.readout.empty()) {
    json list = json::array();
    for (const ReadoutConfusion& conf : m.readout)
      list.push_back(json{{conf[0][0], conf[0][1]}, {conf[1][0], conf[1][1]}});
    // A single entry means "every qubit"; keep the 2x2 form for that case.
    j["readout"] = m.readout.size() == 1 ? list[0] : list;
  }
  return j.dump();
}

NoiseModel noise_model_from_json(const std::string& text) {
  try {
    const json j = parse(text);
    NoiseModel m;
    m.p_2q = j.value("p_2q", 0.0);
    if (j.contains("t1_us")) m.t1_us = j.at("t1_us").get<double>();
    if (j.contains("t2_us")) m.t2_us = j.at("t2_us").get<double>();
    m.gate_time_1q_us = j.value("gate_time_1q_us", 0.05);
    m.gate_time_2q_us = j.value("gate_time_2q_us", 0.3);
    if (j.contains("readout")) {
      const json& r = j.at("readout");
      auto read_confusion = [](const json& entry) {
        if (entry.size() != 2 || entry[0].size() != 2 || entry[1].size() != 2)
          throw ParseError("noise model: confusion matrices are 2x2");
        ReadoutConfusion conf;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) conf[a][b] = entry[a][b].get<double>();
        return conf;
      };
      if (!r.empty() && r[0].is_number()) {
        throw ParseError("noise model: readout must be a 2x2 matrix or list");
      } else if (!r.empty() && r[0].size() == 2 && r[0][0].is_number()) {
        m.readout.push_back(read_confusion(r));  // one matrix, every qubit
      } else {
        for (const json& entry : r) m.readout.push_back(read_confusion(entry));
      }
    }
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("noise model: ") + e.what());
  }
}

std::string result_to_json(const HHLProblem& problem, const HHLResult& result,
                           const VerificationReport* verification) {
  json j;
  j["success_probability"] = result.success_probability;
  j["direction"] = vector_to_value(result.direction);
  if (result.rescaled_solution.dim() > 0)
    j["rescaled_solution"] = vector_to_value(result.rescaled_solution);
  if (result.ratio_11_01)
    j["ratio_11_01"] = *result.ratio_11_01;
  else
    j["ratio_11_01"] = nullptr;
  if (result.histogram.shots > 0) {
    json h;
    h["shots"] = result.histogram.shots;
    h["seed"] = result.histogram.seed;
    h["counts"] = result.histogram.counts;
    j["histogram"] = std::move(h);
  }
  json meta;
  meta["n_clock"] = problem.n_clock;
  meta["t"] = problem.t;
  meta["C"] = problem.c;
  meta["exact_mode"] = problem.exact_mode;
  meta["embedded"] = problem.embedded;
  meta["b_norm"] = problem.b_norm;
  meta["clock_eigenvalues"] = problem.clock_eigenvalues;
  j["problem"] = std::move(meta);
  if (verification) {
    json v;
    v["residual"] = verification->residual;
    v["cosine_similarity"] = verification->cosine_similarity;
    v["classical_solution"] = vector_to_value(verification->classical_solution);
    j["verification"] = std::move(v);
  }
  return j.dump(2);
}

std::string histogram_to_csv(const ShotHistogram& h) {
  std::ostringstream out;
  out << "bitstring,count,probability\n";
  for (const auto& [bits, count] : h.counts)
    out << bits << ',' << count << ','
        << format_probability(double(count) / double(h.shots)) << '\n';
  return out.str();
}

std::string sweep_to_csv(const SweepResult& r) {
  std::ostringstream out;
  out << "# ideal P_01=" << format_probability(r.ideal_p01)
      << ",P_11=" << format_probability(r.ideal_p11) << '\n';
  out << "p_2q,mode,P_00,P_01,P_10,P_11\n";
  for (const SweepRow& row : r.rows) {
    out << format_probability(row.p_2q) << ',' << sweep_mode_name(row.mode)
        << ',' << format_probability(row.p00) << ','
        << format_probability(row.p01) << ',' << format_probability(row.p10)
        << ',' << format_probability(row.p11) << '\n';
  }
  return out.str();
}

}  // namespace hhllab
