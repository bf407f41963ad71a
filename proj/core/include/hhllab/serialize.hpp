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

#include <optional>
#include <string>

#include "hhllab/circuit.hpp"
#include "hhllab/hhl.hpp"
#include "hhllab/linalg.hpp"
#include "hhllab/noise.hpp"
#include "hhllab/statevector.hpp"

// File formats. All parsers throw ParseError on malformed input.
//
//   matrix / vector   {"rows":N,"cols":M,"re":[...],"im":[...]}   row-major
//   circuit           {"qubits":N,"clbits":M,"ops":[
//                        {"gate":"cu","params":[...],"controls":[...],
//                         "targets":[...]},
//                        {"barrier":"phi4"}, {"measure":{"q":3,"c":0}}]}
//   problem           {"A":matrix,"b":vector,"n_clock":?,"t":?,"C":?}
//   histogram CSV     header "bitstring,count,probability"
//   sweep CSV         comment "# ideal P_01=...,P_11=..." then
//                     "p_2q,mode,P_00,P_01,P_10,P_11", mode in {2q_only,full}

namespace hhllab {

std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);

std::string vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const std::string& text);

std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

/// A solver input file: the raw system plus optional pipeline overrides.
struct ProblemFile {
  ComplexMatrix a;
  ComplexVector b;
  std::optional<int> n_clock;
  std::optional<double> t;
  std::optional<double> c;
};

std::string problem_to_json(const ProblemFile& p);
ProblemFile problem_from_json(const std::string& text);

std::string noise_model_to_json(const NoiseModel& m);
NoiseModel noise_model_from_json(const std::string& text);

/// Full result file: HHLResult fields plus the classical oracle solution
/// and the verification report when available.
std::string result_to_json(const HHLProblem& problem, const HHLResult& result,
                           const VerificationReport* verification);

std::string histogram_to_csv(const ShotHistogram& h);
std::string sweep_to_csv(const SweepResult& r);

}  // namespace hhllab
