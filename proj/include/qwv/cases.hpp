// Copyright 2026 The qwv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Case studies: quantum algorithms written in qwhile together with their
// correctness triples.

#include <cstddef>
#include <string>
#include <vector>

#include "qwv/group.hpp"
#include "qwv/hoare.hpp"
#include "qwv/qwhile.hpp"
#include "qwv/semantics.hpp"

namespace qwv::cases {

struct NamedTriple {
  std::string name;
  Judgment judgment;
};

struct CaseStudy {
  std::string name;
  std::string params;
  std::string source;
  GateRegistry gates;
  ParsedProgram parsed;
  /// State the program is simulated on (all variables).
  LabelledOperator input;
  std::vector<NamedTriple> triples;
};

struct TripleResult {
  std::string name;
  Verdict verdict;
};

struct CaseResult {
  std::string name;
  std::string params;
  bool ok = false;
  std::vector<TripleResult> triples;
  QualityReport quality;
  std::string error;
};

CaseResult run_case(const CaseStudy &c, const CheckOptions &opts = {});

LabelledOperator simulate(const CaseStudy &c, const SemanticsOptions &opts = {});
/// Measurement statistics of `refs` (listed order, first most significant).
std::vector<double> distribution(const LabelledOperator &rho, const VarTable &vars, const std::vector<std::string> &refs);
/// Matrix of a loop-free unitary circuit on `labels`.
ComplexMatrix circuit_matrix(const Program &p, const LabelSet &labels);
/// Ket on `refs` with amplitudes in listed order.
LabelledOperator ket_on(const VarTable &vars, const std::vector<std::string> &refs, const ComplexMatrix &amplitudes);

/// f is the coset index of each element when omitted.
CaseStudy hsp(const Subgroup &h);
CaseStudy hsp(const Subgroup &h, const std::vector<std::size_t> &f);

CaseStudy grover(std::size_t n, const std::vector<std::size_t> &marked, std::size_t r);

/// U and its eigenvector φ with U φ = e^{2πiθ} φ; x : int<n>.
CaseStudy qpe(const ComplexMatrix &u, const ComplexMatrix &phi, double theta, std::size_t n);
/// A fixed 2x2 unitary with eigenphases θ and 0.37 in a rotated basis.
CaseStudy qpe(double theta, std::size_t n);

CaseStudy qft_circuit(std::size_t n);
CaseStudy rev_circuit(std::size_t n, std::size_t d = 2);
CaseStudy hlf(const std::vector<std::vector<int>> &a);
CaseStudy para_hadamard(std::size_t n);

struct HhlParams {
  ComplexMatrix a;      // Hermitian m×m
  ComplexMatrix b;      // unit column
  std::size_t n = 4;
  double t0 = 0.0;
  double c = 0.5;
};
HhlParams hhl_default();
CaseStudy hhl(const HhlParams &p);
/// Normalized solution of A x = b.
ComplexMatrix hhl_solution(const HhlParams &p);

std::vector<std::string> case_names();
CaseStudy by_name(const std::string &name);

}  // namespace qwv::cases
