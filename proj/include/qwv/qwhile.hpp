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

// The qwhile language: variables, measurements, program ASTs.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwv/dirac.hpp"
#include "qwv/qtypes.hpp"

namespace qwv {

struct Variable {
  std::string name;
  QType type;
  std::vector<Label> labels;  // atomic components, left to right

  LabelSet label_set() const { return LabelSet(labels); }
};

/// Declared variables. Every component of a composite variable is
/// addressable as name[i] (nested: name[i][j]); atomic labels carry the
/// name of the component they store.
class VarTable {
 public:
  const Variable &declare(const std::string &name, const QType &type);

  bool has(std::string_view ref) const;
  /// Atomic labels of a variable or component reference, in order.
  std::vector<Label> resolve(std::string_view ref) const;
  QType type_of(std::string_view ref) const;
  std::string label_name(int id) const;

  const LabelTable &label_table() const noexcept { return table_; }
  const std::vector<Variable> &variables() const noexcept { return vars_; }
  LabelSet all_labels() const;

  LabelResolver resolver() const;
  LabelNamer namer() const;

 private:
  struct Ref {
    QType type;
    std::vector<Label> labels;
  };
  void register_refs(const std::string &name, const QType &type, std::vector<Label> &atoms);

  LabelTable table_;
  std::vector<Variable> vars_;
  std::map<std::string, Ref, std::less<>> refs_;
};

/// Outcome m has operator ops[m], all square on the same labels.
struct Measurement {
  std::string name;               // "meas" for the computational basis
  std::vector<std::string> vars;  // variable references it reads
  LabelSet labels;
  std::vector<LabelledOperator> ops;

  std::size_t outcomes() const noexcept { return ops.size(); }
  /// ‖Σ M†M − I‖ small.
  bool is_complete(double tol = 1e-9) const;
};

Measurement basis_measurement(const VarTable &vars, const std::vector<std::string> &refs);

class Program {
 public:
  enum class Kind { Abort, Skip, Seq, Init, Unitary, Cond, While };

  static Program abort();
  static Program skip();
  static Program seq(Program first, Program second);
  /// `state` is a density operator on the labels of `vars`; `text` is its
  /// source form (basis literal or state(...)).
  static Program init(std::vector<std::string> vars, LabelledOperator state, std::string text);
  static Program unitary(std::vector<std::string> vars, LabelledOperator u, std::string gate_text);
  static Program cond(Measurement m, std::vector<Program> branches);
  static Program while_loop(Measurement m, std::size_t cont, Program body);

  Kind kind() const noexcept;
  const Program &first() const;
  const Program &second() const;
  const std::vector<std::string> &vars() const;
  const LabelledOperator &op() const;
  const std::string &text() const;
  const Measurement &measurement() const;
  const std::vector<Program> &branches() const;
  const Program &body() const;
  std::size_t cont() const;
  /// Exit outcome of a binary while guard.
  std::size_t exit_outcome() const { return 1 - cont(); }

  bool contains_while() const;
  bool contains_abort() const;
  std::size_t size() const;

 private:
  struct Node;
  explicit Program(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Right-nested sequence; empty gives skip.
Program desugar_for(const std::vector<Program> &bodies);
LabelSet footprint(const Program &p);
Program approximate_while(const Program &loop, std::size_t k);
bool structurally_equal(const Program &a, const Program &b, double tol = 1e-12);

/// Source text for `p` (statements only) that parses back to the same AST.
std::string pretty_print(const Program &p, const VarTable &vars, int indent = 0);
std::string print_declarations(const VarTable &vars);

/// Gates and measurements from a sidecar JSON file: each key maps to a
/// row-major matrix [[re,im],...] (a gate) or an array of such (a measurement).
class GateRegistry {
 public:
  void add_gate(const std::string &name, ComplexMatrix m);
  void add_measurement(const std::string &name, std::vector<ComplexMatrix> ops);
  void load_json(std::string_view text);

  const ComplexMatrix *gate(const std::string &name) const;
  const std::vector<ComplexMatrix> *measurement(const std::string &name) const;

 private:
  std::map<std::string, ComplexMatrix> gates_;
  std::map<std::string, std::vector<ComplexMatrix>> measurements_;
};

struct ParsedProgram {
  VarTable vars;
  Program program = Program::skip();
  /// Top-level statements, a for loop counting as one statement.
  std::vector<Program> statements;
};

ParsedProgram parse_program(std::string_view source, const GateRegistry &registry = {});
/// Parses statements against an existing variable table.
Program parse_statements(std::string_view source, const VarTable &vars, const GateRegistry &registry = {});

}  // namespace qwv
