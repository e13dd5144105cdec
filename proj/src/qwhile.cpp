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

#include "qwv/qwhile.hpp"

#include <cmath>
#include <functional>
#include <optional>

#include <json.hpp>

#include "qwv/error.hpp"

namespace qwv {

// ---------------------------------------------------------------------------
// VarTable

void VarTable::register_refs(const std::string &name, const QType &type, std::vector<Label> &atoms) {
  if (type.is_atomic()) {
    const Label l = table_.add(name, type.dimension(), type.to_string());
    atoms.push_back(l);
    refs_.emplace(name, Ref{type, {l}});
    return;
  }
  std::vector<Label> mine;
  const auto comps = type.components();
  for (std::size_t i = 0; i < comps.size(); ++i) register_refs(name + "[" + std::to_string(i) + "]", comps[i], mine);
  atoms.insert(atoms.end(), mine.begin(), mine.end());
  refs_.emplace(name, Ref{type, std::move(mine)});
}

const Variable &VarTable::declare(const std::string &name, const QType &type) {
  if (refs_.count(name)) throw Error(ErrorCode::TypeError, "variable '" + name + "' declared twice");
  std::vector<Label> atoms;
  register_refs(name, type, atoms);
  vars_.push_back(Variable{name, type, std::move(atoms)});
  return vars_.back();
}

bool VarTable::has(std::string_view ref) const { return refs_.find(ref) != refs_.end(); }

std::vector<Label> VarTable::resolve(std::string_view ref) const {
  auto it = refs_.find(ref);
  if (it == refs_.end()) throw Error(ErrorCode::UnknownVariable, std::string(ref));
  return it->second.labels;
}

QType VarTable::type_of(std::string_view ref) const {
  auto it = refs_.find(ref);
  if (it == refs_.end()) throw Error(ErrorCode::UnknownVariable, std::string(ref));
  return it->second.type;
}

std::string VarTable::label_name(int id) const { return table_.entry(id).name; }

LabelSet VarTable::all_labels() const {
  std::vector<Label> ls;
  for (const auto &v : vars_) ls.insert(ls.end(), v.labels.begin(), v.labels.end());
  return LabelSet(std::move(ls));
}

LabelResolver VarTable::resolver() const {
  return [this](std::string_view ref) { return resolve(ref); };
}

LabelNamer VarTable::namer() const {
  return [this](int id) { return label_name(id); };
}

// ---------------------------------------------------------------------------
// Measurements

bool Measurement::is_complete(double tol) const {
  if (ops.empty()) return false;
  ComplexMatrix sum(labels.dim(), labels.dim());
  for (const auto &m : ops) {
    if (m.out_labels() != labels || m.in_labels() != labels) return false;
    sum += m.matrix().adjoint() * m.matrix();
  }
  return approx_equal(sum, ComplexMatrix::identity(labels.dim()), tol);
}

Measurement basis_measurement(const VarTable &vars, const std::vector<std::string> &refs) {
  Measurement m;
  m.name = "meas";
  m.vars = refs;
  std::vector<Label> order;
  for (const auto &r : refs) {
    const auto ls = vars.resolve(r);
    order.insert(order.end(), ls.begin(), ls.end());
  }
  m.labels = LabelSet(order);
  const std::size_t d = m.labels.dim();
  for (std::size_t t = 0; t < d; ++t) {
    const auto k = LabelledOperator::basis_ket(order, t);
    m.ops.push_back(compose(k, k.adjoint()));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Program

struct Program::Node {
  Kind kind;
  std::vector<Program> children;  // Seq: two; Cond: branches; While: body
  std::vector<std::string> vars;
  std::optional<LabelledOperator> op;
  std::string text;
  std::optional<Measurement> meas;
  std::size_t cont = 0;
};

Program Program::abort() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Abort;
  return Program(n);
}

Program Program::skip() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Skip;
  return Program(n);
}

Program Program::seq(Program first, Program second) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Seq;
  n->children = {std::move(first), std::move(second)};
  return Program(n);
}

Program Program::init(std::vector<std::string> vars, LabelledOperator state, std::string text) {
  if (!state.is_square() || !is_density(state.matrix())) {
    throw Error(ErrorCode::TypeError, "initial state is not a density operator");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Init;
  n->vars = std::move(vars);
  n->op = std::move(state);
  n->text = std::move(text);
  return Program(n);
}

Program Program::unitary(std::vector<std::string> vars, LabelledOperator u, std::string gate_text) {
  if (!u.is_square() || !is_unitary(u.matrix())) throw Error(ErrorCode::NotUnitary, gate_text);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unitary;
  n->vars = std::move(vars);
  n->op = std::move(u);
  n->text = std::move(gate_text);
  return Program(n);
}

Program Program::cond(Measurement m, std::vector<Program> branches) {
  if (branches.size() != m.outcomes()) {
    throw Error(ErrorCode::TypeError, "conditional has " + std::to_string(branches.size()) + " branches for " +
                                          std::to_string(m.outcomes()) + " outcomes");
  }
  if (!m.is_complete()) throw Error(ErrorCode::TypeError, "measurement " + m.name + " is not complete");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cond;
  n->meas = std::move(m);
  n->children = std::move(branches);
  return Program(n);
}

Program Program::while_loop(Measurement m, std::size_t cont, Program body) {
  if (m.outcomes() != 2) throw Error(ErrorCode::TypeError, "while guard needs a two-outcome measurement");
  if (cont > 1) throw Error(ErrorCode::TypeError, "while guard value must be 0 or 1");
  if (!m.is_complete()) throw Error(ErrorCode::TypeError, "measurement " + m.name + " is not complete");
  auto n = std::make_shared<Node>();
  n->kind = Kind::While;
  n->meas = std::move(m);
  n->cont = cont;
  n->children = {std::move(body)};
  return Program(n);
}

Program::Kind Program::kind() const noexcept { return node_->kind; }

namespace {
[[noreturn]] void wrong_kind(const char *what) { throw Error(ErrorCode::TypeError, std::string("program has no ") + what); }
}  // namespace

const Program &Program::first() const {
  if (kind() != Kind::Seq) wrong_kind("first part");
  return node_->children[0];
}
const Program &Program::second() const {
  if (kind() != Kind::Seq) wrong_kind("second part");
  return node_->children[1];
}
const std::vector<std::string> &Program::vars() const { return node_->vars; }
const LabelledOperator &Program::op() const {
  if (!node_->op) wrong_kind("operator");
  return *node_->op;
}
const std::string &Program::text() const { return node_->text; }
const Measurement &Program::measurement() const {
  if (!node_->meas) wrong_kind("measurement");
  return *node_->meas;
}
const std::vector<Program> &Program::branches() const {
  if (kind() != Kind::Cond) wrong_kind("branches");
  return node_->children;
}
const Program &Program::body() const {
  if (kind() != Kind::While) wrong_kind("loop body");
  return node_->children[0];
}
std::size_t Program::cont() const {
  if (kind() != Kind::While) wrong_kind("loop guard");
  return node_->cont;
}

bool Program::contains_while() const {
  if (kind() == Kind::While) return true;
  for (const auto &c : node_->children)
    if (c.contains_while()) return true;
  return false;
}

bool Program::contains_abort() const {
  if (kind() == Kind::Abort) return true;
  for (const auto &c : node_->children)
    if (c.contains_abort()) return true;
  return false;
}

std::size_t Program::size() const {
  std::size_t n = 1;
  for (const auto &c : node_->children) n += c.size();
  return n;
}

Program desugar_for(const std::vector<Program> &bodies) {
  if (bodies.empty()) return Program::skip();
  Program p = bodies.back();
  for (std::size_t i = bodies.size() - 1; i-- > 0;) p = Program::seq(bodies[i], p);
  return p;
}

LabelSet footprint(const Program &p) {
  switch (p.kind()) {
    case Program::Kind::Abort:
    case Program::Kind::Skip: return {};
    case Program::Kind::Seq: return set_union(footprint(p.first()), footprint(p.second()));
    case Program::Kind::Init:
    case Program::Kind::Unitary: return p.op().out_labels();
    case Program::Kind::Cond: {
      LabelSet s = p.measurement().labels;
      for (const auto &b : p.branches()) s = set_union(s, footprint(b));
      return s;
    }
    case Program::Kind::While: return set_union(p.measurement().labels, footprint(p.body()));
  }
  return {};
}

Program approximate_while(const Program &loop, std::size_t k) {
  if (loop.kind() != Program::Kind::While) throw Error(ErrorCode::NotAWhile, "approximation of a non-loop");
  Program p = Program::abort();
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Program> branches(2, Program::skip());
    branches[loop.cont()] = Program::seq(loop.body(), p);
    p = Program::cond(loop.measurement(), branches);
  }
  return p;
}

namespace {

void seq_parts(const Program &p, std::vector<const Program *> &out) {
  if (p.kind() == Program::Kind::Seq) {
    seq_parts(p.first(), out);
    seq_parts(p.second(), out);
  } else {
    out.push_back(&p);
  }
}

}  // namespace

// `;` is compared up to associativity.
bool structurally_equal(const Program &a, const Program &b, double tol) {
  if (a.kind() == Program::Kind::Seq || b.kind() == Program::Kind::Seq) {
    std::vector<const Program *> xs, ys;
    seq_parts(a, xs);
    seq_parts(b, ys);
    if (xs.size() != ys.size() || xs.size() < 2) return false;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (!structurally_equal(*xs[i], *ys[i], tol)) return false;
    return true;
  }
  if (a.kind() != b.kind()) return false;
  auto same_op = [&](const LabelledOperator &x, const LabelledOperator &y) { return approx_eq(x, y, tol); };
  auto same_meas = [&](const Measurement &x, const Measurement &y) {
    if (x.name != y.name || x.vars != y.vars || x.ops.size() != y.ops.size()) return false;
    for (std::size_t i = 0; i < x.ops.size(); ++i)
      if (!same_op(x.ops[i], y.ops[i])) return false;
    return true;
  };
  switch (a.kind()) {
    case Program::Kind::Abort:
    case Program::Kind::Skip: return true;
    case Program::Kind::Seq: return false;
    case Program::Kind::Init:
    case Program::Kind::Unitary: return a.vars() == b.vars() && same_op(a.op(), b.op());
    case Program::Kind::Cond: {
      if (!same_meas(a.measurement(), b.measurement())) return false;
      for (std::size_t i = 0; i < a.branches().size(); ++i)
        if (!structurally_equal(a.branches()[i], b.branches()[i], tol)) return false;
      return true;
    }
    case Program::Kind::While:
      return a.cont() == b.cont() && same_meas(a.measurement(), b.measurement()) &&
             structurally_equal(a.body(), b.body(), tol);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string lhs_text(const std::vector<std::string> &vars) {
  if (vars.size() == 1) return vars[0];
  std::string s = "[";
  for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? ", " : "") + vars[i];
  return s + "]";
}

std::string args_text(const std::vector<std::string> &vars) {
  return vars.size() == 1 ? "[" + vars[0] + "]" : lhs_text(vars);
}

void print_into(std::string &out, const Program &p, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (p.kind()) {
    case Program::Kind::Abort: out += pad + "abort;\n"; break;
    case Program::Kind::Skip: out += pad + "skip;\n"; break;
    case Program::Kind::Seq:
      print_into(out, p.first(), indent);
      print_into(out, p.second(), indent);
      break;
    case Program::Kind::Init: out += pad + lhs_text(p.vars()) + " := " + p.text() + ";\n"; break;
    case Program::Kind::Unitary:
      out += pad + lhs_text(p.vars()) + " := " + p.text() + args_text(p.vars()) + ";\n";
      break;
    case Program::Kind::Cond: {
      const auto &m = p.measurement();
      out += pad + "if " + m.name + args_text(m.vars) + " {\n";
      for (std::size_t i = 0; i < p.branches().size(); ++i) {
        out += pad + "  " + std::to_string(i) + " -> {\n";
        print_into(out, p.branches()[i], indent + 2);
        out += pad + "  }\n";
      }
      out += pad + "}\n";
      break;
    }
    case Program::Kind::While: {
      const auto &m = p.measurement();
      out += pad + "while " + m.name + args_text(m.vars) + " = " + std::to_string(p.cont()) + " {\n";
      print_into(out, p.body(), indent + 1);
      out += pad + "}\n";
      break;
    }
  }
}

std::string type_text(const QType &t) {
  switch (t.kind()) {
    case QType::Kind::Bool: return "bool";
    case QType::Kind::ZN: return "int<" + std::to_string(t.modulus()) + ">";
    case QType::Kind::Pair: {
      const auto c = t.components();
      return "(" + type_text(c[0]) + " * " + type_text(c[1]) + ")";
    }
    case QType::Kind::Tuple: return "(" + type_text(t.components()[0]) + ")^" + std::to_string(t.arity());
  }
  return "?";
}

}  // namespace

std::string pretty_print(const Program &p, const VarTable &, int indent) {
  std::string out;
  print_into(out, p, indent);
  return out;
}

std::string print_declarations(const VarTable &vars) {
  std::string out;
  for (const auto &v : vars.variables()) out += "var " + v.name + " : " + type_text(v.type) + ";\n";
  return out;
}

// ---------------------------------------------------------------------------
// Sidecar registry

void GateRegistry::add_gate(const std::string &name, ComplexMatrix m) {
  if (!is_unitary(m)) throw Error(ErrorCode::NotUnitary, "sidecar gate " + name);
  gates_[name] = std::move(m);
}

void GateRegistry::add_measurement(const std::string &name, std::vector<ComplexMatrix> ops) {
  if (ops.empty()) throw Error(ErrorCode::BadParam, "measurement " + name + " has no outcomes");
  measurements_[name] = std::move(ops);
}

namespace {
std::optional<Scalar> scalar_from_json(const nlohmann::json &z) {
  if (z.is_number()) return Scalar(z.get<double>(), 0.0);
  if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
    return Scalar(z[0].get<double>(), z[1].get<double>());
  }
  return std::nullopt;
}

std::optional<ComplexMatrix> try_flat(const nlohmann::json &j) {
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(j.size()))));
  if (d * d != j.size()) return std::nullopt;
  std::vector<Scalar> e;
  for (const auto &z : j) {
    auto v = scalar_from_json(z);
    if (!v) return std::nullopt;
    e.push_back(*v);
  }
  return ComplexMatrix(d, d, std::move(e));
}

std::optional<ComplexMatrix> try_rows(const nlohmann::json &j) {
  const std::size_t d = j.size();
  std::vector<Scalar> e;
  for (const auto &row : j) {
    if (!row.is_array() || row.size() != d) return std::nullopt;
    for (const auto &z : row) {
      auto v = scalar_from_json(z);
      if (!v) return std::nullopt;
      e.push_back(*v);
    }
  }
  return ComplexMatrix(d, d, std::move(e));
}

// flat d*d list of scalars, or d rows of d scalars
std::optional<ComplexMatrix> try_matrix(const nlohmann::json &j) {
  if (!j.is_array() || j.empty()) return std::nullopt;
  if (auto m = try_flat(j)) return m;
  return try_rows(j);
}
}  // namespace

void GateRegistry::load_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text, nullptr, true, true);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::BadParam, std::string("sidecar file: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::BadParam, "sidecar file must hold an object");
  for (const auto &[name, val] : j.items()) {
    if (auto m = try_matrix(val)) {
      add_gate(name, std::move(*m));
      continue;
    }
    // otherwise a list of measurement operators
    if (!val.is_array() || val.empty()) throw Error(ErrorCode::BadParam, "sidecar entry " + name + " is not a matrix");
    std::vector<ComplexMatrix> ops;
    for (const auto &op : val) {
      auto m = try_matrix(op);
      if (!m) throw Error(ErrorCode::ShapeMismatch, "sidecar entry " + name + " is not a square matrix or a list of them");
      ops.push_back(std::move(*m));
    }
    add_measurement(name, std::move(ops));
  }
}

const ComplexMatrix *GateRegistry::gate(const std::string &name) const {
  auto it = gates_.find(name);
  return it == gates_.end() ? nullptr : &it->second;
}

const std::vector<ComplexMatrix> *GateRegistry::measurement(const std::string &name) const {
  auto it = measurements_.find(name);
  return it == measurements_.end() ? nullptr : &it->second;
}

}  // namespace qwv
