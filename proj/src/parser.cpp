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

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "qwv/error.hpp"
#include "qwv/qwhile.hpp"

namespace qwv {

namespace {

enum class Tok { Ident, Num, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  double value = 0.0;
  int line = 1;
  int col = 1;
  std::size_t offset = 0;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (s.substr(i, 2) == "//") {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::Sym, "", 0.0, line, col, i};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j + 1 < s.size() && s[j] == '.' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          j = k;
          while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        }
      }
      t.kind = Tok::Num;
      t.text = std::string(s.substr(i, j - i));
      t.value = std::stod(t.text);
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
    } else {
      static const char *const two[] = {":=", "->", ".."};
      bool matched = false;
      for (const char *op : two) {
        if (s.substr(i, 2) == op) {
          t.text = op;
          advance(2);
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (std::string_view("{}[]()<>|;:,=+-*/%^").find(c) == std::string_view::npos) {
          throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
        }
        t.text = std::string(1, c);
        advance(1);
      }
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::End, "", 0.0, line, col, s.size()});
  return out;
}

struct Value {
  bool is_tuple = false;
  long number = 0;
  std::vector<Value> items;
};

std::string value_text(const Value &v) {
  if (!v.is_tuple) return std::to_string(v.number);
  std::string s = "(";
  for (std::size_t i = 0; i < v.items.size(); ++i) s += (i ? ", " : "") + value_text(v.items[i]);
  return s + ")";
}

std::size_t product(const std::vector<QType> &ts) {
  std::size_t d = 1;
  for (const auto &t : ts) d *= t.dimension();
  return d;
}

struct GateExpr {
  std::string name;
  std::vector<double> params;
  std::shared_ptr<GateExpr> inner;
  bool dag = false;
};

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string gate_text(const GateExpr &g) {
  std::string s = g.name;
  if (g.inner) {
    s += "(" + gate_text(*g.inner) + ")";
  } else if (!g.params.empty()) {
    s += "(";
    for (std::size_t i = 0; i < g.params.size(); ++i) s += (i ? ", " : "") + format_real(g.params[i]);
    s += ")";
  }
  if (g.dag) s += "^dag";
  return s;
}

class ProgramParser {
 public:
  ProgramParser(std::string_view src, VarTable &vars, const GateRegistry &reg, bool allow_decls)
      : src_(src), toks_(lex(src)), vars_(vars), reg_(reg), allow_decls_(allow_decls) {}

  std::vector<Program> parse_all() {
    std::vector<Program> stmts;
    while (peek().kind != Tok::End) {
      if (is_ident("var")) {
        if (!allow_decls_) fail("declarations are not allowed here");
        if (!stmts.empty()) fail("declarations must precede statements");
        declaration();
      } else {
        stmts.push_back(statement());
      }
    }
    return stmts;
  }

 private:
  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t k_ = 0;
  VarTable &vars_;
  const GateRegistry &reg_;
  bool allow_decls_;
  std::map<std::string, long> env_;

  const Token &peek(std::size_t ahead = 0) const { return toks_[std::min(k_ + ahead, toks_.size() - 1)]; }
  bool is_sym(const char *s) const { return peek().kind == Tok::Sym && peek().text == s; }
  bool is_ident(const char *s) const { return peek().kind == Tok::Ident && peek().text == s; }
  [[noreturn]] void fail(const std::string &msg) const { throw SyntaxError(peek().line, peek().col, msg); }
  void expect(const char *s) {
    if (!is_sym(s)) fail(std::string("expected '") + s + "'" + (peek().kind == Tok::End ? "" : " before '" + peek().text + "'"));
    ++k_;
  }
  void expect_ident(const char *s) {
    if (!is_ident(s)) fail(std::string("expected '") + s + "'");
    ++k_;
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected a name");
    return toks_[k_++].text;
  }

  // --- numeric expressions -------------------------------------------------

  double num_expr() {
    double l = num_term();
    while (is_sym("+") || is_sym("-")) {
      const bool plus = is_sym("+");
      ++k_;
      const double r = num_term();
      l = plus ? l + r : l - r;
    }
    return l;
  }

  double num_term() {
    double l = num_unary();
    while (is_sym("*") || is_sym("/") || is_sym("%")) {
      const std::string op = toks_[k_++].text;
      const double r = num_unary();
      if (op == "*") {
        l *= r;
      } else if (op == "/") {
        if (r == 0.0) fail("division by zero");
        l /= r;
      } else {
        if (r == 0.0) fail("modulo by zero");
        l = std::fmod(std::fmod(l, r) + r, r);
      }
    }
    return l;
  }

  double num_unary() {
    if (is_sym("-")) {
      ++k_;
      return -num_unary();
    }
    const double base = num_primary();
    if (is_sym("^") && !(peek(1).kind == Tok::Ident && peek(1).text == "dag")) {
      ++k_;
      return std::pow(base, num_unary());
    }
    return base;
  }

  double num_primary() {
    const Token t = peek();
    if (t.kind == Tok::Num) {
      ++k_;
      return t.value;
    }
    if (is_sym("(")) {
      ++k_;
      const double v = num_expr();
      expect(")");
      return v;
    }
    if (t.kind == Tok::Ident) {
      ++k_;
      if (auto it = env_.find(t.text); it != env_.end()) return static_cast<double>(it->second);
      if (t.text == "pi") return std::numbers::pi;
      if (t.text == "sqrt") {
        expect("(");
        const double v = num_expr();
        expect(")");
        return std::sqrt(v);
      }
      --k_;
      fail("unknown name '" + t.text + "' in expression");
    }
    fail("expected a number");
  }

  long int_expr() {
    const Token at = peek();
    const double v = num_expr();
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) throw SyntaxError(at.line, at.col, "expected an integer");
    return static_cast<long>(r);
  }

  Value value() {
    if (is_sym("(")) {
      // tuple if a top-level comma follows
      std::size_t depth = 0, j = k_;
      bool tuple = false;
      for (; j < toks_.size(); ++j) {
        const auto &t = toks_[j];
        if (t.kind != Tok::Sym) continue;
        if (t.text == "(") ++depth;
        if (t.text == ")" && --depth == 0) break;
        if (t.text == "," && depth == 1) tuple = true;
      }
      if (tuple) {
        ++k_;
        Value v{true, 0, {value()}};
        while (is_sym(",")) {
          ++k_;
          v.items.push_back(value());
        }
        expect(")");
        return v;
      }
    }
    return Value{false, int_expr(), {}};
  }

  // Flat basis index of `v` as a value of the product of `types`.
  std::size_t encode(const Value &v, const std::vector<QType> &types) {
    const std::size_t dim = product(types);
    if (!v.is_tuple) {
      if (v.number < 0 || static_cast<std::size_t>(v.number) >= dim) {
        throw Error(ErrorCode::TypeError, "value " + std::to_string(v.number) + " outside a type of size " + std::to_string(dim));
      }
      return static_cast<std::size_t>(v.number);
    }
    std::vector<std::vector<QType>> parts;
    if (v.items.size() == types.size()) {
      for (const auto &t : types) parts.push_back({t});
    } else if (types.size() == 1 && v.items.size() == types[0].components().size()) {
      for (const auto &t : types[0].components()) parts.push_back({t});
    } else {
      throw Error(ErrorCode::TypeError, "tuple " + value_text(v) + " does not match the type");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto &p = parts[i];
      idx = idx * product(p) + encode(v.items[i], p);
    }
    return idx;
  }

  // --- declarations ----------------------------------------------------------

  void declaration() {
    expect_ident("var");
    std::vector<std::string> names{ident()};
    while (is_sym(",")) {
      ++k_;
      names.push_back(ident());
    }
    expect(":");
    const QType t = type();
    expect(";");
    for (const auto &n : names) vars_.declare(n, t);
  }

  QType type() {
    QType t = type_post();
    while (is_sym("*")) {
      ++k_;
      t = QType::pair(t, type_post());
    }
    return t;
  }

  QType type_post() {
    QType t = type_prim();
    while (is_sym("^")) {
      ++k_;
      const long n = int_expr();
      if (n < 1) fail("tuple arity must be positive");
      t = QType::tuple(t, static_cast<std::size_t>(n));
    }
    return t;
  }

  QType type_prim() {
    if (is_ident("bool")) {
      ++k_;
      return QType::boolean();
    }
    if (is_ident("int")) {
      ++k_;
      expect("<");
      const long n = int_expr();
      expect(">");
      if (n < 1) fail("int<n> needs n >= 1");
      return QType::zn(static_cast<std::size_t>(n));
    }
    if (is_sym("(")) {
      ++k_;
      QType t = type();
      expect(")");
      return t;
    }
    fail("expected a type");
  }

  // --- references -------------------------------------------------------------

  std::string ref() {
    const Token at = peek();
    std::string name = ident();
    while (is_sym("[")) {
      ++k_;
      name += "[" + std::to_string(int_expr()) + "]";
      expect("]");
    }
    if (!vars_.has(name)) throw Error(ErrorCode::UnknownVariable, name + " at " + std::to_string(at.line) + ":" + std::to_string(at.col));
    return name;
  }

  std::vector<std::string> ref_list_bracketed() {
    expect("[");
    std::vector<std::string> rs{ref()};
    while (is_sym(",")) {
      ++k_;
      rs.push_back(ref());
    }
    expect("]");
    return rs;
  }

  std::vector<std::string> lhs() {
    if (is_sym("[")) return ref_list_bracketed();
    return {ref()};
  }

  std::vector<Label> labels_checked(const std::vector<std::string> &refs) {
    std::vector<Label> out;
    for (const auto &r : refs) {
      const auto ls = vars_.resolve(r);
      out.insert(out.end(), ls.begin(), ls.end());
    }
    try {
      (void)LabelSet(out);
    } catch (const Error &) {
      std::string s;
      for (const auto &r : refs) s += (s.empty() ? "" : ", ") + r;
      throw Error(ErrorCode::DisjointnessError, "variables [" + s + "] overlap");
    }
    return out;
  }

  std::vector<QType> types_of(const std::vector<std::string> &refs) const {
    std::vector<QType> ts;
    for (const auto &r : refs) ts.push_back(vars_.type_of(r));
    return ts;
  }

  // --- statements -------------------------------------------------------------

  Program block() {
    if (!is_sym("{")) return statement();
    ++k_;
    std::vector<Program> ps;
    while (!is_sym("}")) {
      if (peek().kind == Tok::End) fail("unterminated block");
      ps.push_back(statement());
    }
    ++k_;
    return desugar_for(ps);
  }

  void skip_block() {
    if (!is_sym("{")) fail("expected '{'");
    int depth = 0;
    do {
      if (peek().kind == Tok::End) fail("unterminated block");
      if (is_sym("{")) ++depth;
      if (is_sym("}")) --depth;
      ++k_;
    } while (depth > 0);
  }

  Program statement() {
    if (is_ident("skip")) {
      ++k_;
      expect(";");
      return Program::skip();
    }
    if (is_ident("abort")) {
      ++k_;
      expect(";");
      return Program::abort();
    }
    if (is_ident("if")) return conditional();
    if (is_ident("while")) return loop();
    if (is_ident("for")) return for_loop();
    return assignment();
  }

  Measurement guard() {
    const std::string name = ident();
    const auto refs = ref_list_bracketed();
    const auto order = labels_checked(refs);
    if (name == "meas") return basis_measurement(vars_, refs);
    const auto *ops = reg_.measurement(name);
    if (!ops) throw Error(ErrorCode::UnknownGate, "measurement " + name);
    Measurement m;
    m.name = name;
    m.vars = refs;
    m.labels = LabelSet(order);
    for (const auto &op : *ops) {
      if (op.rows() != m.labels.dim()) throw Error(ErrorCode::TypeError, "measurement " + name + " has the wrong dimension");
      m.ops.push_back(LabelledOperator::on(order, op));
    }
    if (!m.is_complete()) throw Error(ErrorCode::TypeError, "measurement " + name + " is not complete");
    return m;
  }

  std::size_t outcome(const Measurement &m, const Value &v) {
    if (m.name == "meas") return encode(v, types_of(m.vars));
    if (v.is_tuple || v.number < 0 || static_cast<std::size_t>(v.number) >= m.outcomes()) {
      throw Error(ErrorCode::TypeError, "outcome " + value_text(v) + " of measurement " + m.name);
    }
    return static_cast<std::size_t>(v.number);
  }

  Program conditional() {
    expect_ident("if");
    Measurement m = guard();
    expect("{");
    std::vector<std::optional<Program>> branches(m.outcomes());
    std::optional<Program> otherwise;
    while (!is_sym("}")) {
      if (is_ident("else")) {
        ++k_;
        expect("->");
        if (otherwise) fail("duplicate else branch");
        otherwise = block();
        continue;
      }
      const Token at = peek();
      const std::size_t o = outcome(m, value());
      expect("->");
      if (branches[o]) throw SyntaxError(at.line, at.col, "duplicate branch for outcome " + std::to_string(o));
      branches[o] = block();
    }
    ++k_;
    std::vector<Program> bs;
    for (std::size_t o = 0; o < branches.size(); ++o) {
      if (branches[o]) {
        bs.push_back(*branches[o]);
      } else if (otherwise) {
        bs.push_back(*otherwise);
      } else {
        throw Error(ErrorCode::TypeError, "no branch for outcome " + std::to_string(o) + " of " + m.name);
      }
    }
    return Program::cond(std::move(m), std::move(bs));
  }

  Program loop() {
    expect_ident("while");
    Measurement m = guard();
    if (m.outcomes() != 2) throw Error(ErrorCode::TypeError, "while guard " + m.name + " must have two outcomes");
    expect("=");
    const std::size_t b = outcome(m, value());
    if (is_ident("do")) ++k_;
    Program body = block();
    return Program::while_loop(std::move(m), b, std::move(body));
  }

  Program for_loop() {
    expect_ident("for");
    const std::string var = ident();
    std::vector<long> values;
    if (is_sym("<")) {
      ++k_;
      const long n = int_expr();
      for (long j = 0; j < n; ++j) values.push_back(j);
    } else {
      expect_ident("in");
      if (is_sym("[")) {
        ++k_;
        if (!is_sym("]")) {
          values.push_back(int_expr());
          while (is_sym(",")) {
            ++k_;
            values.push_back(int_expr());
          }
        }
        expect("]");
      } else {
        const long lo = int_expr();
        expect("..");
        const long hi = int_expr();
        for (long j = lo; j < hi; ++j) values.push_back(j);
      }
    }
    const std::size_t start = k_;
    const auto saved = env_;
    std::vector<Program> bodies;
    for (long v : values) {
      k_ = start;
      env_[var] = v;
      if (!is_sym("{")) fail("expected '{'");
      bodies.push_back(block());
    }
    env_ = saved;
    if (values.empty()) {
      k_ = start;
      skip_block();
    }
    return desugar_for(bodies);
  }

  GateExpr gate_expr() {
    GateExpr g;
    g.name = ident();
    if (is_sym("(")) {
      ++k_;
      if (g.name == "CU") {
        g.inner = std::make_shared<GateExpr>(gate_expr());
      } else {
        g.params.push_back(num_expr());
        while (is_sym(",")) {
          ++k_;
          g.params.push_back(num_expr());
        }
      }
      expect(")");
    }
    if (is_sym("^")) {
      ++k_;
      expect_ident("dag");
      g.dag = true;
    }
    return g;
  }

  ComplexMatrix gate_matrix(const GateExpr &g, const std::vector<std::size_t> &dims) {
    ComplexMatrix m;
    if (const ComplexMatrix *custom = reg_.gate(g.name)) {
      if (!g.params.empty() || g.inner) throw Error(ErrorCode::BadParam, "sidecar gate " + g.name + " takes no parameters");
      m = *custom;
      const std::size_t d = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
      if (m.rows() != d) throw Error(ErrorCode::TypeError, "gate " + g.name + " has dimension " + std::to_string(m.rows()) + ", variables have " + std::to_string(d));
    } else if (g.name == "CU") {
      if (!g.inner) throw Error(ErrorCode::BadParam, "CU needs a gate argument");
      if (dims.size() < 2) throw Error(ErrorCode::TypeError, "CU needs a control and a target");
      const std::vector<std::size_t> rest(dims.begin() + 1, dims.end());
      GateSpec inner{g.inner->name, {}, gate_matrix(*g.inner, rest), rest.size()};
      const std::size_t d = std::accumulate(rest.begin(), rest.end(), std::size_t{1}, std::multiplies<>());
      try {
        m = builtin("CU", {}, {dims[0], d}, &inner).matrix;
      } catch (const Error &e) {
        throw Error(ErrorCode::TypeError, e.what());
      }
    } else {
      if (!is_builtin_gate(g.name)) throw Error(ErrorCode::UnknownGate, g.name);
      try {
        m = builtin(g.name, g.params, dims).matrix;
      } catch (const Error &e) {
        if (e.code() == ErrorCode::UnknownGate) throw;
        throw Error(ErrorCode::TypeError, e.what());
      }
    }
    return g.dag ? m.adjoint() : m;
  }

  Program assignment() {
    const Token at = peek();
    const auto lhs_refs = lhs();
    const auto order = labels_checked(lhs_refs);
    expect(":=");
    if (is_sym("|")) {
      ++k_;
      const Value v = value();
      expect(">");
      expect(";");
      const std::size_t idx = encode(v, types_of(lhs_refs));
      const auto k = LabelledOperator::basis_ket(order, idx);
      return Program::init(lhs_refs, compose(k, k.adjoint()), "|" + value_text(v) + ">");
    }
    if (is_ident("state") && peek(1).kind == Tok::Sym && peek(1).text == "(") {
      k_ += 2;
      const std::size_t begin = peek().offset;
      int depth = 1;
      while (depth > 0) {
        if (peek().kind == Tok::End) fail("unterminated state(...)");
        if (is_sym("(")) ++depth;
        if (is_sym(")")) --depth;
        if (depth > 0) ++k_;
      }
      const std::string text(src_.substr(begin, peek().offset - begin));
      ++k_;
      expect(";");
      LabelledOperator ket;
      try {
        ket = parse_assertion(text, vars_.resolver());
      } catch (const SyntaxError &e) {
        throw SyntaxError(at.line, at.col, std::string("in state(...): ") + e.what());
      }
      if (!ket.is_ket() || ket.out_labels() != LabelSet(order)) {
        throw Error(ErrorCode::TypeError, "state(...) is not a ket on the assigned variables");
      }
      if (std::abs(ket.norm() - 1.0) > 1e-9) throw Error(ErrorCode::TypeError, "state(...) is not normalized");
      return Program::init(lhs_refs, compose(ket, ket.adjoint()),
                           "state(" + render_assertion(ket, vars_.namer()) + ")");
    }
    const GateExpr g = gate_expr();
    const auto args = is_sym("[") ? ref_list_bracketed() : std::vector<std::string>{};
    expect(";");
    if (args != lhs_refs) {
      throw Error(ErrorCode::TypeError, "unitary must be applied to the assigned variables at " +
                                            std::to_string(at.line) + ":" + std::to_string(at.col));
    }
    std::vector<std::size_t> dims;
    for (const auto &r : lhs_refs) dims.push_back(vars_.type_of(r).dimension());
    const ComplexMatrix m = gate_matrix(g, dims);
    return Program::unitary(lhs_refs, LabelledOperator::on(order, m), gate_text(g));
  }
};

}  // namespace

ParsedProgram parse_program(std::string_view source, const GateRegistry &registry) {
  ParsedProgram out;
  ProgramParser p(source, out.vars, registry, true);
  out.statements = p.parse_all();
  out.program = desugar_for(out.statements);
  return out;
}

Program parse_statements(std::string_view source, const VarTable &vars, const GateRegistry &registry) {
  VarTable copy = vars;
  ProgramParser p(source, copy, registry, false);
  return desugar_for(p.parse_all());
}

}  // namespace qwv
