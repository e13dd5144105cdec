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
#include <optional>
#include <string>
#include <vector>

#include "qwv/dirac.hpp"
#include "qwv/error.hpp"

namespace qwv {

namespace {

enum class Tok { Num, Ident, Sym, Tensor, DotDot, End };

struct Token {
  Tok kind;
  std::string text;
  double value = 0.0;
  std::size_t pos = 0;
};

const char *const kFunctions[] = {"ket", "bra", "proj", "I", "adj", "conj", "sqrt", "exp", "cos", "sin", "sum"};

bool is_function(const std::string &s) {
  for (const char *f : kFunctions)
    if (s == f) return true;
  return false;
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ends_operand = [&]() {
    if (out.empty()) return false;
    const Token &t = out.back();
    if (t.kind == Tok::Num) return true;
    if (t.kind == Tok::Ident) return !is_function(t.text);
    return t.kind == Tok::Sym && (t.text == ")" || t.text == "]");
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (s.substr(i, 3) == "(x)" && ends_operand()) {
      out.push_back({Tok::Tensor, "(x)", 0, start});
      i += 3;
    } else if (s.substr(i, 3) == "\xE2\x8A\x97") {  // ⊗
      out.push_back({Tok::Tensor, "(x)", 0, start});
      i += 3;
    } else if (s.substr(i, 2) == "..") {
      out.push_back({Tok::DotDot, "..", 0, start});
      i += 2;
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i + 1 < s.size() && s[i] == '.' && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
          i = j;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        }
      }
      const std::string text(s.substr(start, i - start));
      out.push_back({Tok::Num, text, std::stod(text), start});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), 0, start});
    } else if (std::string_view("+-*/^(),[]").find(c) != std::string_view::npos) {
      out.push_back({Tok::Sym, std::string(1, c), 0, start});
      ++i;
    } else {
      throw SyntaxError(1, static_cast<int>(start) + 1, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", 0, s.size()});
  return out;
}

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct VarRef {
  std::string base;
  std::vector<NodePtr> indices;
};

struct Node {
  enum Kind { Number, Name, Neg, Add, Sub, Mul, Div, Tensor, Pow, Call, Basis, Ident, Sum, Tuple } kind;
  Scalar number{};
  std::string name;             // Name, Call, Basis (ket/bra/proj), Sum variable
  std::vector<NodePtr> args;    // operands / call arguments / tuple items
  std::vector<VarRef> vars;     // Basis, Ident
  std::size_t pos = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  NodePtr parse() {
    NodePtr e = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::size_t k_ = 0;

  const Token &peek() const { return toks_[k_]; }
  bool sym(const char *s) const { return peek().kind == Tok::Sym && peek().text == s; }
  [[noreturn]] void fail(const std::string &msg) const {
    throw SyntaxError(1, static_cast<int>(peek().pos) + 1, msg);
  }
  void expect(const char *s) {
    if (!sym(s)) fail(std::string("expected '") + s + "'");
    ++k_;
  }

  static NodePtr make(Node::Kind kind, std::vector<NodePtr> args, std::size_t pos) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->args = std::move(args);
    n->pos = pos;
    return n;
  }

  NodePtr expr() {
    NodePtr l = term();
    while (sym("+") || sym("-")) {
      const auto kind = sym("+") ? Node::Add : Node::Sub;
      const std::size_t pos = peek().pos;
      ++k_;
      l = make(kind, {l, term()}, pos);
    }
    return l;
  }

  NodePtr term() {
    NodePtr l = tensor();
    while (sym("*") || sym("/")) {
      const auto kind = sym("*") ? Node::Mul : Node::Div;
      const std::size_t pos = peek().pos;
      ++k_;
      l = make(kind, {l, tensor()}, pos);
    }
    return l;
  }

  NodePtr tensor() {
    NodePtr l = unary();
    while (peek().kind == Tok::Tensor) {
      const std::size_t pos = peek().pos;
      ++k_;
      l = make(Node::Tensor, {l, unary()}, pos);
    }
    return l;
  }

  NodePtr unary() {
    if (sym("-")) {
      const std::size_t pos = peek().pos;
      ++k_;
      return make(Node::Neg, {unary()}, pos);
    }
    if (sym("+")) {
      ++k_;
      return unary();
    }
    NodePtr base = primary();
    if (sym("^")) {
      const std::size_t pos = peek().pos;
      ++k_;
      return make(Node::Pow, {base, unary()}, pos);
    }
    return base;
  }

  VarRef var_ref() {
    if (peek().kind != Tok::Ident) fail("expected a variable name");
    VarRef v{toks_[k_++].text, {}};
    while (sym("[")) {
      ++k_;
      v.indices.push_back(expr());
      expect("]");
    }
    return v;
  }

  std::vector<VarRef> var_list() {
    std::vector<VarRef> vs;
    if (sym("[")) {
      ++k_;
      vs.push_back(var_ref());
      while (sym(",")) {
        ++k_;
        vs.push_back(var_ref());
      }
      expect("]");
    } else {
      vs.push_back(var_ref());
    }
    return vs;
  }

  NodePtr primary() {
    const Token t = peek();
    if (t.kind == Tok::Num) {
      ++k_;
      auto n = std::make_shared<Node>();
      n->kind = Node::Number;
      n->number = t.value;
      n->pos = t.pos;
      return n;
    }
    if (sym("(")) {
      ++k_;
      std::vector<NodePtr> items{expr()};
      while (sym(",")) {
        ++k_;
        items.push_back(expr());
      }
      expect(")");
      if (items.size() == 1) return items[0];
      return make(Node::Tuple, std::move(items), t.pos);
    }
    if (t.kind != Tok::Ident) fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    ++k_;
    if (!is_function(t.text)) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Name;
      n->name = t.text;
      n->pos = t.pos;
      return n;
    }
    expect("(");
    auto n = std::make_shared<Node>();
    n->name = t.text;
    n->pos = t.pos;
    if (t.text == "ket" || t.text == "bra" || t.text == "proj") {
      n->kind = Node::Basis;
      n->vars = var_list();
      expect(",");
      n->args.push_back(expr());
    } else if (t.text == "I") {
      n->kind = Node::Ident;
      n->vars = var_list();
    } else if (t.text == "sum") {
      n->kind = Node::Sum;
      if (peek().kind != Tok::Ident) fail("expected a summation index");
      n->name = toks_[k_++].text;
      if (peek().kind != Tok::Ident || peek().text != "in") fail("expected 'in'");
      ++k_;
      n->args.push_back(expr());
      if (peek().kind != Tok::DotDot) fail("expected '..'");
      ++k_;
      n->args.push_back(expr());
      expect(",");
      n->args.push_back(expr());
    } else {
      n->kind = Node::Call;
      n->args.push_back(expr());
    }
    expect(")");
    return n;
  }
};

class Evaluator {
 public:
  explicit Evaluator(const LabelResolver &resolve) : resolve_(resolve) {}

  LabelledOperator eval(const Node &n) {
    switch (n.kind) {
      case Node::Number:
        return LabelledOperator::scalar(n.number);
      case Node::Name: {
        if (auto it = env_.find(n.name); it != env_.end()) return LabelledOperator::scalar(double(it->second));
        if (n.name == "i") return LabelledOperator::scalar(Scalar(0.0, 1.0));
        if (n.name == "pi") return LabelledOperator::scalar(std::numbers::pi);
        if (n.name == "e") return LabelledOperator::scalar(std::numbers::e);
        fail(n, "unknown name '" + n.name + "'");
      }
      case Node::Neg:
        return scale(-1.0, eval(*n.args[0]));
      case Node::Add:
      case Node::Sub: {
        const auto a = eval(*n.args[0]);
        const auto b = eval(*n.args[1]);
        return n.kind == Node::Add ? add(a, b) : subtract(a, b);
      }
      case Node::Mul:
        return compose(eval(*n.args[0]), eval(*n.args[1]));
      case Node::Div: {
        const auto b = eval(*n.args[1]);
        if (!b.is_scalar()) fail(n, "division by a non-scalar");
        return scale(1.0 / b.scalar_value(), eval(*n.args[0]));
      }
      case Node::Tensor:
        return tensor(eval(*n.args[0]), eval(*n.args[1]));
      case Node::Pow: {
        const auto base = eval(*n.args[0]);
        const Scalar p = scalar_of(*n.args[1]);
        if (base.is_scalar()) {
          const Scalar b = base.scalar_value();
          if (b == Scalar(std::numbers::e)) return LabelledOperator::scalar(std::exp(p));
          return LabelledOperator::scalar(std::pow(b, p));
        }
        const long k = integer_of(*n.args[1]);
        if (!base.is_square()) fail(n, "power of a non-square operator");
        auto r = LabelledOperator::identity(base.out_labels());
        for (long j = 0; j < k; ++j) r = compose(r, base);
        return r;
      }
      case Node::Call: {
        const auto a = eval(*n.args[0]);
        if (n.name == "adj") return a.adjoint();
        if (n.name == "conj") return LabelledOperator(a.out_labels(), a.in_labels(), a.matrix().conjugate());
        if (!a.is_scalar()) fail(n, n.name + " of a non-scalar");
        const Scalar z = a.scalar_value();
        if (n.name == "sqrt") return LabelledOperator::scalar(std::sqrt(z));
        if (n.name == "exp") return LabelledOperator::scalar(std::exp(z));
        if (n.name == "cos") return LabelledOperator::scalar(std::cos(z));
        return LabelledOperator::scalar(std::sin(z));
      }
      case Node::Ident:
        return LabelledOperator::identity(LabelSet(labels_of(n.vars)));
      case Node::Basis: {
        const auto labels = labels_of(n.vars);
        const auto k = basis_ket(n, labels);
        if (n.name == "ket") return k;
        if (n.name == "bra") return k.adjoint();
        return compose(k, k.adjoint());
      }
      case Node::Sum: {
        const long lo = integer_of(*n.args[0]);
        const long hi = integer_of(*n.args[1]);
        const auto saved = env_;
        std::optional<LabelledOperator> acc;
        for (long j = lo; j < hi; ++j) {
          env_[n.name] = j;
          auto term = eval(*n.args[2]);
          acc = acc ? add(*acc, term) : term;
        }
        env_ = saved;
        if (!acc) return LabelledOperator::scalar(0.0);
        return *acc;
      }
      case Node::Tuple:
        fail(n, "tuple outside of a basis index");
    }
    fail(n, "bad expression");
  }

 private:
  const LabelResolver &resolve_;
  std::map<std::string, long> env_;

  [[noreturn]] static void fail(const Node &n, const std::string &msg) {
    throw SyntaxError(1, static_cast<int>(n.pos) + 1, msg);
  }

  Scalar scalar_of(const Node &n) {
    const auto v = eval(n);
    if (!v.is_scalar()) fail(n, "expected a scalar");
    return v.scalar_value();
  }

  long integer_of(const Node &n) {
    const Scalar z = scalar_of(n);
    const double r = std::round(z.real());
    if (std::abs(z.imag()) > 1e-9 || std::abs(z.real() - r) > 1e-9) fail(n, "expected an integer");
    return static_cast<long>(r);
  }

  std::string name_of(const VarRef &v) {
    std::string s = v.base;
    for (const auto &ix : v.indices) s += "[" + std::to_string(integer_of(*ix)) + "]";
    return s;
  }

  std::vector<Label> labels_of(const std::vector<VarRef> &vars) {
    std::vector<Label> out;
    for (const auto &v : vars) {
      const auto ls = resolve_(name_of(v));
      out.insert(out.end(), ls.begin(), ls.end());
    }
    return out;
  }

  LabelledOperator basis_ket(const Node &n, const std::vector<Label> &labels) {
    const Node &k = *n.args[0];
    std::size_t total = 1;
    for (const auto &l : labels) total *= l.dim;
    if (k.kind != Node::Tuple) {
      const long idx = integer_of(k);
      if (idx < 0 || static_cast<std::size_t>(idx) >= total) fail(k, "basis index out of range");
      return LabelledOperator::basis_ket(labels, static_cast<std::size_t>(idx));
    }
    // one entry per listed variable, or one per atomic label
    std::vector<std::size_t> radix;
    if (k.args.size() == n.vars.size()) {
      for (const auto &v : n.vars) {
        std::size_t d = 1;
        for (const auto &l : resolve_(name_of(v))) d *= l.dim;
        radix.push_back(d);
      }
    } else if (k.args.size() == labels.size()) {
      for (const auto &l : labels) radix.push_back(l.dim);
    } else {
      fail(k, "tuple arity does not match the variables");
    }
    std::size_t idx = 0;
    for (std::size_t j = 0; j < radix.size(); ++j) {
      const long v = integer_of(*k.args[j]);
      if (v < 0 || static_cast<std::size_t>(v) >= radix[j]) fail(*k.args[j], "basis value out of range");
      idx = idx * radix[j] + static_cast<std::size_t>(v);
    }
    return LabelledOperator::basis_ket(labels, idx);
  }
};

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_scalar(Scalar z) {
  if (z.imag() == 0.0) return format_real(z.real());
  return "(" + format_real(z.real()) + " + " + format_real(z.imag()) + "*i)";
}

std::string basis_text(const char *fn, const LabelSet &ls, std::size_t index, const LabelNamer &name_of) {
  std::vector<std::size_t> digits(ls.size());
  for (std::size_t p = ls.size(); p-- > 0;) {
    digits[p] = index % ls[p].dim;
    index /= ls[p].dim;
  }
  std::string s;
  for (std::size_t p = 0; p < ls.size(); ++p) {
    if (p) s += " (x) ";
    s += std::string(fn) + "(" + name_of(ls[p].id) + ", " + std::to_string(digits[p]) + ")";
  }
  return ls.size() > 1 ? "(" + s + ")" : s;
}

}  // namespace

LabelledOperator parse_assertion(std::string_view text, const LabelResolver &resolve) {
  Parser p(text);
  const NodePtr root = p.parse();
  Evaluator ev(resolve);
  return ev.eval(*root);
}

std::string render_assertion(const LabelledOperator &op, const LabelNamer &name_of) {
  const auto &m = op.matrix();
  std::string out;
  auto emit = [&](std::size_t r, std::size_t c, Scalar z) {
    std::string t = format_scalar(z);
    if (!op.out_labels().empty()) t += " * " + basis_text("ket", op.out_labels(), r, name_of);
    if (!op.in_labels().empty()) t += " * " + basis_text("bra", op.in_labels(), c, name_of);
    if (!out.empty()) out += " + ";
    out += t;
  };
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != Scalar(0.0)) emit(r, c, m(r, c));
  if (out.empty()) emit(0, 0, 0.0);
  return out;
}

}  // namespace qwv
