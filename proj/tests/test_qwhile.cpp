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


#include <gtest/gtest.h>

#include <numbers>

#include "qwv/error.hpp"
#include "qwv/qwhile.hpp"
#include "support.hpp"

namespace qwv {
namespace {

const char *const kCoin = R"(
var q : bool;
var c : int<3>;
q := |0>;
q := H[q];
while meas[q] = 1 do {
  q := H[q];
  c := X3[c];
}
)";

GateRegistry coin_gates() {
  GateRegistry r;
  // cyclic shift on int<3>
  r.add_gate("X3", ComplexMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
  return r;
}

TEST(VarTable, ComponentsGetLabelsInDeclarationOrder) {
  VarTable v;
  v.declare("x", QType::tuple(QType::boolean(), 3));
  v.declare("y", QType::pair(QType::zn(3), QType::boolean()));
  EXPECT_EQ(v.resolve("x").size(), 3u);
  EXPECT_EQ(v.resolve("x[2]")[0].id, 2);
  EXPECT_EQ(v.resolve("y[0]")[0].dim, 3u);
  EXPECT_EQ(v.resolve("y")[1].id, 4);
  EXPECT_EQ(v.label_name(3), "y[0]");
  EXPECT_TRUE(v.has("y[1]"));
  EXPECT_FALSE(v.has("y[2]"));
  EXPECT_EQ(v.type_of("y[0]"), QType::zn(3));
  EXPECT_EQ(v.all_labels().dim(), 8u * 6u);
  EXPECT_THROW(v.declare("x", QType::boolean()), Error);
}

TEST(Parser, Declarations) {
  const auto p = parse_program("var a, b : bool; var c : (int<3> * bool)^2; skip;");
  EXPECT_EQ(p.vars.variables().size(), 3u);
  EXPECT_EQ(p.vars.type_of("c").dimension(), 36u);
  EXPECT_EQ(p.vars.type_of("c[1][0]"), QType::zn(3));
  EXPECT_EQ(p.program.kind(), Program::Kind::Skip);
}

TEST(Parser, StatementsAndStructure) {
  const auto p = parse_program(kCoin, coin_gates());
  ASSERT_EQ(p.statements.size(), 3u);
  EXPECT_EQ(p.statements[0].kind(), Program::Kind::Init);
  EXPECT_EQ(p.statements[1].kind(), Program::Kind::Unitary);
  const auto &w = p.statements[2];
  ASSERT_EQ(w.kind(), Program::Kind::While);
  EXPECT_EQ(w.cont(), 1u);
  EXPECT_EQ(w.exit_outcome(), 0u);
  EXPECT_EQ(w.body().kind(), Program::Kind::Seq);
  EXPECT_TRUE(p.program.contains_while());
  EXPECT_FALSE(p.program.contains_abort());
  EXPECT_EQ(footprint(p.program).dim(), 6u);
}

TEST(Parser, ForLoopsUnroll) {
  const auto p = parse_program("var x : bool^4; for i < 4 { x[i] := H[x[i]]; }");
  ASSERT_EQ(p.statements.size(), 1u);
  EXPECT_EQ(p.program.size(), desugar_for({Program::skip(), Program::skip(), Program::skip(), Program::skip()}).size());
  const auto q = parse_program("var x : bool^4; x[0] := H[x[0]]; x[1] := H[x[1]]; x[2] := H[x[2]]; x[3] := H[x[3]];");
  EXPECT_TRUE(structurally_equal(p.program, q.program));
  const auto r = parse_program("var x : bool^4; for i in [3, 0] { x[i] := X[x[i]]; }");
  const auto s = parse_program("var x : bool^4; x[3] := X[x[3]]; x[0] := X[x[0]];");
  EXPECT_TRUE(structurally_equal(r.program, s.program));
  const auto e = parse_program("var x : bool^4; for i in 2..2 { x[i] := X[x[i]]; }");
  EXPECT_EQ(e.program.kind(), Program::Kind::Skip);
  const auto nest = parse_program("var x : bool^4; for i in 1..3 { [x[i - 1], x[i]] := CNOT[x[i - 1], x[i]]; }");
  EXPECT_EQ(footprint(nest.program).size(), 3u);
}

TEST(Parser, DesugarIsRightNested) {
  const auto a = Program::skip(), b = Program::abort();
  const auto s = desugar_for({a, b, a});
  ASSERT_EQ(s.kind(), Program::Kind::Seq);
  EXPECT_EQ(s.first().kind(), Program::Kind::Skip);
  EXPECT_EQ(s.second().kind(), Program::Kind::Seq);
  EXPECT_EQ(s.second().first().kind(), Program::Kind::Abort);
  EXPECT_EQ(desugar_for({}).kind(), Program::Kind::Skip);
  EXPECT_EQ(desugar_for({b}).kind(), Program::Kind::Abort);
}

TEST(Parser, GateForms) {
  const auto p = parse_program(
      "var a : bool; var b : bool; var y : int<4>;\n"
      "[a, b] := CU(Ph(pi / 2^2))[a, b];\n"
      "y := QFT^dag[y];\n"
      "a := state(1/2 * ket(a, 0) + sqrt(3)/2 * ket(a, 1));\n"
      "[a, b] := |(1, 0)>;\n");
  ASSERT_EQ(p.statements.size(), 4u);
  const auto &cu = p.statements[0].op().matrix();
  EXPECT_LT(std::abs(cu(3, 3) - std::polar(1.0, std::numbers::pi / 4)), 1e-15);
  EXPECT_LT(testing::max_abs_diff(p.statements[1].op().matrix(), qft(4).adjoint()), 1e-15);
  EXPECT_NEAR(p.statements[2].op().matrix()(1, 1).real(), 0.75, 1e-15);
  EXPECT_EQ(p.statements[3].op().matrix()(2, 2), 1.0);
}

TEST(Parser, Conditionals) {
  GateRegistry r;
  r.add_measurement("M", {ComplexMatrix::from_rows({{1, 0}, {0, 0}}), ComplexMatrix::from_rows({{0, 0}, {0, 1}})});
  const auto p = parse_program(
      "var a : bool; var y : int<3>;\n"
      "if meas[y] { 0 -> skip; 2 -> { a := X[a]; } else -> abort; }\n"
      "if M[a] { 0 -> y := |1>; 1 -> skip; }\n",
      r);
  ASSERT_EQ(p.statements.size(), 2u);
  const auto &c = p.statements[0];
  ASSERT_EQ(c.kind(), Program::Kind::Cond);
  ASSERT_EQ(c.branches().size(), 3u);
  EXPECT_EQ(c.branches()[1].kind(), Program::Kind::Abort);
  EXPECT_EQ(c.branches()[2].kind(), Program::Kind::Unitary);
  EXPECT_TRUE(c.measurement().is_complete());
  EXPECT_EQ(p.statements[1].measurement().name, "M");
}

void expect_code(const char *src, ErrorCode code, const GateRegistry &r = {}) {
  try {
    parse_program(src, r);
    ADD_FAILURE() << "no error for: " << src;
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(Parser, TypeErrors) {
  expect_code("var a : bool; a := H[b];", ErrorCode::UnknownVariable);
  expect_code("var a : int<3>; a := H[a];", ErrorCode::TypeError);
  expect_code("var a : bool; a := Foo[a];", ErrorCode::UnknownGate);
  expect_code("var a : bool; [a, a] := CNOT[a, a];", ErrorCode::DisjointnessError);
  expect_code("var a : bool^2; [a, a[0]] := SWAP[a, a[0]];", ErrorCode::DisjointnessError);
  expect_code("var a : bool; var b : bool; a := H[b];", ErrorCode::TypeError);
  expect_code("var a : bool; a := |2>;", ErrorCode::TypeError);
  expect_code("var a : int<3>; while meas[a] = 0 do { skip; }", ErrorCode::TypeError);
  expect_code("var a : int<3>; if meas[a] { 0 -> skip; }", ErrorCode::TypeError);
  expect_code("var a : bool; a := state(ket(a, 0) + ket(a, 1));", ErrorCode::TypeError);
  expect_code("var a : bool; a := |0>; a := state(ket(a, 0) + ket(a, 1) / 2);", ErrorCode::TypeError);
}

TEST(Parser, SyntaxErrorsCarryPositions) {
  try {
    parse_program("var a : bool;\na := H[a]\nskip;");
    FAIL();
  } catch (const SyntaxError &e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.col(), 1);
  }
  try {
    parse_program("var a : bool;\n  a := ;");
    FAIL();
  } catch (const SyntaxError &e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.col(), 8);
  }
  EXPECT_THROW(parse_program("var a : ;"), SyntaxError);
  EXPECT_THROW(parse_program("var a : bool; while meas[a] = 0 do { skip;"), SyntaxError);
}

TEST(Parser, PrettyPrintRoundTrip) {
  const std::vector<std::string> sources{
      kCoin,
      "var x : bool^3; for i < 3 { x[i] := H[x[i]]; } [x[0], x[2]] := CU(Ph(0.25))[x[0], x[2]];",
      "var a : bool; var y : int<3>; if meas[y] { 0 -> skip; 1 -> abort; 2 -> { a := X[a]; a := |1>; } }",
      "var a : bool; a := state(1/2 * ket(a, 0) + sqrt(3)/2 * ket(a, 1)); a := S^dag[a];",
  };
  for (const auto &src : sources) {
    const auto reg = coin_gates();
    const auto p = parse_program(src, reg);
    const auto text = pretty_print(p.program, p.vars);
    const auto back = parse_statements(text, p.vars, reg);
    EXPECT_TRUE(structurally_equal(p.program, back, 1e-12)) << text;
    const auto full = parse_program(print_declarations(p.vars) + text, reg);
    EXPECT_TRUE(structurally_equal(p.program, full.program, 1e-12));
  }
}

TEST(Program, ApproximateWhile) {
  const auto p = parse_program(kCoin, coin_gates());
  const auto &w = p.statements[2];
  const auto a0 = approximate_while(w, 0);
  EXPECT_EQ(a0.kind(), Program::Kind::Abort);
  const auto a2 = approximate_while(w, 2);
  ASSERT_EQ(a2.kind(), Program::Kind::Cond);
  EXPECT_EQ(a2.branches()[w.exit_outcome()].kind(), Program::Kind::Skip);
  EXPECT_TRUE(a2.contains_abort());
  EXPECT_FALSE(a2.contains_while());
  try {
    approximate_while(p.statements[0], 1);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAWhile);
  }
}

TEST(Program, StructuralEqualityDistinguishesGates) {
  const auto a = parse_program("var x : bool; x := H[x];");
  const auto b = parse_program("var x : bool; x := X[x];");
  EXPECT_FALSE(structurally_equal(a.program, b.program));
  EXPECT_TRUE(structurally_equal(a.program, a.program));
}

TEST(GateRegistry, LoadsJson) {
  GateRegistry r;
  r.load_json(R"({"NOT": [[[0,0],[1,0]],[[1,0],[0,0]]],
                  "M": [ [[[1,0],[0,0]],[[0,0],[0,0]]], [[[0,0],[0,0]],[[0,0],[1,0]]] ]})");
  ASSERT_NE(r.gate("NOT"), nullptr);
  EXPECT_EQ((*r.gate("NOT"))(0, 1), 1.0);
  ASSERT_NE(r.measurement("M"), nullptr);
  EXPECT_EQ(r.measurement("M")->size(), 2u);
  EXPECT_THROW(r.load_json("{\"U\": [[[1,0],[1,0]],[[0,0],[1,0]]]}"), Error);
  EXPECT_THROW(r.load_json("not json"), Error);
}

}  // namespace
}  // namespace qwv
