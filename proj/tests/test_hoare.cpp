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

#include <cmath>
#include <json.hpp>

#include "qwv/error.hpp"
#include "qwv/hoare.hpp"
#include "support.hpp"

namespace qwv {
namespace {

using testing::C;

LabelledOperator pa(const ParsedProgram &p, const std::string &s) { return parse_assertion(s, p.vars.resolver()); }

LabelledOperator heisenberg(const SuperOperator &e, const LabelledOperator &b) {
  // wp(C, B) = E*(B) on the footprint of E
  return LabelledOperator(e.labels, e.labels, dual(e).apply(cyl_extend(b, e.labels).matrix()));
}

TEST(Wp, BasicStatements) {
  const auto p = parse_program("var x : bool; var y : int<3>; x := H[x];");
  // H|0⟩⟨0|H = |+⟩⟨+|
  EXPECT_TRUE(approx_eq(wp(p.program, pa(p, "proj(x, 0)")), pa(p, "1/2 * (I(x) + ket(x,0)*bra(x,1) + ket(x,1)*bra(x,0))"), 1e-12));
  const auto ab = parse_program("var x : bool; abort;");
  EXPECT_TRUE(approx_eq(wp(ab.program, pa(ab, "I(x)")), pa(ab, "0 * I(x)"), 0.0));
  EXPECT_TRUE(approx_eq(wlp(ab.program, pa(ab, "proj(x, 0)")), pa(ab, "I(x)"), 1e-15));
  // x := |0⟩ gives ⟨0|B|0⟩ I
  const auto in = parse_program("var x : bool; var y : int<3>; x := |0>;");
  const auto b = pa(in, "1/3 * proj(x, 0) (x) proj(y, 1) + proj(x, 1) (x) I(y)");
  EXPECT_TRUE(approx_eq(wp(in.program, b), pa(in, "I(x) (x) (1/3 * proj(y, 1))"), 1e-12));
}

TEST(Wp, DualOfDenotation) {
  // tr(wp(C,B) ρ) = tr(B ⟦C⟧ρ) for random gates, conditionals and a loop
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    GateRegistry r;
    r.add_gate("U", testing::random_unitary(rng, 2));
    r.add_gate("V", testing::random_unitary(rng, 6));
    const auto p = parse_program(
        "var a : bool; var b : int<3>;\n"
        "a := U[a]; [a, b] := V[a, b];\n"
        "if meas[a] { 0 -> b := |1>; 1 -> a := U^dag[a]; }\n"
        "while meas[a] = 1 do { [a, b] := V[a, b]; }\n",
        r);
    const LabelSet all = p.vars.all_labels();
    const LabelledOperator b(all, all, testing::random_effect(rng, 6));
    const auto e = denote(p.program);
    const auto w = wp(p.program, b);
    EXPECT_TRUE(approx_eq(w, heisenberg(e, b), 1e-9));
    const auto rho = testing::random_density(rng, 6);
    EXPECT_LT(std::abs((w.matrix() * rho).trace() - (b.matrix() * e.apply(rho)).trace()), 1e-9);
    // wlp = wp + I - wp(C, I)
    const auto id = LabelledOperator::identity(all);
    EXPECT_TRUE(approx_eq(wlp(p.program, b), w + id - wp(p.program, id), 1e-9));
  }
}

TEST(Wp, ExtraLabelsAreFramed) {
  std::mt19937_64 rng(52);
  const auto p = parse_program("var a : bool; var b : bool; var c : int<3>; [a, b] := CNOT[a, b];");
  const LabelSet all = p.vars.all_labels();
  const LabelledOperator post(all, all, testing::random_effect(rng, 12));
  const auto on_all = wp_on(p.program, post, all);
  EXPECT_TRUE(approx_eq(wp(p.program, post), on_all, 1e-12));
  EXPECT_THROW(wp_on(p.program, post, LabelSet(p.vars.resolve("a"))), Error);
}

TEST(Validity, TotalPartialAndSaturated) {
  const auto p = parse_program("var q : bool; q := |0>; q := H[q]; while meas[q] = 1 do { q := H[q]; }");
  const auto q0 = pa(p, "proj(q, 0)");
  const auto one = LabelledOperator::scalar(1.0);
  EXPECT_TRUE(check_valid(make_judgment(one, p.program, q0, Mode::Total, true)).valid);
  const auto spin = parse_program("var q : bool; q := |0>; while meas[q] = 0 do { skip; }");
  const auto zero = pa(spin, "0 * I(q)");
  EXPECT_TRUE(check_valid(make_judgment(one, spin.program, zero, Mode::Partial, true)).valid);
  EXPECT_FALSE(check_valid(make_judgment(one, spin.program, zero, Mode::Total, false)).valid);
  // {1/2} H {|0⟩⟨0|} holds only from |0⟩ or |1⟩ inputs
  const auto h = parse_program("var q : bool; q := H[q];");
  EXPECT_FALSE(check_valid(make_judgment(LabelledOperator::scalar(0.5), h.program, pa(h, "proj(q, 0)"), Mode::Total, false)).valid);
  EXPECT_FALSE(check_valid(make_judgment(pa(h, "1/2 * proj(q, 0)"), h.program, pa(h, "proj(q, 0)"), Mode::Total, false)).valid);
  const auto plus = pa(h, "1/2 * (proj(q, 0) + ket(q, 0) * bra(q, 1) + ket(q, 1) * bra(q, 0) + proj(q, 1))");
  EXPECT_TRUE(check_valid(make_judgment(plus, h.program, pa(h, "proj(q, 0)"), Mode::Total, true)).valid);
  const auto v = check_valid(make_judgment(pa(h, "proj(q, 0)"), h.program, pa(h, "proj(q, 0)"), Mode::Total, true));
  EXPECT_FALSE(v.valid);
  EXPECT_NEAR(v.residual, 1.0, 1e-12);
  EXPECT_THROW(check_valid(make_judgment(pa(h, "ket(q, 0)"), h.program, pa(h, "proj(q, 0)"), Mode::Total, false)), Error);
}

TEST(Validity, AgreesWithLoewnerCharacterization) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    GateRegistry r;
    r.add_gate("U", testing::random_unitary(rng, 3));
    const auto p = parse_program("var y : int<3>; y := U[y]; if meas[y] { 0 -> y := |2>; else -> skip; }", r);
    const LabelSet all = p.vars.all_labels();
    const LabelledOperator post(all, all, testing::random_effect(rng, 3));
    const LabelledOperator pre(all, all, u(rng) * testing::random_effect(rng, 3));
    const auto w = wp(p.program, post);
    const bool want = loewner_leq(pre.matrix(), w.matrix());
    if (check_valid(make_judgment(pre, p.program, post, Mode::Total, false)).valid == want) ++agree;
  }
  EXPECT_EQ(agree, 100);
}

TEST(Validity, StateTriples) {
  const auto p = parse_program("var q : bool; q := H[q];");
  const auto k0 = pa(p, "ket(q, 0)");
  const auto plus = pa(p, "sqrt(1/2) * (ket(q, 0) + ket(q, 1))");
  EXPECT_TRUE(check_state_triple(k0, p.program, plus, Mode::Total, true).valid);
  EXPECT_FALSE(check_state_triple(plus, p.program, plus, Mode::Total, false).valid);
  try {
    check_state_triple(scale(0.5, k0), p.program, plus, Mode::Total, true);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotNormalized);
  }
  EXPECT_THROW(check_state_triple(scale(2.0, k0), p.program, plus, Mode::Total, false), Error);
}

// ---------------------------------------------------------------------------
// rules

class Rules : public ::testing::Test {
 protected:
  void SetUp() override {
    p = parse_program("var a : bool; var b : bool; a := H[a]; b := X[b]; while meas[a] = 1 do { a := H[a]; }");
  }
  Judgment axiom_ut(const Program &stmt, const LabelledOperator &post) {
    RuleWitness w;
    w.program = stmt;
    w.a = post;
    return apply_rule("Ax.UT", {}, w);
  }
  ParsedProgram p;
};

TEST_F(Rules, IdsAreComplete) {
  const auto &ids = rule_ids();
  EXPECT_EQ(ids.size(), 32u);
  for (const char *id : {"Ax.Sk", "Ax.In", "R.SC", "R.IF", "R.LP.P", "R.Or", "R.Inner", "Frame.T", "R.TI", "R.SO"})
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
  try {
    apply_rule("R.Nope", {}, {});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownRule);
  }
}

TEST_F(Rules, SequenceOfUnitaryAxioms) {
  const auto post = pa(p, "proj(a, 0) (x) proj(b, 1)");
  const auto j2 = axiom_ut(p.statements[1], post);
  const auto j1 = axiom_ut(p.statements[0], j2.pre);
  const auto seq = apply_rule("R.SC", {j1, j2}, {});
  EXPECT_TRUE(check_valid(seq).valid);
  EXPECT_TRUE(seq.saturated);
  // mismatched middle assertion
  auto bad = j1;
  bad.post = pa(p, "proj(a, 1) (x) I(b)");
  try {
    apply_rule("R.SC", {bad, j2}, {});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::SideConditionViolated);
  }
}

TEST_F(Rules, ConsequenceChecksOrder) {
  const auto post = pa(p, "proj(a, 0)");
  const auto j = axiom_ut(p.statements[0], post);
  RuleWitness w;
  w.a = scale(0.5, j.pre);
  w.b = pa(p, "I(a)");
  const auto c = apply_rule("R.Or", {j}, w);
  EXPECT_FALSE(c.saturated);
  EXPECT_TRUE(check_valid(c).valid);
  w.a = pa(p, "I(a)");
  EXPECT_THROW(apply_rule("R.Or", {j}, w), Error);
}

TEST_F(Rules, PartialLoopRule) {
  const auto &loop = p.statements[2];
  // invariant: R = M1† A M1 + M0† B M0 with B = |0⟩⟨0|, A = wlp(body, R)
  const auto b = pa(p, "proj(a, 0)");
  const auto r = pa(p, "I(a)");
  Judgment body = make_judgment(pa(p, "I(a)"), loop.body(), r, Mode::Partial, false);
  ASSERT_TRUE(check_valid(body).valid);
  RuleWitness w;
  w.program = loop;
  w.b = b;
  const auto c = apply_rule("R.LP.P", {body}, w);
  EXPECT_EQ(c.mode, Mode::Partial);
  EXPECT_TRUE(check_valid(c).valid);
  // A above the identity is rejected
  body.pre = scale(2.0, body.pre);
  body.post = pa(p, "proj(a, 0) + 2 * proj(a, 1)");
  EXPECT_THROW(apply_rule("R.LP.P", {body}, w), Error);
}

TEST_F(Rules, NoLoopRuleRejectsLoopsAndAbort) {
  const auto j = axiom_ut(p.statements[0], pa(p, "proj(a, 0)"));
  const auto c = apply_rule("R.No.LP", {j}, {});
  EXPECT_EQ(c.mode, Mode::Partial);
  EXPECT_TRUE(check_valid(c).valid);
  Judgment loop = make_judgment(pa(p, "I(a)"), p.statements[2], pa(p, "proj(a, 0)"), Mode::Partial, false);
  EXPECT_THROW(apply_rule("R.No.LP", {loop}, {}), Error);
  Judgment ab = make_judgment(pa(p, "I(a)"), Program::abort(), pa(p, "proj(a, 0)"), Mode::Partial, false);
  EXPECT_THROW(apply_rule("R.No.LP", {ab}, {}), Error);
}

TEST_F(Rules, InnerProductRule) {
  // {1} a := H[a] ; b := X[b] from |0,0⟩ ... use init to make the output fixed
  const auto q = parse_program("var a : bool; var b : bool; [a, b] := |(0, 0)>; a := H[a]; b := X[b];");
  const auto v = pa(q, "sqrt(1/2) * (ket(a, 0) + ket(a, 1)) (x) ket(b, 1)");
  auto prem = make_state_judgment(LabelledOperator::scalar(1.0), q.program, v, Mode::Total, true);
  ASSERT_TRUE(check_valid(prem).valid);
  RuleWitness w;
  w.u = pa(q, "ket(a, 1)");
  const auto c = apply_rule("R.Inner", {prem}, w);
  EXPECT_NEAR(c.pre.scalar_value().real(), 0.5, 1e-12);
  EXPECT_TRUE(c.saturated);
  EXPECT_TRUE(check_valid(c).valid);
  w.u = pa(q, "sqrt(1/2) * (ket(a, 0) - ket(a, 1)) (x) ket(b, 1)");
  EXPECT_NEAR(apply_rule("R.Inner", {prem}, w).pre.scalar_value().real(), 0.0, 1e-12);
  auto weak = prem;
  weak.saturated = false;
  EXPECT_THROW(apply_rule("R.Inner", {weak}, w), Error);
}

TEST_F(Rules, ScaleAndAdd) {
  const auto j = axiom_ut(p.statements[0], pa(p, "proj(a, 0)"));
  RuleWitness w;
  w.lambdas = {0.25};
  const auto s = apply_rule("R.Scale.T", {j}, w);
  EXPECT_TRUE(check_valid(s).valid);
  w.lambdas = {-1.0};
  EXPECT_THROW(apply_rule("R.Scale.T", {j}, w), Error);
  const auto k = axiom_ut(p.statements[0], pa(p, "proj(a, 1)"));
  const auto sum = apply_rule("R.Add.T", {j, k}, {});
  EXPECT_TRUE(approx_eq(sum.pre, pa(p, "I(a)"), 1e-12));
  EXPECT_TRUE(check_valid(sum).valid);
}

// ---------------------------------------------------------------------------
// soundness harness

TEST(Fuzz, EveryRuleSurvivesRandomInstances) {
  for (const auto &rule : rule_ids()) {
    const auto st = soundness_fuzz(rule, 10, 7);
    EXPECT_EQ(st.trials, 10u) << rule;
    EXPECT_EQ(st.passed + st.skipped, 10u);
    EXPECT_GT(st.passed, 0u) << rule;
  }
}

TEST(Fuzz, DeterministicInSeed) {
  const auto a = soundness_fuzz("R.Or", 5, 3), b = soundness_fuzz("R.Or", 5, 3);
  EXPECT_EQ(a.min_slack, b.min_slack);
  EXPECT_EQ(a.passed, b.passed);
}

TEST(Fuzz, CounterexamplesSerializeAndReplay) {
  // a negative saturation tolerance rejects every saturated conclusion
  CheckOptions strict;
  strict.saturation_tol = -1.0;
  std::string text;
  try {
    soundness_fuzz("Ax.Sk", 3, 11, strict);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::CounterexampleFound);
    const std::string w = e.what();
    text = w.substr(w.find('{'));
  }
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j.at("rule"), "Ax.Sk");
  EXPECT_EQ(j.at("seed"), 11);
  EXPECT_EQ(j.at("trial"), 0);
  EXPECT_TRUE(j.contains("pre"));
  EXPECT_TRUE(j.contains("program"));
  EXPECT_THROW(replay_counterexample(text, strict), Error);
  const auto st = replay_counterexample(text);
  EXPECT_EQ(st.passed, 1u);
}

}  // namespace
}  // namespace qwv
