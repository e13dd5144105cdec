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

#include "case_oracles.hpp"
#include "qwv/cases.hpp"
#include "qwv/error.hpp"

namespace qwv {
namespace {

namespace cs = cases;

TEST(Cases, HidingFunctionIsChecked) {
  const AbelianGroup g({2, 2});
  const auto h = generate(g, {g.encode({1, 1})});
  EXPECT_NO_THROW(cs::hsp(h, {0, 1, 1, 0}));
  EXPECT_NO_THROW(cs::hsp(h, {3, 0, 0, 3}));
  try {
    cs::hsp(h, {0, 1, 0, 1});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::BadHidingFunction);
  }
  EXPECT_THROW(cs::hsp(h, {0, 1, 1}), Error);
}

TEST(Cases, HspDistributionMatchesStateVector) {
  const AbelianGroup g({3, 2});
  for (const auto &h : all_subgroups(g)) {
    const auto c = cs::hsp(h);
    const auto idx = coset_index(h);
    std::size_t m = 0;
    for (auto i : idx) m = std::max(m, i + 1);
    const auto want = testing::hsp_probabilities({3, 2}, idx, m);
    const auto got = cs::distribution(cs::simulate(c), c.parsed.vars, {"x"});
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-10) << c.params << " " << i;
    // support is the orthogonal subgroup, uniformly
    const auto perp = orthogonal_subgroup(h);
    for (Element e = 0; e < g.order(); ++e)
      EXPECT_NEAR(got[e], perp.contains(e) ? 1.0 / double(perp.order()) : 0.0, 1e-10);
  }
}

TEST(Cases, GroverPreconditionIsSuccessProbability) {
  for (auto [n, marked, r] : {std::tuple<std::size_t, std::vector<std::size_t>, std::size_t>{4, {1}, 1},
                              {8, {5}, 2},
                              {8, {2, 6}, 1},
                              {8, {0}, 1}}) {
    const auto c = cs::grover(n, marked, r);
    const double pre = c.triples.at(0).judgment.pre.scalar_value().real();
    EXPECT_NEAR(pre, testing::grover_success(n, marked.size(), r), 1e-12) << c.params;
    const auto pr = cs::distribution(cs::simulate(c), c.parsed.vars, {"x"});
    double hit = 0;
    for (auto k : marked) hit += pr[k];
    EXPECT_NEAR(hit, pre, 1e-12);
  }
}

TEST(Cases, QpeMatchesReferenceSum) {
  for (double theta : {0.0, 0.25, 1.0 / 3.0, 0.7}) {
    const auto c = cs::qpe(theta, 4);
    const auto pr = cs::distribution(cs::simulate(c), c.parsed.vars, {"x"});
    ASSERT_EQ(pr.size(), 4u);
    for (std::size_t a = 0; a < 4; ++a) EXPECT_NEAR(pr[a], testing::qpe_probability(theta, 4, a), 1e-10) << theta;
  }
  const auto pr = cs::distribution(cs::simulate(cs::qpe(1.0 / 3.0, 4)), cs::qpe(1.0 / 3.0, 4).parsed.vars, {"x"});
  EXPECT_GE(pr[1], 4.0 / (std::numbers::pi * std::numbers::pi));
}

TEST(Cases, QftCircuit) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto c = cs::qft_circuit(n);
    const auto ls = c.parsed.vars.all_labels();
    const auto f = testing::dft(std::size_t{1} << n);
    EXPECT_LE(testing::fro(cs::circuit_matrix(c.parsed.program, ls), f), 1e-10) << n;
    std::vector<Program> head(c.parsed.statements.begin(), c.parsed.statements.end() - 1);
    EXPECT_LE(testing::fro(cs::circuit_matrix(desugar_for(head), ls), testing::naive_mul(testing::bit_reversal(n), f)), 1e-10);
  }
}

TEST(Cases, RevCircuit) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto c = cs::rev_circuit(n);
    EXPECT_LE(testing::fro(cs::circuit_matrix(c.parsed.program, c.parsed.vars.all_labels()), testing::bit_reversal(n)),
              1e-12);
  }
}

TEST(Cases, HlfAmplitudes) {
  const std::vector<std::vector<std::vector<int>>> mats{
      {{0}},
      {{1, 1}, {1, 0}},
      {{0, 1, 0}, {1, 1, 1}, {0, 1, 0}},
      {{1, 1, 1, 0}, {1, 0, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 0}},
  };
  for (const auto &a : mats) {
    const auto c = cs::hlf(a);
    std::vector<Program> tail(c.parsed.statements.begin() + 1, c.parsed.statements.end());
    const auto u = cs::circuit_matrix(desugar_for(tail), c.parsed.vars.all_labels());
    const auto want = testing::hlf_amplitudes(a);
    for (std::size_t z = 0; z < want.size(); ++z) EXPECT_LE(std::abs(u(z, 0) - want[z]), 1e-10) << c.params << " " << z;
  }
}

TEST(Cases, HhlSolution) {
  const auto p = cs::hhl_default();
  const auto x = cs::hhl_solution(p);
  const auto ax = matmul(p.a, x);
  // A x is parallel to b
  const testing::C ov = (p.b.adjoint() * ax)(0, 0);
  EXPECT_NEAR(std::abs(ov), ax.frobenius_norm(), 1e-10);
  EXPECT_NEAR(x.frobenius_norm(), 1.0, 1e-12);
}

TEST(Cases, EveryCaseRuns) {
  for (const auto &name : cs::case_names()) {
    const auto c = cs::by_name(name);
    const auto r = cs::run_case(c);
    EXPECT_TRUE(r.ok) << name << ": " << r.error;
    for (const auto &t : r.triples) EXPECT_TRUE(t.verdict.valid) << name << " " << t.name << " " << t.verdict.diagnostics;
  }
  EXPECT_THROW(cs::by_name("nope"), Error);
}

}  // namespace
}  // namespace qwv
