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
#include "qwv/qtypes.hpp"
#include "support.hpp"

namespace qwv {
namespace {

using testing::C;

TEST(QType, Dimensions) {
  EXPECT_EQ(QType::boolean().dimension(), 2u);
  EXPECT_EQ(QType::zn(5).dimension(), 5u);
  const auto p = QType::pair(QType::zn(3), QType::boolean());
  EXPECT_EQ(p.dimension(), 6u);
  EXPECT_EQ(p.atom_dims(), (std::vector<std::size_t>{3, 2}));
  const auto t = QType::tuple(p, 2);
  EXPECT_EQ(t.dimension(), 36u);
  EXPECT_EQ(t.atom_dims(), (std::vector<std::size_t>{3, 2, 3, 2}));
  EXPECT_EQ(t.components().size(), 2u);
  EXPECT_TRUE(QType::zn(4).is_atomic());
  EXPECT_FALSE(t.is_atomic());
  EXPECT_EQ(QType::zn(4).to_string(), "int<4>");
  EXPECT_EQ(QType::tuple(QType::boolean(), 3), QType::tuple(QType::boolean(), 3));
}

TEST(Gates, FixedMatrices) {
  const double r = 1 / std::numbers::sqrt2;
  EXPECT_LT(testing::max_abs_diff(gate_h(), ComplexMatrix::from_rows({{r, r}, {r, -r}})), 1e-15);
  EXPECT_LT(testing::max_abs_diff(gate_s(), ComplexMatrix::from_rows({{1, 0}, {0, C(0, 1)}})), 1e-15);
  EXPECT_LT(testing::max_abs_diff(gate_y(), ComplexMatrix::from_rows({{0, C(0, -1)}, {C(0, 1), 0}})), 1e-15);
  EXPECT_LT(testing::max_abs_diff(gate_ph(std::numbers::pi), gate_z()), 1e-15);
  const auto cx = controlled(gate_x());
  EXPECT_EQ(cx(3, 2), 1.0);
  EXPECT_EQ(cx(0, 0), 1.0);
  const auto sw = gate_swap(3);
  // |a,b⟩ ↦ |b,a⟩
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(sw(b * 3 + a, a * 3 + b), 1.0);
}

TEST(Gates, BuiltinsAreUnitaryAndCheckArity) {
  for (const char *n : {"H", "X", "Y", "Z", "S"}) EXPECT_TRUE(is_unitary(builtin(n, {}, {2}).matrix));
  EXPECT_TRUE(is_unitary(builtin("Ph", {0.3}, {2}).matrix));
  EXPECT_TRUE(is_unitary(builtin("QFT", {}, {5}).matrix));
  EXPECT_TRUE(is_builtin_gate("CNOT"));
  EXPECT_FALSE(is_builtin_gate("Foo"));
  EXPECT_THROW(builtin("H", {}, {3}), Error);
  EXPECT_THROW(builtin("Ph", {}, {2}), Error);
  EXPECT_THROW(builtin("SWAP", {}, {2, 3}), Error);
  try {
    builtin("Foo", {}, {2});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownGate);
  }
  const GateSpec inner{"Ph", {0.5}, gate_ph(0.5), 1};
  EXPECT_LT(testing::max_abs_diff(builtin("CU", {}, {2, 2}, &inner).matrix, controlled(gate_ph(0.5))), 0.0 + 1e-15);
}

TEST(Gates, QftEntries) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto f = qft(n);
    EXPECT_TRUE(is_unitary(f, 1e-12));
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h)
        EXPECT_LT(std::abs(f(g, h) - std::exp(C(0, 2 * std::numbers::pi * double(g * h) / double(n))) / std::sqrt(double(n))), 1e-12);
  }
  // the group transform of a cyclic group is the plain one
  EXPECT_LT(testing::max_abs_diff(group_qft(AbelianGroup({6})), qft(6)), 1e-12);
  // product groups factor
  EXPECT_LT(testing::max_abs_diff(group_qft(AbelianGroup({2, 3})), testing::naive_kron(qft(2), qft(3))), 1e-12);
}

TEST(Gates, OracleAndPhaseOracle) {
  const auto u = oracle(3, 2, [](std::size_t g) { return g % 2; });
  EXPECT_TRUE(is_unitary(u));
  // |1,0⟩ ↦ |1,1⟩
  EXPECT_EQ(u(1 * 2 + 1, 1 * 2 + 0), 1.0);
  EXPECT_EQ(u(0, 0), 1.0);
  EXPECT_THROW(oracle(2, 2, [](std::size_t) { return std::size_t{2}; }), Error);
  const auto p = phase_oracle({false, true, true});
  EXPECT_EQ(p(1, 1), -1.0);
  EXPECT_EQ(p(0, 0), 1.0);
}

TEST(Gates, MultiplexerIsBlockDiagonal) {
  std::mt19937_64 rng(31);
  std::vector<ComplexMatrix> fam;
  for (int k = 0; k < 3; ++k) fam.push_back(testing::random_unitary(rng, 2));
  const auto m = multiplexer(fam);
  EXPECT_TRUE(is_unitary(m, 1e-10));
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) {
      const C want = r / 2 == c / 2 ? fam[r / 2](r % 2, c % 2) : C(0);
      EXPECT_EQ(m(r, c), want);
    }
  try {
    multiplexer({ComplexMatrix::from_rows({{1, 1}, {0, 1}})});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
  }
}

TEST(Gates, CompleteUnitaryKeepsGivenColumns) {
  std::mt19937_64 rng(32);
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto q = testing::random_unitary(rng, d);
    std::map<std::size_t, ComplexMatrix> cols{{d - 1, q.column_at(0)}, {0, q.column_at(1)}};
    const auto u = complete_unitary(d, cols);
    EXPECT_TRUE(is_unitary(u, 1e-10));
    EXPECT_LT(testing::max_abs_diff(u.column_at(d - 1), q.column_at(0)), 1e-15);
    EXPECT_LT(testing::max_abs_diff(u.column_at(0), q.column_at(1)), 1e-15);
  }
  EXPECT_THROW(complete_unitary(2, {{0, ComplexMatrix::column({1, 0})}, {1, ComplexMatrix::column({1, 0})}}), Error);
  EXPECT_THROW(complete_unitary(2, {{0, ComplexMatrix::column({1, 1})}}), Error);
}

TEST(Gates, ExpmOfPauliX) {
  // e^{iθX} = cos θ I + i sin θ X
  for (double th : {0.0, 0.3, 1.0, 2.5}) {
    const auto e = expm_hermitian(gate_x(), th);
    const auto want = ComplexMatrix::from_rows({{std::cos(th), C(0, std::sin(th))}, {C(0, std::sin(th)), std::cos(th)}});
    EXPECT_LT(testing::max_abs_diff(e, want), 1e-12);
  }
  std::mt19937_64 rng(33);
  const auto h = testing::random_hermitian(rng, 4);
  EXPECT_LT(frobenius_distance(expm_hermitian(h, 0.7) * expm_hermitian(h, 0.5), expm_hermitian(h, 1.2)), 1e-10);
}

}  // namespace
}  // namespace qwv
