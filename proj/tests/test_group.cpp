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

#include "group_identities.hpp"
#include "qwv/group.hpp"

namespace qwv {
namespace {

TEST(Group, CodecAndArithmetic) {
  const AbelianGroup g({3, 2});
  EXPECT_EQ(g.order(), 6u);
  EXPECT_EQ(g.encode({2, 1}), 5u);
  EXPECT_EQ(g.decode(3), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(g.add(g.encode({2, 1}), g.encode({2, 1})), g.encode({1, 0}));
  EXPECT_EQ(g.add(5, g.neg(5)), 0u);
  EXPECT_EQ(g.generator(1), 1u);
  EXPECT_EQ(g.element_to_string(5), "(2,1)");
}

TEST(Group, Generate) {
  const AbelianGroup g({2, 2});
  EXPECT_EQ(generate(g, {}).elements(), (std::vector<Element>{0}));
  EXPECT_EQ(generate(g, {g.encode({1, 1})}).elements(), (std::vector<Element>{0, 3}));
  EXPECT_EQ(generate(g, {g.generator(0), g.generator(1)}).order(), 4u);
  const AbelianGroup z6({6});
  EXPECT_EQ(generate(z6, {4}).elements(), (std::vector<Element>{0, 2, 4}));
}

TEST(Group, OrthogonalSubgroup) {
  const AbelianGroup g({2, 2});
  const auto trivial = generate(g, {});
  const auto whole = generate(g, {1, 2});
  EXPECT_EQ(orthogonal_subgroup(trivial), whole);
  EXPECT_EQ(orthogonal_subgroup(whole), trivial);
  EXPECT_EQ(orthogonal_subgroup(generate(g, {3})).elements(), (std::vector<Element>{0, 3}));
  // Z3 x Z2 with H = <(0,1)>: H⊥ = {(a,0)}
  const AbelianGroup g32({3, 2});
  EXPECT_EQ(orthogonal_subgroup(generate(g32, {g32.encode({0, 1})})).elements(), (std::vector<Element>{0, 2, 4}));
}

TEST(Group, SubgroupsOfKleinFourGroup) {
  EXPECT_EQ(all_subgroups(AbelianGroup({2, 2})).size(), 5u);
  EXPECT_EQ(all_subgroups(AbelianGroup({4})).size(), 3u);
  EXPECT_EQ(all_subgroups(AbelianGroup({2, 2, 2})).size(), 16u);
  EXPECT_EQ(all_subgroups(AbelianGroup({6})).size(), 4u);
}

TEST(Group, Cosets) {
  const AbelianGroup g({3, 2});
  const auto h = generate(g, {g.encode({0, 1})});
  const auto cs = cosets(h);
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[1], (std::vector<Element>{2, 3}));
  EXPECT_EQ(coset_repr(cs[2]), 4u);
  const auto idx = coset_index(h);
  EXPECT_EQ(idx[5], 2u);
  EXPECT_EQ(cosets(generate(g, {1, 2})).size(), 1u);
}

TEST(GroupProperty, OrderOfOrthogonalComplement) {
  for (const auto &mod : testing::small_groups(36)) {
    const AbelianGroup g(mod);
    for (const auto &h : all_subgroups(g)) {
      const auto perp = orthogonal_subgroup(h);
      EXPECT_EQ(h.order() * perp.order(), g.order());
      EXPECT_EQ(orthogonal_subgroup(perp), h);
    }
  }
}

TEST(GroupProperty, ResummationAndCharacterIdentities) {
  const auto st = testing::check_group_identities(24, 20);
  EXPECT_GT(st.groups, 20u);
  EXPECT_TRUE(st.structural_ok);
  EXPECT_LE(st.resum_dev, 1e-12);
  EXPECT_LE(st.char_dev, 1e-10);
}

}  // namespace
}  // namespace qwv
