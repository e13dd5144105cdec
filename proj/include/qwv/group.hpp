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

// Finite abelian groups Z_{p0} x ... x Z_{p(k-1)}. Elements are flat
// mixed-radix indices with the first component most significant.

#include <cstddef>
#include <string>
#include <vector>

#include "qwv/linalg.hpp"

namespace qwv {

using Element = std::size_t;

class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<std::size_t> moduli);

  const std::vector<std::size_t> &moduli() const noexcept { return moduli_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t rank() const noexcept { return moduli_.size(); }

  std::vector<std::size_t> decode(Element g) const;
  Element encode(const std::vector<std::size_t> &components) const;

  Element add(Element a, Element b) const;
  Element neg(Element a) const;
  Element identity() const noexcept { return 0; }
  /// The i-th standard generator (1 in component i).
  Element generator(std::size_t i) const;

  /// χ_g(h) = ∏ e^{2πi g_m h_m / p_m}.
  Scalar character(Element g, Element h) const;

  std::string element_to_string(Element g) const;

  friend bool operator==(const AbelianGroup &, const AbelianGroup &) = default;

 private:
  std::vector<std::size_t> moduli_;
  std::size_t order_ = 1;
};

class Subgroup {
 public:
  /// `elements` must be closed; use generate() otherwise.
  Subgroup(AbelianGroup parent, std::vector<Element> elements);

  const AbelianGroup &parent() const noexcept { return parent_; }
  const std::vector<Element> &elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  bool contains(Element g) const;

  friend bool operator==(const Subgroup &a, const Subgroup &b) {
    return a.parent_ == b.parent_ && a.elements_ == b.elements_;
  }

 private:
  AbelianGroup parent_;
  std::vector<Element> elements_;
};

/// Smallest subgroup containing `gens`.
Subgroup generate(const AbelianGroup &g, const std::vector<Element> &gens);
Subgroup orthogonal_subgroup(const Subgroup &h);
/// Cosets of h, each sorted, ordered by their minimal element (the repr).
std::vector<std::vector<Element>> cosets(const Subgroup &h);
Element coset_repr(const std::vector<Element> &coset);
/// Index of the coset containing each element of the parent group.
std::vector<std::size_t> coset_index(const Subgroup &h);
/// Every subgroup, in order of first discovery by joining cyclic subgroups.
std::vector<Subgroup> all_subgroups(const AbelianGroup &g);

}  // namespace qwv
