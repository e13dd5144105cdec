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

#include "qwv/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qwv/error.hpp"

namespace qwv {

AbelianGroup::AbelianGroup(std::vector<std::size_t> moduli) : moduli_(std::move(moduli)) {
  for (std::size_t p : moduli_) {
    if (p < 1) throw Error(ErrorCode::BadParam, "group modulus must be >= 1");
    order_ *= p;
  }
}

std::vector<std::size_t> AbelianGroup::decode(Element g) const {
  if (g >= order_) throw Error(ErrorCode::BadIndex, "element " + std::to_string(g) + " outside group");
  std::vector<std::size_t> c(moduli_.size());
  for (std::size_t m = moduli_.size(); m-- > 0;) {
    c[m] = g % moduli_[m];
    g /= moduli_[m];
  }
  return c;
}

Element AbelianGroup::encode(const std::vector<std::size_t> &components) const {
  if (components.size() != moduli_.size()) throw Error(ErrorCode::ShapeMismatch, "element arity");
  Element g = 0;
  for (std::size_t m = 0; m < moduli_.size(); ++m) g = g * moduli_[m] + components[m] % moduli_[m];
  return g;
}

Element AbelianGroup::add(Element a, Element b) const {
  auto x = decode(a);
  const auto y = decode(b);
  for (std::size_t m = 0; m < x.size(); ++m) x[m] = (x[m] + y[m]) % moduli_[m];
  return encode(x);
}

Element AbelianGroup::neg(Element a) const {
  auto x = decode(a);
  for (std::size_t m = 0; m < x.size(); ++m) x[m] = (moduli_[m] - x[m]) % moduli_[m];
  return encode(x);
}

Element AbelianGroup::generator(std::size_t i) const {
  std::vector<std::size_t> c(moduli_.size(), 0);
  c.at(i) = 1;
  return encode(c);
}

Scalar AbelianGroup::character(Element g, Element h) const {
  const auto x = decode(g);
  const auto y = decode(h);
  // sum the phases as exact fractions of a turn before exponentiating
  double turns = 0.0;
  for (std::size_t m = 0; m < x.size(); ++m) {
    turns += static_cast<double>((x[m] * y[m]) % moduli_[m]) / static_cast<double>(moduli_[m]);
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

std::string AbelianGroup::element_to_string(Element g) const {
  const auto c = decode(g);
  std::string s = "(";
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (m) s += ",";
    s += std::to_string(c[m]);
  }
  return s + ")";
}

Subgroup::Subgroup(AbelianGroup parent, std::vector<Element> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (elements_.empty() || elements_[0] != 0) throw Error(ErrorCode::BadParam, "subgroup lacks the identity");
  for (Element a : elements_) {
    if (!contains(parent_.neg(a))) throw Error(ErrorCode::BadParam, "subgroup not closed under negation");
    for (Element b : elements_)
      if (!contains(parent_.add(a, b))) throw Error(ErrorCode::BadParam, "subgroup not closed under addition");
  }
}

bool Subgroup::contains(Element g) const { return std::binary_search(elements_.begin(), elements_.end(), g); }

Subgroup generate(const AbelianGroup &g, const std::vector<Element> &gens) {
  std::set<Element> s{0};
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Element> cur(s.begin(), s.end());
    for (Element a : cur)
      for (Element b : gens)
        if (s.insert(g.add(a, b)).second) grew = true;
  }
  return Subgroup(g, std::vector<Element>(s.begin(), s.end()));
}

Subgroup orthogonal_subgroup(const Subgroup &h) {
  const AbelianGroup &g = h.parent();
  std::vector<Element> out;
  for (Element x = 0; x < g.order(); ++x) {
    const bool trivial = std::all_of(h.elements().begin(), h.elements().end(),
                                     [&](Element y) { return std::abs(g.character(x, y) - 1.0) < 1e-9; });
    if (trivial) out.push_back(x);
  }
  return Subgroup(g, std::move(out));
}

std::vector<std::vector<Element>> cosets(const Subgroup &h) {
  const AbelianGroup &g = h.parent();
  std::vector<bool> seen(g.order(), false);
  std::vector<std::vector<Element>> out;
  for (Element x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Element> c;
    for (Element y : h.elements()) c.push_back(g.add(x, y));
    std::sort(c.begin(), c.end());
    for (Element y : c) seen[y] = true;
    out.push_back(std::move(c));
  }
  return out;
}

Element coset_repr(const std::vector<Element> &coset) {
  if (coset.empty()) throw Error(ErrorCode::BadParam, "empty coset");
  return *std::min_element(coset.begin(), coset.end());
}

std::vector<std::size_t> coset_index(const Subgroup &h) {
  std::vector<std::size_t> idx(h.parent().order());
  const auto cs = cosets(h);
  for (std::size_t j = 0; j < cs.size(); ++j)
    for (Element x : cs[j]) idx[x] = j;
  return idx;
}

std::vector<Subgroup> all_subgroups(const AbelianGroup &g) {
  std::vector<Subgroup> found;
  auto known = [&](const Subgroup &s) { return std::find(found.begin(), found.end(), s) != found.end(); };
  for (Element x = 0; x < g.order(); ++x) {
    Subgroup c = generate(g, {x});
    if (!known(c)) found.push_back(std::move(c));
  }
  // close under joins
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<Element> gens = found[i].elements();
      gens.insert(gens.end(), found[j].elements().begin(), found[j].elements().end());
      Subgroup s = generate(g, gens);
      if (!known(s)) found.push_back(std::move(s));
    }
  }
  return found;
}

}  // namespace qwv
