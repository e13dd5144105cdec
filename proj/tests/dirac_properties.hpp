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

// Property suites for labelled operators. Each returns the number of cases
// run and the largest deviation seen.

#include <algorithm>
#include <random>
#include <vector>

#include "qwv/dirac.hpp"
#include "support.hpp"

namespace qwv::testing {

struct PropertyResult {
  int cases = 0;
  int failures = 0;
  double max_dev = 0.0;
  void record(double dev, double tol) {
    ++cases;
    max_dev = std::max(max_dev, dev);
    if (!(dev <= tol)) ++failures;
  }
};

const std::vector<Label> kPool{{0, 2}, {1, 3}, {2, 2}, {3, 2}, {4, 3}};

inline std::size_t dim_of(const std::vector<Label> &ls) {
  std::size_t d = 1;
  for (const auto &l : ls) d *= l.dim;
  return d;
}

inline std::vector<Label> random_subset(std::mt19937_64 &rng, std::size_t min_size = 1) {
  std::vector<Label> out;
  while (out.size() < min_size) {
    out.clear();
    for (const auto &l : kPool)
      if (rng() % 2) out.push_back(l);
  }
  if (dim_of(out) > 24) out.resize(2);
  return out;
}

inline LabelledOperator random_square(std::mt19937_64 &rng, const std::vector<Label> &ls) {
  const std::size_t d = dim_of(ls);
  return LabelledOperator(LabelSet(ls), LabelSet(ls), random_matrix(rng, d, d));
}

inline std::vector<Label> sorted_union(std::vector<Label> a, const std::vector<Label> &b) {
  for (const auto &l : b)
    if (std::none_of(a.begin(), a.end(), [&](const Label &x) { return x.id == l.id; })) a.push_back(l);
  std::sort(a.begin(), a.end(), [](const Label &x, const Label &y) { return x.id < y.id; });
  return a;
}

/// Distance relative to max(1, ‖a‖) when label sets agree, +inf otherwise.
inline double rel_dev(const LabelledOperator &a, const LabelledOperator &b) {
  if (a.out_labels() != b.out_labels() || a.in_labels() != b.in_labels()) return 1e300;
  return fro(a.matrix(), b.matrix()) / std::max(1.0, a.norm());
}

/// A[S]|Φ⟩ = Aᵀ[T]|Φ⟩ with |Φ⟩ = Σ_i |i⟩_S|i⟩_T, dims 2..4.
inline PropertyResult transpose_trick(int n, std::uint64_t seed, double tol) {
  PropertyResult r;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < n; ++t) {
    const std::size_t d = 2 + t % 3;
    const Label s{0, d}, tt{1, d};
    LabelledOperator phi = LabelledOperator::zero(LabelSet{s, tt}, LabelSet{});
    for (std::size_t i = 0; i < d; ++i)
      phi = phi + tensor(LabelledOperator::basis_ket({s}, i), LabelledOperator::basis_ket({tt}, i));
    const auto a = random_matrix(rng, d, d);
    const auto lhs = compose(LabelledOperator::on({s}, a), phi);
    const auto rhs = compose(LabelledOperator::on({tt}, a.transpose()), phi);
    r.record(rel_dev(lhs, rhs), tol);
  }
  return r;
}

/// a⊗b = b⊗a and (a⊗b)⊗c = a⊗(b⊗c) on disjoint, possibly non-square operators.
inline PropertyResult tensor_laws(int n, std::uint64_t seed, double tol) {
  PropertyResult r;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < n; ++t) {
    std::vector<std::vector<Label>> outs(3), ins(3);
    for (const auto &l : kPool) {
      const auto g = rng() % 4;
      if (g < 3) (rng() % 2 ? outs[g] : ins[g]).push_back(l);
    }
    std::vector<LabelledOperator> ops;
    for (int i = 0; i < 3; ++i)
      ops.emplace_back(LabelSet(outs[i]), LabelSet(ins[i]), random_matrix(rng, dim_of(outs[i]), dim_of(ins[i])));
    const auto ab = tensor(ops[0], ops[1]);
    const double d1 = rel_dev(ab, tensor(ops[1], ops[0]));
    const double d2 = rel_dev(tensor(ab, ops[2]), tensor(ops[0], tensor(ops[1], ops[2])));
    const double d3 = rel_dev(big_tensor({ops[2], ops[0], ops[1]}), tensor(ab, ops[2]));
    r.record(std::max({d1, d2, d3}), tol);
  }
  return r;
}

/// (fg)h = f(gh) with automatic lifting; h is square or a ket.
inline PropertyResult compose_assoc(int n, std::uint64_t seed, double tol) {
  PropertyResult r;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < n; ++t) {
    const auto f = random_square(rng, random_subset(rng));
    const auto g = random_square(rng, random_subset(rng));
    const auto sh = random_subset(rng);
    const auto h = rng() % 2 ? random_square(rng, sh)
                             : LabelledOperator(LabelSet(sh), LabelSet{}, random_matrix(rng, dim_of(sh), 1));
    r.record(rel_dev(compose(compose(f, g), h), compose(f, compose(g, h))), tol);
  }
  return r;
}

/// cl(A)cl(B) = cl(AB), cl(A+B) = cl(A)+cl(B), and cl agrees with the entrywise embedding.
inline PropertyResult cyl_homomorphism(int n, std::uint64_t seed, double tol) {
  PropertyResult r;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < n; ++t) {
    const auto tl = random_subset(rng, 2);
    std::vector<Label> sl;
    for (const auto &l : tl)
      if (rng() % 2) sl.push_back(l);
    if (sl.empty()) sl.push_back(tl[0]);
    const LabelSet target(tl);
    const auto a = random_square(rng, sl), b = random_square(rng, sl);
    const auto lhs = compose(cyl_extend(a, target), cyl_extend(b, target));
    const double d1 = rel_dev(lhs, cyl_extend(compose(a, b), target));
    const double d2 = rel_dev(cyl_extend(a + b, target), cyl_extend(a, target) + cyl_extend(b, target));
    const double d3 = fro(cyl_extend(a, target).matrix(), embed(a.matrix(), sl, tl)) / std::max(1.0, a.norm());
    r.record(std::max({d1, d2, d3}), tol);
  }
  return r;
}

}  // namespace qwv::testing
