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

// Super-operators over a label set and the denotational semantics of qwhile.

#include <cstddef>
#include <functional>

#include "qwv/dirac.hpp"
#include "qwv/qwhile.hpp"

namespace qwv {

/// Linear map on operators over `labels`, acting on column-major vectorized
/// matrices: vec(E(ρ)) = matrix · vec(ρ).
struct SuperOperator {
  LabelSet labels;
  ComplexMatrix matrix;

  std::size_t dim() const noexcept { return labels.dim(); }

  static SuperOperator identity(const LabelSet &labels);
  static SuperOperator zero(const LabelSet &labels);
  /// ρ ↦ KρK† for square K on `labels`.
  static SuperOperator conjugation(const LabelSet &labels, const ComplexMatrix &k);
  /// Tabulates an arbitrary linear map column by column.
  static SuperOperator from_map(const LabelSet &labels, const std::function<ComplexMatrix(const ComplexMatrix &)> &f);

  ComplexMatrix apply(const ComplexMatrix &rho) const;
};

SuperOperator compose(const SuperOperator &second, const SuperOperator &first);
SuperOperator add(const SuperOperator &a, const SuperOperator &b);
SuperOperator scale(Scalar s, const SuperOperator &a);
/// Heisenberg dual: tr[A·E(ρ)] = tr[E*(A)·ρ].
SuperOperator dual(const SuperOperator &so);
SuperOperator extend(const SuperOperator &so, const LabelSet &target);
/// Applies `so` to ρ whose labels contain so.labels.
LabelledOperator apply(const SuperOperator &so, const LabelledOperator &rho);
ComplexMatrix choi(const SuperOperator &so);

struct QualityReport {
  bool is_cp = false;
  bool is_trace_nonincreasing = false;
  bool is_trace_preserving = false;
  double choi_min_eig = 0.0;
};

QualityReport quality(const SuperOperator &so, double tol = 1e-9);

enum class WhileStrategy { Iterative, ClosedForm, Auto };

struct SemanticsOptions {
  double while_tol = 1e-10;
  std::size_t while_kmax = 100000;
  WhileStrategy strategy = WhileStrategy::Iterative;
  std::size_t max_dim = 256;
  /// Largest footprint dimension for which a super-operator is tabulated.
  std::size_t max_superop_dim = 64;
};

/// Diagnostics of the last loop evaluated by denote().
struct WhileStats {
  std::size_t terms = 0;     // number of unrolled iterations summed
  double residual = 0.0;     // last increment (iterative) or 0 (closed form)
  double spectral_estimate = 0.0;
  bool closed_form = false;
};

/// ⟦p⟧ on `domain` (defaults to the footprint).
SuperOperator denote(const Program &p, const SemanticsOptions &opts = {}, WhileStats *stats = nullptr);
SuperOperator denote_on(const Program &p, const LabelSet &domain, const SemanticsOptions &opts = {},
                        WhileStats *stats = nullptr);

/// Forward evaluation on a density operator without tabulating super-operators.
/// Loops are unrolled until the remaining mass drops below while_tol.
LabelledOperator evolve(const Program &p, const LabelledOperator &rho, const SemanticsOptions &opts = {});

/// Rejects label sets whose dimension exceeds the limit.
void check_dimension(const LabelSet &labels, std::size_t max_dim);

}  // namespace qwv
