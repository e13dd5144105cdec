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

// Labelled Dirac notation. Every operator carries the sorted label sets of
// its codomain (out) and domain (in). Matrices are always stored in the
// canonical basis order: mixed radix over the sorted labels with the first
// (smallest id) label most significant.

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qwv/linalg.hpp"

namespace qwv {

struct Label {
  int id = 0;
  std::size_t dim = 1;

  friend bool operator==(const Label &, const Label &) = default;
};

class LabelSet {
 public:
  LabelSet() = default;
  /// Accepts labels in any order; throws LabelClash on repeated ids.
  explicit LabelSet(std::vector<Label> labels);
  LabelSet(std::initializer_list<Label> labels) : LabelSet(std::vector<Label>(labels)) {}

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  std::size_t dim() const noexcept;
  bool contains(int id) const noexcept;
  /// Index of `id` in the sorted sequence; throws UnknownLabel.
  std::size_t position(int id) const;
  std::vector<int> ids() const;
  std::vector<std::size_t> dims() const;

  const Label &operator[](std::size_t i) const { return labels_[i]; }
  auto begin() const noexcept { return labels_.begin(); }
  auto end() const noexcept { return labels_.end(); }

  bool is_subset_of(const LabelSet &other) const noexcept;
  bool disjoint_from(const LabelSet &other) const noexcept;

  friend bool operator==(const LabelSet &, const LabelSet &) = default;

 private:
  std::vector<Label> labels_;
};

/// Throws LabelMismatch when one id appears with two different dimensions.
LabelSet set_union(const LabelSet &a, const LabelSet &b);
LabelSet set_intersection(const LabelSet &a, const LabelSet &b);
LabelSet set_difference(const LabelSet &a, const LabelSet &b);
std::string to_string(const LabelSet &s);

/// The global label table: one entry per atomic storage cell.
class LabelTable {
 public:
  struct Entry {
    std::string name;
    std::size_t dim;
    std::string type;
  };

  Label add(std::string name, std::size_t dim, std::string type = {});
  Label label(int id) const;
  const Entry &entry(int id) const;
  /// Returns -1 when absent.
  int find(std::string_view name) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
};

class LabelledOperator {
 public:
  LabelledOperator() : matrix_(1, 1) {}
  /// `matrix` must already be in canonical order for (out, in).
  LabelledOperator(LabelSet out, LabelSet in, ComplexMatrix matrix);

  /// Re-permutes a matrix whose rows/cols follow the given label orders.
  static LabelledOperator from_ordered(const std::vector<Label> &out_order,
                                       const std::vector<Label> &in_order, const ComplexMatrix &matrix);
  static LabelledOperator scalar(Scalar value);
  static LabelledOperator identity(const LabelSet &labels);
  static LabelledOperator zero(const LabelSet &out, const LabelSet &in);
  /// Vector given in the basis order of `labels` as listed.
  static LabelledOperator ket(const std::vector<Label> &labels, std::vector<Scalar> amplitudes);
  static LabelledOperator bra(const std::vector<Label> &labels, std::vector<Scalar> amplitudes);
  static LabelledOperator basis_ket(const std::vector<Label> &labels, std::size_t index);
  /// Operator given in the basis order of `labels` (square).
  static LabelledOperator on(const std::vector<Label> &labels, const ComplexMatrix &matrix);

  const LabelSet &out_labels() const noexcept { return out_; }
  const LabelSet &in_labels() const noexcept { return in_; }
  const ComplexMatrix &matrix() const noexcept { return matrix_; }
  /// Union of out and in labels.
  LabelSet labels() const;

  bool is_square() const noexcept { return out_ == in_; }
  bool is_scalar() const noexcept { return out_.empty() && in_.empty(); }
  bool is_ket() const noexcept { return in_.empty(); }
  Scalar scalar_value() const;

  LabelledOperator adjoint() const;
  /// Transpose with respect to the computational basis of each label.
  LabelledOperator transpose() const;
  double norm() const { return matrix_.frobenius_norm(); }
  Scalar trace() const;

 private:
  LabelSet out_;
  LabelSet in_;
  ComplexMatrix matrix_;
};

/// Lookup helper: the labels in `ids` as listed, or UnknownLabel.
std::vector<Label> labels_of(const LabelTable &table, const std::vector<int> &ids);
LabelledOperator ket(const LabelTable &table, const std::vector<int> &ids, std::vector<Scalar> v);
LabelledOperator bra(const LabelTable &table, const std::vector<int> &ids, std::vector<Scalar> v);

LabelledOperator tensor(const LabelledOperator &a, const LabelledOperator &b);
/// Contraction over f.in ∩ g.out with automatic identity lifting of the rest.
LabelledOperator compose(const LabelledOperator &f, const LabelledOperator &g);
LabelledOperator add(const LabelledOperator &a, const LabelledOperator &b);
LabelledOperator subtract(const LabelledOperator &a, const LabelledOperator &b);
LabelledOperator scale(Scalar s, const LabelledOperator &a);
LabelledOperator adjoint(const LabelledOperator &a);
double norm(const LabelledOperator &a);
LabelledOperator cyl_extend(const LabelledOperator &a, const LabelSet &target);
LabelledOperator big_tensor(const std::vector<LabelledOperator> &items);
/// Traces out `traced` from a square operator.
LabelledOperator partial_trace(const LabelledOperator &a, const LabelSet &traced);
bool approx_eq(const LabelledOperator &a, const LabelledOperator &b, double tol = 1e-9);
/// Frobenius distance after extending both square operators to their common labels.
double extended_distance(const LabelledOperator &a, const LabelledOperator &b);

inline LabelledOperator operator+(const LabelledOperator &a, const LabelledOperator &b) { return add(a, b); }
inline LabelledOperator operator-(const LabelledOperator &a, const LabelledOperator &b) { return subtract(a, b); }
inline LabelledOperator operator*(const LabelledOperator &a, const LabelledOperator &b) { return compose(a, b); }
inline LabelledOperator operator*(Scalar s, const LabelledOperator &a) { return scale(s, a); }

// ---------------------------------------------------------------------------
// Textual assertions.
//
//   expr   := term (('+' | '-') term)*
//   term   := tensor (('*' | '/') tensor)*          '*' composes
//   tensor := unary ('(x)' unary)*
//   unary  := '-' unary | power
//   power  := primary ('^' unary)?
//   primary:= number | 'i' | 'pi' | 'e' | name | '(' expr (',' expr)* ')'
//           | ket(vars, k) | bra(vars, k) | proj(vars, k) | I(vars)
//           | adj(expr) | conj(expr) | sqrt(expr) | exp(expr) | cos(expr) | sin(expr)
//           | sum(name in lo..hi, expr)             hi exclusive
//   vars   := var | '[' var (',' var)* ']'        var := name ('[' int ']')*
//
// k is an integer expression (flat mixed-radix index) or a tuple with one
// entry per atomic label. Names bound by sum shadow the constants i, e, pi.

/// Maps a variable reference to its atomic labels in component order.
using LabelResolver = std::function<std::vector<Label>(std::string_view)>;
/// Maps an atomic label id back to the name the resolver accepts.
using LabelNamer = std::function<std::string(int)>;

LabelledOperator parse_assertion(std::string_view text, const LabelResolver &resolve);
/// Renders an operator as an assertion string that parses back to it.
std::string render_assertion(const LabelledOperator &op, const LabelNamer &name_of);

}  // namespace qwv
