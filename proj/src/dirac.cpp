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

#include "qwv/dirac.hpp"

#include <algorithm>
#include <numeric>

#include "qwv/error.hpp"

namespace qwv {

namespace {

std::size_t product(const std::vector<Label> &ls) {
  std::size_t d = 1;
  for (const auto &l : ls) d *= l.dim;
  return d;
}

// For labels listed in `order`, map[c] is the index in `order`'s basis of
// canonical index c.
std::vector<std::size_t> canonical_map(const std::vector<Label> &order, LabelSet &canon) {
  canon = LabelSet(order);
  const std::size_t n = order.size();
  std::vector<std::size_t> src_stride(n, 1);
  for (std::size_t k = n; k-- > 1;) src_stride[k - 1] = src_stride[k] * order[k].dim;
  // stride in the source index of canonical position p
  std::vector<std::size_t> stride(n);
  for (std::size_t k = 0; k < n; ++k) stride[canon.position(order[k].id)] = src_stride[k];
  const std::size_t total = canon.dim();
  std::vector<std::size_t> map(total);
  for (std::size_t c = 0; c < total; ++c) {
    std::size_t rem = c, src = 0;
    for (std::size_t p = n; p-- > 0;) {
      src += (rem % canon[p].dim) * stride[p];
      rem /= canon[p].dim;
    }
    map[c] = src;
  }
  return map;
}

bool is_identity_map(const std::vector<std::size_t> &m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != i) return false;
  return true;
}

std::vector<Label> concat(const LabelSet &a, const LabelSet &b) {
  std::vector<Label> r(a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace

LabelSet::LabelSet(std::vector<Label> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end(), [](const Label &a, const Label &b) { return a.id < b.id; });
  for (std::size_t i = 1; i < labels_.size(); ++i) {
    if (labels_[i].id == labels_[i - 1].id) {
      throw Error(ErrorCode::LabelClash, "label " + std::to_string(labels_[i].id) + " repeated");
    }
  }
}

std::size_t LabelSet::dim() const noexcept { return product(labels_); }

bool LabelSet::contains(int id) const noexcept {
  return std::binary_search(labels_.begin(), labels_.end(), Label{id, 0},
                            [](const Label &a, const Label &b) { return a.id < b.id; });
}

std::size_t LabelSet::position(int id) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), Label{id, 0},
                             [](const Label &a, const Label &b) { return a.id < b.id; });
  if (it == labels_.end() || it->id != id) throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(id));
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<int> LabelSet::ids() const {
  std::vector<int> r;
  for (const auto &l : labels_) r.push_back(l.id);
  return r;
}

std::vector<std::size_t> LabelSet::dims() const {
  std::vector<std::size_t> r;
  for (const auto &l : labels_) r.push_back(l.dim);
  return r;
}

bool LabelSet::is_subset_of(const LabelSet &other) const noexcept {
  return std::all_of(labels_.begin(), labels_.end(), [&](const Label &l) { return other.contains(l.id); });
}

bool LabelSet::disjoint_from(const LabelSet &other) const noexcept {
  return std::none_of(labels_.begin(), labels_.end(), [&](const Label &l) { return other.contains(l.id); });
}

LabelSet set_union(const LabelSet &a, const LabelSet &b) {
  std::vector<Label> r(a.begin(), a.end());
  for (const auto &l : b) {
    if (a.contains(l.id)) {
      if (a[a.position(l.id)].dim != l.dim) {
        throw Error(ErrorCode::LabelMismatch, "label " + std::to_string(l.id) + " with two dimensions");
      }
    } else {
      r.push_back(l);
    }
  }
  return LabelSet(std::move(r));
}

LabelSet set_intersection(const LabelSet &a, const LabelSet &b) {
  std::vector<Label> r;
  for (const auto &l : a)
    if (b.contains(l.id)) r.push_back(l);
  return LabelSet(std::move(r));
}

LabelSet set_difference(const LabelSet &a, const LabelSet &b) {
  std::vector<Label> r;
  for (const auto &l : a)
    if (!b.contains(l.id)) r.push_back(l);
  return LabelSet(std::move(r));
}

std::string to_string(const LabelSet &s) {
  std::string r = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) r += ",";
    r += std::to_string(s[i].id);
  }
  return r + "}";
}

Label LabelTable::add(std::string name, std::size_t dim, std::string type) {
  if (dim < 1) throw Error(ErrorCode::BadParam, "label dimension must be >= 1");
  if (find(name) >= 0) throw Error(ErrorCode::LabelClash, "label name '" + name + "' already used");
  entries_.push_back({std::move(name), dim, std::move(type)});
  return Label{static_cast<int>(entries_.size()) - 1, dim};
}

const LabelTable::Entry &LabelTable::entry(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= entries_.size()) {
    throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(id));
  }
  return entries_[static_cast<std::size_t>(id)];
}

Label LabelTable::label(int id) const { return Label{id, entry(id).dim}; }

int LabelTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].name == name) return static_cast<int>(i);
  return -1;
}

LabelledOperator::LabelledOperator(LabelSet out, LabelSet in, ComplexMatrix matrix)
    : out_(std::move(out)), in_(std::move(in)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != out_.dim() || matrix_.cols() != in_.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix " + std::to_string(matrix_.rows()) + "x" +
                                              std::to_string(matrix_.cols()) + " for labels " +
                                              to_string(out_) + " <- " + to_string(in_));
  }
}

LabelledOperator LabelledOperator::from_ordered(const std::vector<Label> &out_order,
                                                const std::vector<Label> &in_order,
                                                const ComplexMatrix &matrix) {
  if (matrix.rows() != product(out_order) || matrix.cols() != product(in_order)) {
    throw Error(ErrorCode::ShapeMismatch, "matrix shape does not match label dimensions");
  }
  LabelSet out, in;
  const auto rmap = canonical_map(out_order, out);
  const auto cmap = canonical_map(in_order, in);
  if (is_identity_map(rmap) && is_identity_map(cmap)) return LabelledOperator(out, in, matrix);
  ComplexMatrix m(matrix.rows(), matrix.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = matrix(rmap[r], cmap[c]);
  return LabelledOperator(std::move(out), std::move(in), std::move(m));
}

LabelledOperator LabelledOperator::scalar(Scalar value) {
  return LabelledOperator({}, {}, ComplexMatrix(1, 1, {value}));
}

LabelledOperator LabelledOperator::identity(const LabelSet &labels) {
  return LabelledOperator(labels, labels, ComplexMatrix::identity(labels.dim()));
}

LabelledOperator LabelledOperator::zero(const LabelSet &out, const LabelSet &in) {
  return LabelledOperator(out, in, ComplexMatrix(out.dim(), in.dim()));
}

LabelledOperator LabelledOperator::ket(const std::vector<Label> &labels, std::vector<Scalar> amplitudes) {
  if (amplitudes.size() != product(labels)) {
    throw Error(ErrorCode::ShapeMismatch, "ket of length " + std::to_string(amplitudes.size()) +
                                              " on space of dimension " + std::to_string(product(labels)));
  }
  return from_ordered(labels, {}, ComplexMatrix::column(std::move(amplitudes)));
}

LabelledOperator LabelledOperator::bra(const std::vector<Label> &labels, std::vector<Scalar> amplitudes) {
  return ket(labels, std::move(amplitudes)).adjoint();
}

LabelledOperator LabelledOperator::basis_ket(const std::vector<Label> &labels, std::size_t index) {
  const std::size_t d = product(labels);
  if (index >= d) throw Error(ErrorCode::BadIndex, "basis index " + std::to_string(index) + " >= " + std::to_string(d));
  return from_ordered(labels, {}, ComplexMatrix::basis_column(d, index));
}

LabelledOperator LabelledOperator::on(const std::vector<Label> &labels, const ComplexMatrix &matrix) {
  return from_ordered(labels, labels, matrix);
}

LabelSet LabelledOperator::labels() const { return set_union(out_, in_); }

Scalar LabelledOperator::scalar_value() const {
  if (!is_scalar()) throw Error(ErrorCode::ShapeMismatch, "operator is not a scalar");
  return matrix_(0, 0);
}

LabelledOperator LabelledOperator::adjoint() const { return LabelledOperator(in_, out_, matrix_.adjoint()); }

LabelledOperator LabelledOperator::transpose() const { return LabelledOperator(in_, out_, matrix_.transpose()); }

Scalar LabelledOperator::trace() const {
  if (!is_square()) throw Error(ErrorCode::NotSquare, "trace of non-square labelled operator");
  return matrix_.trace();
}

std::vector<Label> labels_of(const LabelTable &table, const std::vector<int> &ids) {
  std::vector<Label> r;
  for (int id : ids) r.push_back(table.label(id));
  return r;
}

LabelledOperator ket(const LabelTable &table, const std::vector<int> &ids, std::vector<Scalar> v) {
  return LabelledOperator::ket(labels_of(table, ids), std::move(v));
}

LabelledOperator bra(const LabelTable &table, const std::vector<int> &ids, std::vector<Scalar> v) {
  return LabelledOperator::bra(labels_of(table, ids), std::move(v));
}

LabelledOperator tensor(const LabelledOperator &a, const LabelledOperator &b) {
  if (!a.out_labels().disjoint_from(b.out_labels()) || !a.in_labels().disjoint_from(b.in_labels())) {
    throw Error(ErrorCode::LabelClash, "tensor of overlapping operators " + to_string(a.labels()) + " and " +
                                           to_string(b.labels()));
  }
  if (b.is_scalar()) return scale(b.scalar_value(), a);
  if (a.is_scalar()) return scale(a.scalar_value(), b);
  return LabelledOperator::from_ordered(concat(a.out_labels(), b.out_labels()),
                                        concat(a.in_labels(), b.in_labels()), kron(a.matrix(), b.matrix()));
}

LabelledOperator compose(const LabelledOperator &f, const LabelledOperator &g) {
  if (f.is_scalar()) return scale(f.scalar_value(), g);
  if (g.is_scalar()) return scale(g.scalar_value(), f);
  const LabelSet &A = f.in_labels();
  const LabelSet &D = g.out_labels();
  const LabelSet d_minus_a = set_difference(D, A);
  const LabelSet a_minus_d = set_difference(A, D);
  if (!f.out_labels().disjoint_from(d_minus_a)) {
    throw Error(ErrorCode::LabelClash, "compose: output labels of the left factor meet " + to_string(d_minus_a));
  }
  if (!g.in_labels().disjoint_from(a_minus_d)) {
    throw Error(ErrorCode::LabelClash, "compose: input labels of the right factor meet " + to_string(a_minus_d));
  }
  const LabelledOperator fl = d_minus_a.empty() ? f : tensor(f, LabelledOperator::identity(d_minus_a));
  const LabelledOperator gl = a_minus_d.empty() ? g : tensor(g, LabelledOperator::identity(a_minus_d));
  return LabelledOperator(fl.out_labels(), gl.in_labels(), matmul(fl.matrix(), gl.matrix()));
}

namespace {
void require_same_labels(const LabelledOperator &a, const LabelledOperator &b, const char *op) {
  if (a.out_labels() != b.out_labels() || a.in_labels() != b.in_labels()) {
    throw Error(ErrorCode::LabelMismatch, std::string(op) + ": " + to_string(a.out_labels()) + "<-" +
                                              to_string(a.in_labels()) + " vs " + to_string(b.out_labels()) +
                                              "<-" + to_string(b.in_labels()));
  }
}
}  // namespace

LabelledOperator add(const LabelledOperator &a, const LabelledOperator &b) {
  require_same_labels(a, b, "add");
  return LabelledOperator(a.out_labels(), a.in_labels(), a.matrix() + b.matrix());
}

LabelledOperator subtract(const LabelledOperator &a, const LabelledOperator &b) {
  require_same_labels(a, b, "subtract");
  return LabelledOperator(a.out_labels(), a.in_labels(), a.matrix() - b.matrix());
}

LabelledOperator scale(Scalar s, const LabelledOperator &a) {
  return LabelledOperator(a.out_labels(), a.in_labels(), s * a.matrix());
}

LabelledOperator adjoint(const LabelledOperator &a) { return a.adjoint(); }

double norm(const LabelledOperator &a) { return a.norm(); }

LabelledOperator cyl_extend(const LabelledOperator &a, const LabelSet &target) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "cylindrical extension of a non-square operator");
  if (!a.out_labels().is_subset_of(target)) {
    throw Error(ErrorCode::NotSuperset, to_string(target) + " does not contain " + to_string(a.out_labels()));
  }
  const LabelSet rest = set_difference(target, a.out_labels());
  if (rest.empty()) return a;
  return tensor(a, LabelledOperator::identity(rest));
}

LabelledOperator big_tensor(const std::vector<LabelledOperator> &items) {
  LabelledOperator r = LabelledOperator::scalar(1.0);
  for (const auto &x : items) r = tensor(r, x);
  return r;
}

LabelledOperator partial_trace(const LabelledOperator &a, const LabelSet &traced) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "partial trace of a non-square operator");
  if (!traced.is_subset_of(a.out_labels())) {
    throw Error(ErrorCode::NotSuperset, to_string(a.out_labels()) + " does not contain " + to_string(traced));
  }
  const LabelSet &all = a.out_labels();
  std::vector<std::size_t> keep;
  for (std::size_t p = 0; p < all.size(); ++p)
    if (!traced.contains(all[p].id)) keep.push_back(p);
  const auto dims = all.dims();
  const LabelSet rest = set_difference(all, traced);
  return LabelledOperator(rest, rest, qwv::partial_trace(a.matrix(), dims, keep));
}

bool approx_eq(const LabelledOperator &a, const LabelledOperator &b, double tol) {
  if (a.out_labels() != b.out_labels() || a.in_labels() != b.in_labels()) return false;
  return approx_equal(a.matrix(), b.matrix(), tol);
}

double extended_distance(const LabelledOperator &a, const LabelledOperator &b) {
  const LabelSet all = set_union(a.labels(), b.labels());
  return frobenius_distance(cyl_extend(a, all).matrix(), cyl_extend(b, all).matrix());
}

}  // namespace qwv
