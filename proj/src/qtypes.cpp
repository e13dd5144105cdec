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

#include "qwv/qtypes.hpp"

#include <cmath>
#include <numbers>

#include "qwv/error.hpp"

namespace qwv {

QType::QType(Kind k, std::size_t n, std::vector<QType> children) : kind_(k), n_(n), children_(std::move(children)) {
  switch (k) {
    case Kind::Bool: dim_ = 2; break;
    case Kind::ZN: dim_ = n; break;
    case Kind::Pair: dim_ = children_[0].dim_ * children_[1].dim_; break;
    case Kind::Tuple:
      dim_ = 1;
      for (std::size_t i = 0; i < n; ++i) dim_ *= children_[0].dim_;
      break;
  }
}

QType QType::boolean() { return QType(Kind::Bool, 2, {}); }

QType QType::zn(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::BadParam, "int<n> needs n >= 1");
  return QType(Kind::ZN, n, {});
}

QType QType::pair(QType a, QType b) { return QType(Kind::Pair, 2, {std::move(a), std::move(b)}); }

QType QType::tuple(QType t, std::size_t arity) {
  if (arity < 1) throw Error(ErrorCode::BadParam, "tuple arity must be >= 1");
  return QType(Kind::Tuple, arity, {std::move(t)});
}

std::vector<QType> QType::components() const {
  switch (kind_) {
    case Kind::Pair: return children_;
    case Kind::Tuple: return std::vector<QType>(n_, children_[0]);
    default: return {};
  }
}

std::vector<std::size_t> QType::atom_dims() const {
  if (is_atomic()) return {dim_};
  std::vector<std::size_t> out;
  for (const auto &c : components()) {
    const auto d = c.atom_dims();
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

std::string QType::to_string() const {
  switch (kind_) {
    case Kind::Bool: return "bool";
    case Kind::ZN: return "int<" + std::to_string(n_) + ">";
    case Kind::Pair: return "(" + children_[0].to_string() + " * " + children_[1].to_string() + ")";
    case Kind::Tuple: return "(" + children_[0].to_string() + ")^" + std::to_string(n_);
  }
  return "?";
}

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const Scalar kI(0.0, 1.0);

void require_dims(const std::string &name, const std::vector<std::size_t> &dims,
                  const std::vector<std::size_t> &want) {
  if (dims != want) {
    std::string s;
    for (auto d : dims) s += (s.empty() ? "" : ",") + std::to_string(d);
    throw Error(ErrorCode::BadParam, "gate " + name + " cannot act on dimensions [" + s + "]");
  }
}

void require_params(const std::string &name, const std::vector<double> &params, std::size_t n) {
  if (params.size() != n) {
    throw Error(ErrorCode::BadParam, "gate " + name + " takes " + std::to_string(n) + " parameter(s)");
  }
}
}  // namespace

ComplexMatrix gate_h() { return ComplexMatrix::from_rows({{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}); }
ComplexMatrix gate_x() { return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
ComplexMatrix gate_y() { return ComplexMatrix::from_rows({{0.0, -kI}, {kI, 0.0}}); }
ComplexMatrix gate_z() { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }
ComplexMatrix gate_s() { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, kI}}); }
ComplexMatrix gate_ph(double theta) { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, std::polar(1.0, theta)}}); }

ComplexMatrix controlled(const ComplexMatrix &u) {
  if (!u.is_square()) throw Error(ErrorCode::ShapeMismatch, "controlled gate needs a square matrix");
  const std::size_t d = u.rows();
  ComplexMatrix r(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) r(i, i) = 1.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) r(d + i, d + j) = u(i, j);
  return r;
}

ComplexMatrix gate_swap(std::size_t d) {
  ComplexMatrix r(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) r(b * d + a, a * d + b) = 1.0;
  return r;
}

bool is_builtin_gate(const std::string &name) {
  static const char *const names[] = {"H", "X", "Y", "Z", "S", "Ph", "CU", "CZ", "CNOT", "SWAP", "QFT", "IQFT", "Hn"};
  for (const char *n : names)
    if (name == n) return true;
  return false;
}

GateSpec builtin(const std::string &name, const std::vector<double> &params, const std::vector<std::size_t> &dims,
                 const GateSpec *inner) {
  GateSpec g{name, params, {}, dims.size()};
  if (name == "H" || name == "X" || name == "Y" || name == "Z" || name == "S") {
    require_params(name, params, 0);
    require_dims(name, dims, {2});
    g.matrix = name == "H" ? gate_h() : name == "X" ? gate_x() : name == "Y" ? gate_y() : name == "Z" ? gate_z() : gate_s();
  } else if (name == "Ph") {
    require_params(name, params, 1);
    require_dims(name, dims, {2});
    g.matrix = gate_ph(params[0]);
  } else if (name == "CZ" || name == "CNOT") {
    require_params(name, params, 0);
    require_dims(name, dims, {2, 2});
    g.matrix = controlled(name == "CZ" ? gate_z() : gate_x());
  } else if (name == "CU") {
    if (!inner) throw Error(ErrorCode::BadParam, "CU needs a gate argument");
    if (dims.size() != 2 || dims[0] != 2 || dims[1] != inner->matrix.rows()) {
      throw Error(ErrorCode::BadParam, "CU(" + inner->name + ") applied to mismatched variables");
    }
    g.matrix = controlled(inner->matrix);
  } else if (name == "SWAP") {
    require_params(name, params, 0);
    if (dims.size() != 2 || dims[0] != dims[1]) throw Error(ErrorCode::BadParam, "SWAP needs two equal dimensions");
    g.matrix = gate_swap(dims[0]);
  } else if (name == "QFT" || name == "IQFT" || name == "Hn") {
    require_params(name, params, 0);
    if (dims.size() != 1) throw Error(ErrorCode::BadParam, name + " acts on one variable");
    g.matrix = name == "IQFT" ? qft(dims[0]).adjoint() : qft(dims[0]);
  } else {
    throw Error(ErrorCode::UnknownGate, name);
  }
  return g;
}

ComplexMatrix qft(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::BadParam, "qft needs n >= 1");
  ComplexMatrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      const double turns = static_cast<double>((g * h) % n) / static_cast<double>(n);
      f(g, h) = std::polar(norm, 2.0 * std::numbers::pi * turns);
    }
  return f;
}

ComplexMatrix group_qft(const AbelianGroup &grp) {
  const std::size_t n = grp.order();
  ComplexMatrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (Element g = 0; g < n; ++g)
    for (Element h = 0; h < n; ++h) f(g, h) = norm * grp.character(g, h);
  return f;
}

ComplexMatrix oracle(std::size_t domain, std::size_t codomain, const std::function<std::size_t(std::size_t)> &f) {
  if (domain < 1 || codomain < 1) throw Error(ErrorCode::BadParam, "oracle needs non-empty domain and codomain");
  const std::size_t d = domain * codomain;
  ComplexMatrix u(d, d);
  for (std::size_t g = 0; g < domain; ++g) {
    const std::size_t fg = f(g);
    if (fg >= codomain) throw Error(ErrorCode::BadParam, "oracle value outside codomain");
    for (std::size_t t = 0; t < codomain; ++t) u(g * codomain + (t + fg) % codomain, g * codomain + t) = 1.0;
  }
  return u;
}

ComplexMatrix phase_oracle(const std::vector<bool> &f) {
  std::vector<Scalar> diag;
  for (bool b : f) diag.push_back(b ? -1.0 : 1.0);
  return ComplexMatrix::diagonal(diag);
}

ComplexMatrix multiplexer(const std::vector<ComplexMatrix> &family) {
  if (family.empty()) throw Error(ErrorCode::BadParam, "empty multiplexer family");
  const std::size_t d = family[0].rows();
  const std::size_t n = family.size();
  ComplexMatrix r(n * d, n * d);
  for (std::size_t k = 0; k < n; ++k) {
    if (family[k].rows() != d || !is_unitary(family[k])) {
      throw Error(ErrorCode::NotUnitary, "multiplexer member " + std::to_string(k));
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) r(k * d + i, k * d + j) = family[k](i, j);
  }
  return r;
}

ComplexMatrix complete_unitary(std::size_t dim, const std::map<std::size_t, ComplexMatrix> &columns) {
  ComplexMatrix u(dim, dim);
  std::vector<ComplexMatrix> basis;
  for (const auto &[idx, col] : columns) {
    if (idx >= dim || col.rows() != dim || col.cols() != 1) {
      throw Error(ErrorCode::ShapeMismatch, "column " + std::to_string(idx) + " does not fit dimension " + std::to_string(dim));
    }
    for (const auto &b : basis) {
      if (std::abs((b.adjoint() * col)(0, 0)) > 1e-9) throw Error(ErrorCode::NotOrthonormal, "columns not orthogonal");
    }
    if (std::abs(col.frobenius_norm() - 1.0) > 1e-9) throw Error(ErrorCode::NotOrthonormal, "column not normalized");
    for (std::size_t r = 0; r < dim; ++r) u(r, idx) = col(r, 0);
    basis.push_back(col);
  }
  std::vector<ComplexMatrix> extra;
  for (std::size_t e = 0; e < dim && basis.size() < dim; ++e) {
    ComplexMatrix v = ComplexMatrix::basis_column(dim, e);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto &b : basis) v -= (b.adjoint() * v)(0, 0) * b;
    const double n = v.frobenius_norm();
    if (n < 1e-10) continue;
    v *= 1.0 / n;
    basis.push_back(v);
    extra.push_back(v);
  }
  std::size_t next = 0;
  for (std::size_t c = 0; c < dim; ++c) {
    if (columns.count(c)) continue;
    for (std::size_t r = 0; r < dim; ++r) u(r, c) = extra[next](r, 0);
    ++next;
  }
  return u;
}

ComplexMatrix expm_hermitian(const ComplexMatrix &a, double t) {
  const auto ed = hermitian_eig(a);
  std::vector<Scalar> phases;
  for (double l : ed.eigenvalues) phases.push_back(std::polar(1.0, l * t));
  return ed.eigenvectors * ComplexMatrix::diagonal(phases) * ed.eigenvectors.adjoint();
}

}  // namespace qwv
