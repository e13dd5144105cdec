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

#include "qwv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qwv/error.hpp"

namespace qwv {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::LabelClash: return "LabelClash";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotSuperset: return "NotSuperset";
    case ErrorCode::UnknownGate: return "UnknownGate";
    case ErrorCode::BadParam: return "BadParam";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::DisjointnessError: return "DisjointnessError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NotAWhile: return "NotAWhile";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::SideConditionViolated: return "SideConditionViolated";
    case ErrorCode::UnknownRule: return "UnknownRule";
    case ErrorCode::StepFailed: return "StepFailed";
    case ErrorCode::CounterexampleFound: return "CounterexampleFound";
    case ErrorCode::BadHidingFunction: return "BadHidingFunction";
    case ErrorCode::NotNormalized: return "NotNormalized";
  }
  return "Unknown";
}

namespace {

std::string shape(const ComplexMatrix &m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, std::string(op) + ": " + shape(a) + " vs " + shape(b));
  }
}

void require_square(const ComplexMatrix &a, const char *op) {
  if (!a.is_square()) {
    throw Error(ErrorCode::ShapeMismatch, std::string(op) + " needs a square matrix, got " + shape(a));
  }
}

double scale_of(const ComplexMatrix &a) { return std::max(1.0, a.frobenius_norm()); }

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(rows * cols) +
                                              " entries, got " + std::to_string(data_.size()));
  }
  if (!all_finite()) throw Error(ErrorCode::BadParam, "non-finite matrix entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::column(std::vector<Scalar> entries) {
  const std::size_t n = entries.size();
  return ComplexMatrix(n, 1, std::move(entries));
}

ComplexMatrix ComplexMatrix::basis_column(std::size_t n, std::size_t index) {
  if (index >= n) throw Error(ErrorCode::BadIndex, "basis index " + std::to_string(index) + " >= " + std::to_string(n));
  ComplexMatrix m(n, 1);
  m(index, 0) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Scalar> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Scalar>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Scalar> data;
  data.reserve(r * c);
  for (const auto &row : rows) {
    if (row.size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged row list");
    data.insert(data.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(data));
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar &z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix ComplexMatrix::column_at(std::size_t c) const {
  if (c >= cols_) throw Error(ErrorCode::BadIndex, "column " + std::to_string(c));
  ComplexMatrix v(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) v(r, 0) = (*this)(r, c);
  return v;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
  require_same_shape(*this, other, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
  require_same_shape(*this, other, "sub");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Scalar s) {
  for (auto &z : data_) z *= s;
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m = *this;
  for (auto &z : m.data_) z = std::conj(z);
  return m;
}

Scalar ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Scalar t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto &z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(Scalar s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Scalar s) { return a *= s; }

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "matmul: " + shape(a) + " * " + shape(b));
  }
  const std::size_t n = a.rows(), m = a.cols(), p = b.cols();
  ComplexMatrix c(n, p);
  const Scalar *ad = a.entries().data();
  const Scalar *bd = b.entries().data();
  Scalar *cd = c.entries().data();
  for (std::size_t i = 0; i < n; ++i) {
    Scalar *crow = cd + i * p;
    for (std::size_t k = 0; k < m; ++k) {
      const Scalar aik = ad[i * m + k];
      if (aik == Scalar(0.0)) continue;
      const Scalar *brow = bd + k * p;
      for (std::size_t j = 0; j < p; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  ComplexMatrix k(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar aij = a(i, j);
      if (aij == Scalar(0.0)) continue;
      for (std::size_t r = 0; r < rb; ++r)
        for (std::size_t c = 0; c < cb; ++c) k(i * rb + r, j * cb + c) = aij * b(r, c);
    }
  return k;
}

ComplexMatrix partial_trace(const ComplexMatrix &a, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  require_square(a, "partial_trace");
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (total != a.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "partial_trace: product of dims " + std::to_string(total) +
                                              " != " + std::to_string(a.rows()));
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) throw Error(ErrorCode::BadIndex, "partial_trace keep index " + std::to_string(k));
    kept[k] = true;
  }
  // strides of the full index, most significant factor first
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t f = dims.size(); f-- > 1;) stride[f - 1] = stride[f] * dims[f];

  std::size_t kept_dim = 1, traced_dim = 1;
  for (std::size_t f = 0; f < dims.size(); ++f) (kept[f] ? kept_dim : traced_dim) *= dims[f];

  // offset of each kept multi-index and each traced multi-index in the full index
  auto offsets = [&](bool want_kept, std::size_t count) {
    std::vector<std::size_t> out(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rem = idx, off = 0;
      for (std::size_t f = dims.size(); f-- > 0;) {
        if (kept[f] != want_kept) continue;
        off += (rem % dims[f]) * stride[f];
        rem /= dims[f];
      }
      out[idx] = off;
    }
    return out;
  };
  const auto kept_off = offsets(true, kept_dim);
  const auto traced_off = offsets(false, traced_dim);

  ComplexMatrix r(kept_dim, kept_dim);
  for (std::size_t i = 0; i < kept_dim; ++i)
    for (std::size_t j = 0; j < kept_dim; ++j) {
      Scalar s = 0.0;
      for (std::size_t t : traced_off) s += a(kept_off[i] + t, kept_off[j] + t);
      r(i, j) = s;
    }
  return r;
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_same_shape(a, b, "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(s);
}

bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return frobenius_distance(a, b) <= tol * scale_of(a);
}

EigenDecomposition hermitian_eig(const ComplexMatrix &input, double hermitian_tol) {
  require_square(input, "hermitian_eig");
  if (!is_hermitian(input, hermitian_tol)) throw Error(ErrorCode::NotHermitian, "hermitian_eig");
  const std::size_t n = input.rows();
  // symmetrize so rounding asymmetry never feeds the rotations
  ComplexMatrix a = input;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Scalar z = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = z;
      a(j, i) = std::conj(z);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double norm = a.frobenius_norm();
  const double target = 1e-12 * norm;

  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < 100 && off_mass() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const Scalar phase = apq / g;  // a_pq = g·phase
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // V = diag(1, conj(phase)) · [[c, s], [-s, c]] on the (p,q) plane
        const Scalar vpp = c, vpq = s;
        const Scalar vqp = -s * std::conj(phase), vqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {  // A ← A·V
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * vpp + akq * vqp;
          a(k, q) = akp * vpq + akq * vqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A ← V†·A
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
          a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * vpp + vkq * vqp;
          v(k, q) = vkp * vpq + vkq * vqq;
        }
      }
    }
  }
  if (off_mass() > target) {
    throw Error(ErrorCode::NoConvergence, "Jacobi did not converge in 100 sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenvalues[i] = a(order[i], order[i]).real();
    for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, i) = v(k, order[i]);
  }
  return out;
}

double min_eigenvalue(const ComplexMatrix &a, double hermitian_tol) {
  if (a.rows() == 0) return 0.0;
  return hermitian_eig(a, hermitian_tol).eigenvalues.front();
}

bool is_hermitian(const ComplexMatrix &a, double tol) {
  require_square(a, "is_hermitian");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - std::conj(a(j, i)));
  return std::sqrt(s) <= tol * scale_of(a);
}

bool is_psd(const ComplexMatrix &a, double tol) {
  require_square(a, "is_psd");
  if (!is_hermitian(a, tol)) return false;
  return min_eigenvalue(a, tol) >= -tol * scale_of(a);
}

bool is_unitary(const ComplexMatrix &a, double tol) {
  require_square(a, "is_unitary");
  const auto id = ComplexMatrix::identity(a.rows());
  return approx_equal(id, matmul(a.adjoint(), a), tol) && approx_equal(id, matmul(a, a.adjoint()), tol);
}

bool is_projection(const ComplexMatrix &a, double tol) {
  return is_psd(a, tol) && approx_equal(a, matmul(a, a), tol);
}

bool is_density(const ComplexMatrix &a, double tol) {
  return is_psd(a, tol) && std::abs(a.trace() - Scalar(1.0)) <= tol;
}

bool is_partial_density(const ComplexMatrix &a, double tol) {
  return is_psd(a, tol) && a.trace().real() <= 1.0 + tol;
}

bool is_effect(const ComplexMatrix &a, double tol) {
  return is_psd(a, tol) && is_psd(ComplexMatrix::identity(a.rows()) - a, tol);
}

bool loewner_leq(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
  require_same_shape(a, b, "loewner_leq");
  require_square(a, "loewner_leq");
  if (!is_hermitian(a, tol) || !is_hermitian(b, tol)) {
    throw Error(ErrorCode::NotHermitian, "loewner_leq operands must be Hermitian");
  }
  return is_psd(b - a, tol);
}

ComplexMatrix vectorize(const ComplexMatrix &a) {
  ComplexMatrix v(a.size(), 1);
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r) v(r + c * a.rows(), 0) = a(r, c);
  return v;
}

ComplexMatrix devectorize(const ComplexMatrix &v, std::size_t rows, std::size_t cols) {
  if (v.cols() != 1 || v.rows() != rows * cols) {
    throw Error(ErrorCode::ShapeMismatch, "devectorize " + shape(v) + " into " +
                                              std::to_string(rows) + "x" + std::to_string(cols));
  }
  ComplexMatrix a(rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) a(r, c) = v(r + c * rows, 0);
  return a;
}

ComplexMatrix solve(const ComplexMatrix &a_in, const ComplexMatrix &b_in) {
  require_square(a_in, "solve");
  if (b_in.rows() != a_in.rows()) throw Error(ErrorCode::ShapeMismatch, "solve rhs " + shape(b_in));
  const std::size_t n = a_in.rows(), m = b_in.cols();
  ComplexMatrix a = a_in, b = b_in;
  const double scale = scale_of(a);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (std::abs(a(piv, k)) <= 1e-14 * scale) throw Error(ErrorCode::NoConvergence, "singular system");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(b(k, j), b(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Scalar f = a(i, k) / a(k, k);
      if (f == Scalar(0.0)) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = 0; j < m; ++j) b(i, j) -= f * b(k, j);
    }
  }
  ComplexMatrix x(n, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = n; i-- > 0;) {
      Scalar s = b(i, j);
      for (std::size_t k = i + 1; k < n; ++k) s -= a(i, k) * x(k, j);
      x(i, j) = s / a(i, i);
    }
  return x;
}

}  // namespace qwv
