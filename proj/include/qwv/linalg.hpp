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

// Dense complex linear algebra. Matrices are stored row-major; vectors are
// single-column matrices.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qwv {

using Scalar = std::complex<double>;

/// Relative tolerances shared by equality and positivity checks.
struct Tolerance {
  double eq = 1e-9;
  double psd = 1e-9;
};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws ShapeMismatch if entries.size() != rows*cols, BadParam on NaN/Inf.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix column(std::vector<Scalar> entries);
  static ComplexMatrix basis_column(std::size_t n, std::size_t index);
  static ComplexMatrix diagonal(std::span<const Scalar> diag);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool all_finite() const noexcept;

  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Scalar> entries() const noexcept { return data_; }
  std::span<Scalar> entries() noexcept { return data_; }

  ComplexMatrix column_at(std::size_t c) const;

  ComplexMatrix &operator+=(const ComplexMatrix &other);
  ComplexMatrix &operator-=(const ComplexMatrix &other);
  ComplexMatrix &operator*=(Scalar s);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Scalar trace() const;
  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(Scalar s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Scalar s);
ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) { return matmul(a, b); }

/// (A⊗B)[i*rB+k, j*cB+l] = A[i,j]*B[k,l].
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Reduced operator on the factors listed in `keep` (any order; the result
/// uses the ascending order of the kept factor indices).
ComplexMatrix partial_trace(const ComplexMatrix &a, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);
/// ‖a−b‖_F ≤ tol·max(1, ‖a‖_F); false on shape mismatch.
bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column i pairs with eigenvalues[i]
};

/// Cyclic complex Jacobi. Sweeps until the off-diagonal Frobenius mass drops
/// below 1e-12·‖A‖_F; gives up with NoConvergence after 100 sweeps.
EigenDecomposition hermitian_eig(const ComplexMatrix &a, double hermitian_tol = 1e-9);
double min_eigenvalue(const ComplexMatrix &a, double hermitian_tol = 1e-9);

bool is_hermitian(const ComplexMatrix &a, double tol = 1e-9);
bool is_psd(const ComplexMatrix &a, double tol = 1e-9);
bool is_unitary(const ComplexMatrix &a, double tol = 1e-9);
bool is_projection(const ComplexMatrix &a, double tol = 1e-9);
bool is_density(const ComplexMatrix &a, double tol = 1e-9);
bool is_partial_density(const ComplexMatrix &a, double tol = 1e-9);
bool is_effect(const ComplexMatrix &a, double tol = 1e-9);

/// A ⊑ B iff B − A is positive semidefinite.
bool loewner_leq(const ComplexMatrix &a, const ComplexMatrix &b, double tol = 1e-9);

/// Column-major stacking into a single column.
ComplexMatrix vectorize(const ComplexMatrix &a);
ComplexMatrix devectorize(const ComplexMatrix &v, std::size_t rows, std::size_t cols);

/// Solves A·X = B by LU with partial pivoting. Throws NoConvergence when A is
/// numerically singular.
ComplexMatrix solve(const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace qwv
