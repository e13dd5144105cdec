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

// Random inputs and brute-force reference computations for the tests.
// Nothing here calls into the library except the matrix container.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "qwv/dirac.hpp"
#include "qwv/linalg.hpp"

namespace qwv::testing {

using C = std::complex<double>;

inline ComplexMatrix random_matrix(std::mt19937_64 &rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = C(n(rng), n(rng));
  return m;
}

inline ComplexMatrix naive_mul(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      C s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      m(i, j) = s;
    }
  return m;
}

inline ComplexMatrix naive_adj(const ComplexMatrix &a) {
  ComplexMatrix m(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(j, i) = std::conj(a(i, j));
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64 &rng, std::size_t n) {
  const auto g = random_matrix(rng, n, n);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  return h;
}

/// Gram-Schmidt on a Gaussian matrix.
inline ComplexMatrix random_unitary(std::mt19937_64 &rng, std::size_t n) {
  auto g = random_matrix(rng, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      C dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(g(i, k)) * g(i, j);
      for (std::size_t i = 0; i < n; ++i) g(i, j) -= dot * g(i, k);
    }
    double nn = 0;
    for (std::size_t i = 0; i < n; ++i) nn += std::norm(g(i, j));
    nn = std::sqrt(nn);
    for (std::size_t i = 0; i < n; ++i) g(i, j) /= nn;
  }
  return g;
}

inline ComplexMatrix random_density(std::mt19937_64 &rng, std::size_t n) {
  const auto g = random_matrix(rng, n, n);
  auto rho = naive_mul(g, naive_adj(g));
  C tr = 0;
  for (std::size_t i = 0; i < n; ++i) tr += rho(i, i);
  for (auto &x : rho.entries()) x /= tr.real();
  return rho;
}

/// 0 ⊑ E ⊑ I: U diag(u) U† with u uniform in [0,1].
inline ComplexMatrix random_effect(std::mt19937_64 &rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto q = random_unitary(rng, n);
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = u(rng);
  return naive_mul(naive_mul(q, d), naive_adj(q));
}

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

inline double fro(const ComplexMatrix &a, const ComplexMatrix &b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(s);
}

/// Mixed-radix digits, first most significant.
inline std::vector<std::size_t> digits(std::size_t x, const std::vector<std::size_t> &dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    d[i] = x % dims[i];
    x /= dims[i];
  }
  return d;
}

inline std::size_t undigits(const std::vector<std::size_t> &d, const std::vector<std::size_t> &dims) {
  std::size_t x = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) x = x * dims[i] + d[i];
  return x;
}

inline ComplexMatrix naive_kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      m(r, c) = a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
  return m;
}

/// Sorted labels sharing one position each: the full matrix of a square
/// operator on `sub` (ascending ids) inside `all` (ascending ids), entry by entry.
inline ComplexMatrix embed(const ComplexMatrix &a, const std::vector<Label> &sub, const std::vector<Label> &all) {
  std::vector<std::size_t> dims, sub_dims, pos;
  for (const auto &l : all) dims.push_back(l.dim);
  for (const auto &s : sub) {
    sub_dims.push_back(s.dim);
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i].id == s.id) pos.push_back(i);
  }
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const auto dr = digits(r, dims), dc = digits(c, dims);
      bool rest_equal = true;
      for (std::size_t i = 0; i < all.size(); ++i) {
        bool in_sub = false;
        for (auto p : pos) in_sub |= p == i;
        if (!in_sub && dr[i] != dc[i]) rest_equal = false;
      }
      if (!rest_equal) continue;
      std::vector<std::size_t> sr, sc;
      for (auto p : pos) {
        sr.push_back(dr[p]);
        sc.push_back(dc[p]);
      }
      m(r, c) = a(undigits(sr, sub_dims), undigits(sc, sub_dims));
    }
  return m;
}

/// tr over the factors whose flag is false.
inline ComplexMatrix naive_partial_trace(const ComplexMatrix &a, const std::vector<std::size_t> &dims,
                                         const std::vector<bool> &keep) {
  std::vector<std::size_t> kd;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (keep[i]) kd.push_back(dims[i]);
  std::size_t kn = 1;
  for (auto d : kd) kn *= d;
  ComplexMatrix out(kn, kn);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const auto dr = digits(r, dims), dc = digits(c, dims);
      bool ok = true;
      std::vector<std::size_t> kr, kc;
      for (std::size_t i = 0; i < dims.size(); ++i) {
        if (keep[i]) {
          kr.push_back(dr[i]);
          kc.push_back(dc[i]);
        } else if (dr[i] != dc[i]) {
          ok = false;
        }
      }
      if (ok) out(undigits(kr, kd), undigits(kc, kd)) += a(r, c);
    }
  return out;
}

}  // namespace qwv::testing
