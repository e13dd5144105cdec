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

// Reference answers for the case studies, computed with plain state
// vectors and closed forms.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "group_identities.hpp"
#include "support.hpp"

namespace qwv::testing {

using Vec = std::vector<C>;

/// Fourier transform over the group given by `mod`, applied to the x part
/// of a vector on x (|G|) ⊗ y (m).
inline Vec group_fourier(const Vec &v, const std::vector<std::size_t> &mod, std::size_t m) {
  std::size_t n = 1;
  for (auto p : mod) n *= p;
  Vec out(v.size());
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t t = 0; t < m; ++t) out[g * m + t] += chi(mod, g, h) * v[h * m + t] / std::sqrt(double(n));
  return out;
}

/// Pr(x) after F ; Uf ; F from |0⟩|0⟩.
inline std::vector<double> hsp_probabilities(const std::vector<std::size_t> &mod, const std::vector<std::size_t> &f,
                                             std::size_t m) {
  std::size_t n = 1;
  for (auto p : mod) n *= p;
  Vec v(n * m);
  v[0] = 1;
  v = group_fourier(v, mod, m);
  Vec w(v.size());
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t t = 0; t < m; ++t) w[g * m + (t + f[g]) % m] += v[g * m + t];
  w = group_fourier(w, mod, m);
  std::vector<double> pr(n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t t = 0; t < m; ++t) pr[g] += std::norm(w[g * m + t]);
  return pr;
}

inline double grover_success(std::size_t n, std::size_t marked, std::size_t r) {
  const double th = std::asin(std::sqrt(double(marked) / double(n)));
  const double s = std::sin(double(2 * r + 1) * th);
  return s * s;
}

/// Pr(a) for phase θ on an n-point register: |(1/n) Σ_k e^{2πik(θ − a/n)}|².
inline double qpe_probability(double theta, std::size_t n, std::size_t a) {
  C s = 0;
  for (std::size_t k = 0; k < n; ++k)
    s += std::polar(1.0, 2 * std::numbers::pi * double(k) * (theta - double(a) / double(n)));
  return std::norm(s / double(n));
}

/// v_z = 2^-n Σ_k i^{kᵀAk + 2 k·z}, bit 0 of the register most significant.
inline Vec hlf_amplitudes(const std::vector<std::vector<int>> &a) {
  const std::size_t n = a.size(), d = std::size_t{1} << n;
  auto bit = [n](std::size_t v, std::size_t i) { return int((v >> (n - 1 - i)) & 1u); };
  Vec out(d);
  for (std::size_t z = 0; z < d; ++z) {
    C s = 0;
    for (std::size_t k = 0; k < d; ++k) {
      long e = 0;
      for (std::size_t i = 0; i < n; ++i) {
        e += 2 * bit(k, i) * bit(z, i);
        for (std::size_t j = 0; j < n; ++j) e += a[i][j] * bit(k, i) * bit(k, j);
      }
      s += std::pow(C(0, 1), int(e % 4));
    }
    out[z] = s / double(d);
  }
  return out;
}

/// Permutation matrix reversing the order of n qubits.
inline ComplexMatrix bit_reversal(std::size_t n) {
  const std::size_t d = std::size_t{1} << n;
  ComplexMatrix r(d, d);
  for (std::size_t b = 0; b < d; ++b) {
    std::size_t rb = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (b >> i & 1u) rb |= std::size_t{1} << (n - 1 - i);
    r(rb, b) = 1;
  }
  return r;
}

inline ComplexMatrix dft(std::size_t d) {
  ComplexMatrix f(d, d);
  for (std::size_t g = 0; g < d; ++g)
    for (std::size_t h = 0; h < d; ++h)
      f(g, h) = std::polar(1.0 / std::sqrt(double(d)), 2 * std::numbers::pi * double(g * h % d) / double(d));
  return f;
}

}  // namespace qwv::testing
