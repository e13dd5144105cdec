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

// Finite data types of quantum variables and the built-in gate library.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qwv/group.hpp"
#include "qwv/linalg.hpp"

namespace qwv {

class QType {
 public:
  enum class Kind { Bool, ZN, Pair, Tuple };

  static QType boolean();
  static QType zn(std::size_t n);
  static QType pair(QType a, QType b);
  static QType tuple(QType t, std::size_t arity);

  Kind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return dim_; }
  /// Immediate components (empty for atomic types).
  std::vector<QType> components() const;
  /// Dimensions of the atomic leaves, left to right.
  std::vector<std::size_t> atom_dims() const;
  bool is_atomic() const noexcept { return kind_ == Kind::Bool || kind_ == Kind::ZN; }
  std::size_t modulus() const noexcept { return n_; }
  std::size_t arity() const noexcept { return n_; }

  std::string to_string() const;

  friend bool operator==(const QType &a, const QType &b) {
    return a.kind_ == b.kind_ && a.n_ == b.n_ && a.children_ == b.children_;
  }

 private:
  QType(Kind k, std::size_t n, std::vector<QType> children);
  Kind kind_ = Kind::Bool;
  std::size_t n_ = 2;  // ZN modulus or tuple arity
  std::size_t dim_ = 2;
  std::vector<QType> children_;
};

struct GateSpec {
  std::string name;
  std::vector<double> params;
  ComplexMatrix matrix;
  std::size_t arity = 1;  // number of variables the gate acts on
};

ComplexMatrix gate_h();
ComplexMatrix gate_x();
ComplexMatrix gate_y();
ComplexMatrix gate_z();
ComplexMatrix gate_s();
ComplexMatrix gate_ph(double theta);
ComplexMatrix controlled(const ComplexMatrix &u);
ComplexMatrix gate_swap(std::size_t d);

/// Built-in gate by name. `dims` are the dimensions of the variables the gate
/// is applied to; `inner` supplies the argument of CU.
GateSpec builtin(const std::string &name, const std::vector<double> &params,
                 const std::vector<std::size_t> &dims, const GateSpec *inner = nullptr);
bool is_builtin_gate(const std::string &name);

/// F[g,h] = e^{2πi gh/n}/√n.
ComplexMatrix qft(std::size_t n);
ComplexMatrix group_qft(const AbelianGroup &g);
/// U|g,t⟩ = |g, t+f(g) mod |Y|⟩ with g < domain, t < codomain.
ComplexMatrix oracle(std::size_t domain, std::size_t codomain, const std::function<std::size_t(std::size_t)> &f);
ComplexMatrix phase_oracle(const std::vector<bool> &f);
ComplexMatrix multiplexer(const std::vector<ComplexMatrix> &family);
ComplexMatrix complete_unitary(std::size_t dim, const std::map<std::size_t, ComplexMatrix> &columns);
/// e^{iAt} for Hermitian A.
ComplexMatrix expm_hermitian(const ComplexMatrix &a, double t);

}  // namespace qwv
