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

#include "qwv/cases.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <sstream>

#include "qwv/error.hpp"
#include "qwv/qtypes.hpp"

namespace qwv::cases {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Label> labels_of_refs(const VarTable &vars, const std::vector<std::string> &refs) {
  std::vector<Label> out;
  for (const auto &r : refs) {
    const auto ls = vars.resolve(r);
    out.insert(out.end(), ls.begin(), ls.end());
  }
  return out;
}

LabelledOperator zero_state(const VarTable &vars) {
  const LabelSet all = vars.all_labels();
  const auto k = LabelledOperator(all, {}, ComplexMatrix::basis_column(all.dim(), 0));
  return compose(k, k.adjoint());
}

void finish(CaseStudy &c) {
  c.parsed = parse_program(c.source, c.gates);
  c.input = zero_state(c.parsed.vars);
}

void add_state_triples(CaseStudy &c, const std::string &name, const LabelledOperator &u, const LabelledOperator &v,
                       bool saturated = true) {
  for (Mode m : {Mode::Total, Mode::Partial}) {
    c.triples.push_back({name + " [" + std::string(mode_name(m)) + "]",
                         make_state_judgment(u, c.parsed.program, v, m, saturated)});
  }
}

std::string tuple_type(const std::string &atom, std::size_t n) { return atom + "^" + std::to_string(n); }
std::string atom_type(std::size_t d) { return d == 2 ? "bool" : "int<" + std::to_string(d) + ">"; }

ComplexMatrix basis(std::size_t d, std::size_t i) { return ComplexMatrix::basis_column(d, i); }

std::string x_ref(std::size_t i) { return "x[" + std::to_string(i) + "]"; }

}  // namespace

// ---------------------------------------------------------------------------
// helpers

LabelledOperator simulate(const CaseStudy &c, const SemanticsOptions &opts) {
  return evolve(c.parsed.program, c.input, opts);
}

LabelledOperator ket_on(const VarTable &vars, const std::vector<std::string> &refs, const ComplexMatrix &amplitudes) {
  return LabelledOperator::from_ordered(labels_of_refs(vars, refs), {}, amplitudes);
}

std::vector<double> distribution(const LabelledOperator &rho, const VarTable &vars, const std::vector<std::string> &refs) {
  const auto order = labels_of_refs(vars, refs);
  const LabelSet keep(order);
  if (!keep.is_subset_of(rho.out_labels())) throw Error(ErrorCode::LabelMismatch, "state does not cover " + to_string(keep));
  const auto reduced = partial_trace(rho, set_difference(rho.out_labels(), keep));
  std::vector<double> out(keep.dim());
  for (std::size_t t = 0; t < out.size(); ++t) {
    // digits in listed order, first most significant, re-encoded canonically
    std::vector<std::size_t> digit(order.size());
    std::size_t rest = t;
    for (std::size_t i = order.size(); i-- > 0;) {
      digit[i] = rest % order[i].dim;
      rest /= order[i].dim;
    }
    std::size_t idx = 0;
    for (std::size_t p = 0; p < keep.size(); ++p) {
      std::size_t i = 0;
      while (order[i].id != keep[p].id) ++i;
      idx = idx * keep[p].dim + digit[i];
    }
    out[t] = reduced.matrix()(idx, idx).real();
  }
  return out;
}

ComplexMatrix circuit_matrix(const Program &p, const LabelSet &labels) {
  switch (p.kind()) {
    case Program::Kind::Skip: return ComplexMatrix::identity(labels.dim());
    case Program::Kind::Unitary: return cyl_extend(p.op(), labels).matrix();
    case Program::Kind::Seq: return circuit_matrix(p.second(), labels) * circuit_matrix(p.first(), labels);
    default: throw Error(ErrorCode::TypeError, "not a unitary circuit");
  }
}

CaseResult run_case(const CaseStudy &c, const CheckOptions &opts) {
  CaseResult r;
  r.name = c.name;
  r.params = c.params;
  try {
    bool ok = true;
    for (const auto &t : c.triples) {
      TripleResult tr{t.name, check_valid(t.judgment, opts)};
      ok = ok && tr.verdict.valid;
      r.triples.push_back(std::move(tr));
    }
    const LabelSet fp = footprint(c.parsed.program);
    if (fp.dim() <= opts.semantics.max_superop_dim) {
      r.quality = quality(denote(c.parsed.program, opts.semantics), opts.psd_tol);
      ok = ok && r.quality.is_cp && r.quality.is_trace_nonincreasing;
    }
    r.ok = ok;
  } catch (const Error &e) {
    r.error = e.what();
    if (e.code() == ErrorCode::NoConvergence) throw;
  }
  return r;
}

// ---------------------------------------------------------------------------
// hidden subgroup

CaseStudy hsp(const Subgroup &h) { return hsp(h, coset_index(h)); }

CaseStudy hsp(const Subgroup &h, const std::vector<std::size_t> &f) {
  const AbelianGroup &g = h.parent();
  if (f.size() != g.order()) throw Error(ErrorCode::BadHidingFunction, "f must be defined on every group element");
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if ((f[a] == f[b]) != h.contains(g.add(b, g.neg(a)))) {
        throw Error(ErrorCode::BadHidingFunction,
                    "f does not hide H at " + g.element_to_string(a) + ", " + g.element_to_string(b));
      }
  const std::size_t m = *std::max_element(f.begin(), f.end()) + 1;
  const auto &mod = g.moduli();
  const std::size_t k = mod.size();
  std::string type;
  if (std::all_of(mod.begin(), mod.end(), [&](std::size_t p) { return p == mod[0]; })) {
    type = tuple_type("int<" + std::to_string(mod[0]) + ">", k);
  } else if (k == 2) {
    type = "int<" + std::to_string(mod[0]) + "> * int<" + std::to_string(mod[1]) + ">";
  } else {
    throw Error(ErrorCode::BadParam, "groups with more than two distinct cyclic factors are not supported");
  }

  CaseStudy c;
  c.name = "hsp";
  std::ostringstream ps;
  ps << "G = Z" << mod[0];
  for (std::size_t i = 1; i < k; ++i) ps << " x Z" << mod[i];
  ps << ", H = {";
  for (std::size_t i = 0; i < h.order(); ++i) ps << (i ? ", " : "") << g.element_to_string(h.elements()[i]);
  ps << "}";
  c.params = ps.str();
  c.gates.add_gate("Uf", oracle(g.order(), m, [&](std::size_t x) { return f[x]; }));
  const std::string ks = std::to_string(k);
  c.source = "var x : " + type + ";\nvar y : int<" + std::to_string(m) + ">;\n" +
             "for i < " + ks + " { x[i] := |0>; }\n"
             "y := |0>;\n"
             "for i < " + ks + " { x[i] := QFT[x[i]]; }\n"
             "[x, y] := Uf[x, y];\n"
             "for i < " + ks + " { x[i] := QFT[x[i]]; }\n";
  finish(c);

  const Subgroup perp = orthogonal_subgroup(h);
  const double inv = 1.0 / static_cast<double>(perp.order());
  const auto &vars = c.parsed.vars;
  ComplexMatrix out(g.order() * m, 1);
  const auto cs = cosets(h);
  for (Element x : perp.elements())
    for (const auto &j : cs) {
      const Element rep = coset_repr(j);
      out(x * m + f[rep], 0) += inv * g.character(x, rep);
    }
  c.triples.push_back({"final state", make_state_judgment(LabelledOperator::scalar(1.0), c.parsed.program,
                                                          ket_on(vars, {"x", "y"}, out), Mode::Total, true)});
  for (Element x = 0; x < g.order(); ++x) {
    const auto gx = ket_on(vars, {"x"}, basis(g.order(), x));
    const double p = perp.contains(x) ? inv : 0.0;
    c.triples.push_back({"Pr(" + g.element_to_string(x) + ") = " + (p > 0 ? "1/" + std::to_string(perp.order()) : "0"),
                         make_judgment(LabelledOperator::scalar(p), c.parsed.program, compose(gx, gx.adjoint()),
                                       Mode::Total, true)});
  }
  return c;
}

// ---------------------------------------------------------------------------
// Grover

CaseStudy grover(std::size_t n, const std::vector<std::size_t> &marked, std::size_t r) {
  if (n < 2) throw Error(ErrorCode::BadParam, "grover needs at least two items");
  std::vector<bool> f(n, false);
  for (auto i : marked) {
    if (i >= n) throw Error(ErrorCode::BadParam, "marked item outside the search space");
    f[i] = true;
  }
  std::vector<bool> zero(n, false);
  zero[0] = true;
  CaseStudy c;
  c.name = "grover";
  c.params = "N = " + std::to_string(n) + ", |f| = " + std::to_string(marked.size()) + ", r = " + std::to_string(r);
  c.gates.add_gate("Of", phase_oracle(f));
  c.gates.add_gate("O0", phase_oracle(zero));
  c.source = "var x : int<" + std::to_string(n) + ">;\n"
             "x := |0>;\n"
             "x := Hn[x];\n"
             "for i < " + std::to_string(r) + " {\n"
             "  x := Of[x];\n"
             "  x := Hn^dag[x];\n"
             "  x := O0[x];\n"
             "  x := Hn[x];\n"
             "}\n";
  finish(c);
  std::size_t count = 0;
  for (bool b : f) count += b;
  const double t = std::asin(std::sqrt(static_cast<double>(count) / static_cast<double>(n)));
  const double s = std::sin((2.0 * static_cast<double>(r) + 1.0) * t);
  LabelledOperator post = LabelledOperator::zero(LabelSet(c.parsed.vars.resolve("x")), LabelSet(c.parsed.vars.resolve("x")));
  for (std::size_t i = 0; i < n; ++i)
    if (f[i]) {
      const auto k = ket_on(c.parsed.vars, {"x"}, basis(n, i));
      post = add(post, compose(k, k.adjoint()));
    }
  for (Mode m : {Mode::Total, Mode::Partial}) {
    c.triples.push_back({"success probability [" + std::string(mode_name(m)) + "]",
                         make_judgment(LabelledOperator::scalar(s * s), c.parsed.program, post, m, false)});
  }
  return c;
}

// ---------------------------------------------------------------------------
// phase estimation

CaseStudy qpe(const ComplexMatrix &u, const ComplexMatrix &phi, double theta, std::size_t n) {
  if (!is_unitary(u)) throw Error(ErrorCode::NotUnitary, "qpe needs a unitary");
  if (phi.rows() != u.rows() || phi.cols() != 1 || std::abs(phi.frobenius_norm() - 1.0) > 1e-9) {
    throw Error(ErrorCode::BadParam, "phi must be a unit vector");
  }
  if (frobenius_distance(u * phi, std::polar(1.0, 2.0 * kPi * theta) * phi) > 1e-9) {
    throw Error(ErrorCode::BadParam, "phi is not an eigenvector of U with phase theta");
  }
  const std::size_t d = u.rows();
  std::vector<ComplexMatrix> powers{ComplexMatrix::identity(d)};
  for (std::size_t i = 1; i < n; ++i) powers.push_back(u * powers.back());
  CaseStudy c;
  c.name = "qpe";
  std::ostringstream ps;
  ps << "n = " << n << ", theta = " << theta;
  c.params = ps.str();
  c.gates.add_gate("Mux", multiplexer(powers));
  c.source = "var x : int<" + std::to_string(n) + ">;\nvar y : int<" + std::to_string(d) + ">;\n"
             "x := |0>;\n"
             "x := Hn[x];\n"
             "[x, y] := Mux[x, y];\n"
             "x := IQFT[x];\n";
  finish(c);
  const auto &vars = c.parsed.vars;
  const auto phik = ket_on(vars, {"y"}, phi);
  const auto x0 = ket_on(vars, {"x"}, basis(n, 0));
  c.input = tensor(compose(x0, x0.adjoint()), compose(phik, phik.adjoint()));

  // c(a) = ⟨a,φ| C |0,φ⟩ for the unitary tail C
  const LabelSet all = vars.all_labels();
  const std::vector<Program> tail(c.parsed.statements.begin() + 1, c.parsed.statements.end());
  const ComplexMatrix circ = circuit_matrix(desugar_for(tail), all);
  const ComplexMatrix out = circ * tensor(x0, phik).matrix();
  for (std::size_t a = 0; a < n; ++a) {
    const auto post = tensor(ket_on(vars, {"x"}, basis(n, a)), phik);
    const Scalar ca = (post.matrix().adjoint() * out)(0, 0);
    add_state_triples(c, "outcome " + std::to_string(a), scale(ca, phik), post);
  }
  return c;
}

CaseStudy qpe(double theta, std::size_t n) {
  const double a = 0.4, b = 0.3;
  const ComplexMatrix v = ComplexMatrix::from_rows(
      {{std::cos(a), -std::sin(a) * std::polar(1.0, -b)}, {std::sin(a) * std::polar(1.0, b), std::cos(a)}});
  const std::vector<Scalar> phases{std::polar(1.0, 2.0 * kPi * theta), std::polar(1.0, 2.0 * kPi * 0.37)};
  const ComplexMatrix u = v * ComplexMatrix::diagonal(phases) * v.adjoint();
  return qpe(u, v.column_at(0), theta, n);
}

// ---------------------------------------------------------------------------
// circuits

CaseStudy qft_circuit(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::BadParam, "qft_circuit needs n >= 1");
  CaseStudy c;
  c.name = "qft";
  c.params = "n = " + std::to_string(n);
  std::ostringstream src;
  src << "var s : bool^" << n << ";\n";
  for (std::size_t p = 0; p < n; ++p) {
    src << "s[" << p << "] := H[s[" << p << "]];\n";
    if (p + 1 < n) {
      src << "for i < " << n - 1 - p << " { [s[" << p << "], s[" << p + 1 << " + i]] := CU(Ph(pi / 2^(i + 1)))[s["
          << p << "], s[" << p + 1 << " + i]]; }\n";
    }
  }
  src << "for i < " << n / 2 << " { [s[i], s[" << n - 1 << " - i]] := SWAP[s[i], s[" << n - 1 << " - i]]; }\n";
  c.source = src.str();
  finish(c);
  const std::size_t d = std::size_t{1} << n;
  const ComplexMatrix f = qft(d);
  for (std::size_t b = 0; b < d; ++b) {
    add_state_triples(c, "|" + std::to_string(b) + "> to its Fourier basis state",
                      ket_on(c.parsed.vars, {"s"}, basis(d, b)), ket_on(c.parsed.vars, {"s"}, f.column_at(b)));
  }
  return c;
}

CaseStudy rev_circuit(std::size_t n, std::size_t d) {
  if (n < 1 || d < 2) throw Error(ErrorCode::BadParam, "rev_circuit needs n >= 1 and d >= 2");
  CaseStudy c;
  c.name = "rev";
  c.params = "n = " + std::to_string(n) + ", d = " + std::to_string(d);
  c.source = "var x : " + tuple_type(atom_type(d), n) + ";\n" + "for i < " + std::to_string(n / 2) + " { [x[i], x[" +
             std::to_string(n - 1) + " - i]] := SWAP[x[i], x[" + std::to_string(n - 1) + " - i]]; }\n";
  finish(c);
  std::vector<std::string> fwd, rev;
  for (std::size_t i = 0; i < n; ++i) {
    fwd.push_back(x_ref(i));
    rev.push_back(x_ref(n - 1 - i));
  }
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) dim *= d;
  const auto &vars = c.parsed.vars;
  for (std::size_t t = 0; t < dim; ++t) {
    const auto a = ket_on(vars, fwd, basis(dim, t));
    const auto b = ket_on(vars, rev, basis(dim, t));
    add_state_triples(c, "|" + std::to_string(t) + "> reversed", a, b);
    add_state_triples(c, "|" + std::to_string(t) + "> restored", b, a);
  }
  return c;
}

CaseStudy para_hadamard(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::BadParam, "para_hadamard needs n >= 1");
  CaseStudy c;
  c.name = "para_hadamard";
  c.params = "n = " + std::to_string(n);
  c.source = "var x : bool^" + std::to_string(n) + ";\nfor i < " + std::to_string(n) + " { x[i] := H[x[i]]; }\n";
  finish(c);
  const auto &vars = c.parsed.vars;
  const std::size_t d = std::size_t{1} << n;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<LabelledOperator> zeros, pluses;
  for (std::size_t i = 0; i < n; ++i) {
    zeros.push_back(ket_on(vars, {x_ref(i)}, basis(2, 0)));
    pluses.push_back(ket_on(vars, {x_ref(i)}, ComplexMatrix::column({std::sqrt(0.5), std::sqrt(0.5)})));
  }
  add_state_triples(c, "zeros to pluses", big_tensor(zeros), big_tensor(pluses));
  add_state_triples(c, "pluses to zeros", big_tensor(pluses), big_tensor(zeros));
  for (std::size_t b = 0; b < d; ++b) {
    ComplexMatrix v(d, 1);
    for (std::size_t t = 0; t < d; ++t) v(t, 0) = (std::popcount(b & t) % 2 ? -amp : amp);
    add_state_triples(c, "|" + std::to_string(b) + "> to signed sum", ket_on(vars, {"x"}, basis(d, b)),
                      ket_on(vars, {"x"}, v));
  }
  return c;
}

CaseStudy hlf(const std::vector<std::vector<int>> &a) {
  const std::size_t n = a.size();
  if (n < 1) throw Error(ErrorCode::BadParam, "hlf needs a non-empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error(ErrorCode::BadParam, "hlf needs a square matrix");
    for (std::size_t j = 0; j < n; ++j)
      if ((a[i][j] != 0 && a[i][j] != 1) || a[i][j] != a[j][i]) {
        throw Error(ErrorCode::BadParam, "hlf needs a symmetric boolean matrix");
      }
  }
  CaseStudy c;
  c.name = "hlf";
  std::ostringstream ps, src;
  ps << "n = " << n << ", A =";
  for (const auto &row : a) {
    ps << " ";
    for (int v : row) ps << v;
  }
  c.params = ps.str();
  std::vector<std::size_t> sd;
  for (std::size_t i = 0; i < n; ++i)
    if (a[i][i]) sd.push_back(i);
  src << "var x : bool^" << n << ";\n";
  src << "for i < " << n << " { x[i] := |0>; }\n";
  src << "for i < " << n << " { x[i] := H[x[i]]; }\n";
  src << "for i in [";
  for (std::size_t k = 0; k < sd.size(); ++k) src << (k ? ", " : "") << sd[k];
  src << "] { x[i] := S[x[i]]; }\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a[i][j]) src << "[x[" << i << "], x[" << j << "]] := CZ[x[" << i << "], x[" << j << "]];\n";
  src << "for i < " << n << " { x[i] := H[x[i]]; }\n";
  c.source = src.str();
  finish(c);

  const std::size_t d = std::size_t{1} << n;
  auto bit = [n](std::size_t v, std::size_t i) { return static_cast<int>((v >> (n - 1 - i)) & 1u); };
  ComplexMatrix v(d, 1);
  const Scalar powers[4] = {1.0, Scalar(0.0, 1.0), -1.0, Scalar(0.0, -1.0)};
  for (std::size_t z = 0; z < d; ++z) {
    Scalar s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      int q = 0, kz = 0;
      for (std::size_t i = 0; i < n; ++i) {
        kz += bit(k, i) * bit(z, i);
        for (std::size_t j = 0; j < n; ++j) q += a[i][j] * bit(k, i) * bit(k, j);
      }
      s += powers[(q + 2 * kz) % 4];
    }
    v(z, 0) = s / static_cast<double>(d);
  }
  add_state_triples(c, "output amplitudes", LabelledOperator::scalar(1.0), ket_on(c.parsed.vars, {"x"}, v));
  return c;
}

// ---------------------------------------------------------------------------
// HHL

HhlParams hhl_default() {
  HhlParams p;
  p.t0 = 2.0 * kPi;
  p.n = 4;
  p.c = 0.5;
  const std::vector<Scalar> diag{2.0 * kPi / p.t0 * 1.0, 2.0 * kPi / p.t0 * 2.0};
  p.a = ComplexMatrix::diagonal(diag);
  p.b = ComplexMatrix::column({0.6, Scalar(0.0, 0.8)});
  return p;
}

ComplexMatrix hhl_solution(const HhlParams &p) {
  ComplexMatrix x = solve(p.a, p.b);
  x *= 1.0 / x.frobenius_norm();
  return x;
}

CaseStudy hhl(const HhlParams &p) {
  const std::size_t m = p.a.rows();
  if (!p.a.is_square() || !is_hermitian(p.a)) throw Error(ErrorCode::NotHermitian, "hhl needs a Hermitian A");
  if (p.b.rows() != m || p.b.cols() != 1 || std::abs(p.b.frobenius_norm() - 1.0) > 1e-9) {
    throw Error(ErrorCode::BadParam, "hhl needs a unit vector b");
  }
  const auto ed = hermitian_eig(p.a);
  for (double l : ed.eigenvalues) {
    const double delta = l * p.t0 / (2.0 * kPi);
    const double r = std::round(delta);
    if (std::abs(delta - r) > 1e-9 || r < 1.0 || r > static_cast<double>(p.n) - 1.0) {
      throw Error(ErrorCode::BadParam, "eigenvalue phases must be integers in 1..n-1");
    }
    if (p.c > r + 1e-12) throw Error(ErrorCode::BadParam, "C must not exceed the smallest phase");
  }
  if (!(p.c > 0.0)) throw Error(ErrorCode::BadParam, "C must be positive");
  const std::size_t n = p.n;

  CaseStudy c;
  c.name = "hhl";
  std::ostringstream ps;
  ps << "m = " << m << ", n = " << n << ", t0 = " << p.t0 << ", C = " << p.c;
  c.params = ps.str();
  c.gates.add_gate("Ub", complete_unitary(m, {{0, p.b}}));
  std::vector<ComplexMatrix> family;
  for (std::size_t k = 0; k < n; ++k) family.push_back(expm_hermitian(p.a, static_cast<double>(k) * p.t0 / static_cast<double>(n)));
  c.gates.add_gate("Uf", multiplexer(family));
  std::map<std::size_t, ComplexMatrix> cols{{0, basis(2 * n, 0)}};
  for (std::size_t i = 1; i < n; ++i) {
    const double s = p.c / static_cast<double>(i);
    ComplexMatrix col(2 * n, 1);
    col(2 * i, 0) = std::sqrt(1.0 - s * s);
    col(2 * i + 1, 0) = s;
    cols.emplace(2 * i, col);
  }
  c.gates.add_gate("Uc", complete_unitary(2 * n, cols));
  c.source = "var p : int<" + std::to_string(n) + ">;\nvar q : int<" + std::to_string(m) + ">;\nvar r : bool;\n"
             "p := |0>;\n"
             "q := |0>;\n"
             "r := |0>;\n"
             "while meas[r] = 0 do {\n"
             "  q := |0>;\n"
             "  q := Ub[q];\n"
             "  p := Hn[p];\n"
             "  [p, q] := Uf[p, q];\n"
             "  p := IQFT[p];\n"
             "  [p, r] := Uc[p, r];\n"
             "  p := QFT[p];\n"
             "  [p, q] := Uf^dag[p, q];\n"
             "  p := Hn^dag[p];\n"
             "}\n";
  finish(c);
  const auto x = ket_on(c.parsed.vars, {"q"}, hhl_solution(p));
  add_state_triples(c, "solution", LabelledOperator::scalar(1.0), x, false);
  return c;
}

// ---------------------------------------------------------------------------

std::vector<std::string> case_names() {
  return {"hsp", "grover", "qpe", "qft", "rev", "hlf", "hhl", "para_hadamard"};
}

CaseStudy by_name(const std::string &name) {
  if (name == "hsp") {
    const AbelianGroup g({2, 2});
    return hsp(generate(g, {g.encode({1, 1})}));
  }
  if (name == "grover") return grover(4, {3}, 1);
  if (name == "qpe") return qpe(1.0 / 3.0, 4);
  if (name == "qft") return qft_circuit(3);
  if (name == "rev") return rev_circuit(4);
  if (name == "hlf") return hlf({{1, 1}, {1, 0}});
  if (name == "hhl") return hhl(hhl_default());
  if (name == "para_hadamard") return para_hadamard(3);
  throw Error(ErrorCode::BadParam, "unknown case study '" + name + "'");
}

}  // namespace qwv::cases
