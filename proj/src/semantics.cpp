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

#include "qwv/semantics.hpp"

#include <cmath>

#include "qwv/error.hpp"

namespace qwv {

namespace {

// index of the T-basis element built from an F-index and an R-index, R = T∖F
std::vector<std::vector<std::size_t>> merge_table(const LabelSet &f, const LabelSet &r, const LabelSet &t) {
  const std::size_t df = f.dim(), dr = r.dim();
  std::vector<std::size_t> stride(t.size(), 1);
  for (std::size_t p = t.size(); p-- > 1;) stride[p - 1] = stride[p] * t[p].dim;
  auto offsets = [&](const LabelSet &s) {
    std::vector<std::size_t> out(s.dim(), 0);
    for (std::size_t idx = 0; idx < s.dim(); ++idx) {
      std::size_t rem = idx, off = 0;
      for (std::size_t p = s.size(); p-- > 0;) {
        off += (rem % s[p].dim) * stride[t.position(s[p].id)];
        rem /= s[p].dim;
      }
      out[idx] = off;
    }
    return out;
  };
  const auto fo = offsets(f);
  const auto ro = offsets(r);
  std::vector<std::vector<std::size_t>> table(df, std::vector<std::size_t>(dr));
  for (std::size_t a = 0; a < df; ++a)
    for (std::size_t b = 0; b < dr; ++b) table[a][b] = fo[a] + ro[b];
  return table;
}

void require_same_domain(const SuperOperator &a, const SuperOperator &b, const char *op) {
  if (a.labels != b.labels) {
    throw Error(ErrorCode::LabelMismatch, std::string(op) + ": " + to_string(a.labels) + " vs " + to_string(b.labels));
  }
}

}  // namespace

void check_dimension(const LabelSet &labels, std::size_t max_dim) {
  if (labels.dim() > max_dim) {
    throw Error(ErrorCode::DimensionTooLarge, "dimension " + std::to_string(labels.dim()) + " of " +
                                                  to_string(labels) + " exceeds " + std::to_string(max_dim));
  }
}

SuperOperator SuperOperator::identity(const LabelSet &labels) {
  const std::size_t d = labels.dim();
  return {labels, ComplexMatrix::identity(d * d)};
}

SuperOperator SuperOperator::zero(const LabelSet &labels) {
  const std::size_t d = labels.dim();
  return {labels, ComplexMatrix(d * d, d * d)};
}

SuperOperator SuperOperator::conjugation(const LabelSet &labels, const ComplexMatrix &k) {
  if (k.rows() != labels.dim() || !k.is_square()) throw Error(ErrorCode::ShapeMismatch, "Kraus operator shape");
  return {labels, kron(k.conjugate(), k)};
}

SuperOperator SuperOperator::from_map(const LabelSet &labels,
                                      const std::function<ComplexMatrix(const ComplexMatrix &)> &f) {
  const std::size_t d = labels.dim();
  ComplexMatrix m(d * d, d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      ComplexMatrix e(d, d);
      e(i, j) = 1.0;
      const ComplexMatrix out = f(e);
      if (out.rows() != d || out.cols() != d) throw Error(ErrorCode::ShapeMismatch, "map changes dimension");
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) m(r + c * d, i + j * d) = out(r, c);
    }
  return {labels, std::move(m)};
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix &rho) const {
  const std::size_t d = dim();
  if (rho.rows() != d || rho.cols() != d) throw Error(ErrorCode::ShapeMismatch, "state shape");
  return devectorize(matrix * vectorize(rho), d, d);
}

SuperOperator compose(const SuperOperator &second, const SuperOperator &first) {
  require_same_domain(second, first, "compose");
  return {first.labels, second.matrix * first.matrix};
}

SuperOperator add(const SuperOperator &a, const SuperOperator &b) {
  require_same_domain(a, b, "add");
  return {a.labels, a.matrix + b.matrix};
}

SuperOperator scale(Scalar s, const SuperOperator &a) { return {a.labels, s * a.matrix}; }

SuperOperator dual(const SuperOperator &so) { return {so.labels, so.matrix.adjoint()}; }

SuperOperator extend(const SuperOperator &so, const LabelSet &target) {
  if (!so.labels.is_subset_of(target)) {
    throw Error(ErrorCode::NotSuperset, to_string(target) + " does not contain " + to_string(so.labels));
  }
  if (so.labels == target) return so;
  const LabelSet rest = set_difference(target, so.labels);
  const auto table = merge_table(so.labels, rest, target);
  const std::size_t df = so.labels.dim(), dr = rest.dim(), dt = target.dim();
  ComplexMatrix m(dt * dt, dt * dt);
  for (std::size_t col = 0; col < df * df; ++col) {
    const std::size_t k = col % df, l = col / df;
    for (std::size_t row = 0; row < df * df; ++row) {
      const Scalar v = so.matrix(row, col);
      if (v == Scalar(0.0)) continue;
      const std::size_t i = row % df, j = row / df;
      for (std::size_t a = 0; a < dr; ++a)
        for (std::size_t b = 0; b < dr; ++b) {
          m(table[i][a] + table[j][b] * dt, table[k][a] + table[l][b] * dt) = v;
        }
    }
  }
  return {target, std::move(m)};
}

LabelledOperator apply(const SuperOperator &so, const LabelledOperator &rho) {
  if (!rho.is_square()) throw Error(ErrorCode::NotSquare, "state must be square");
  const LabelSet &t = rho.out_labels();
  if (!so.labels.is_subset_of(t)) {
    throw Error(ErrorCode::LabelMismatch, "state on " + to_string(t) + " does not cover " + to_string(so.labels));
  }
  if (so.labels == t) return LabelledOperator(t, t, so.apply(rho.matrix()));
  const LabelSet rest = set_difference(t, so.labels);
  const auto table = merge_table(so.labels, rest, t);
  const std::size_t df = so.labels.dim(), dr = rest.dim();
  ComplexMatrix out(t.dim(), t.dim());
  ComplexMatrix block(df, df);
  for (std::size_t a = 0; a < dr; ++a)
    for (std::size_t b = 0; b < dr; ++b) {
      for (std::size_t i = 0; i < df; ++i)
        for (std::size_t j = 0; j < df; ++j) block(i, j) = rho.matrix()(table[i][a], table[j][b]);
      const ComplexMatrix r = so.apply(block);
      for (std::size_t i = 0; i < df; ++i)
        for (std::size_t j = 0; j < df; ++j) out(table[i][a], table[j][b]) = r(i, j);
    }
  return LabelledOperator(t, t, std::move(out));
}

ComplexMatrix choi(const SuperOperator &so) {
  const std::size_t d = so.dim();
  ComplexMatrix j(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) j(i * d + a, k * d + b) = so.matrix(a + b * d, i + k * d);
  return j;
}

QualityReport quality(const SuperOperator &so, double tol) {
  QualityReport q;
  const ComplexMatrix j = choi(so);
  q.choi_min_eig = min_eigenvalue(j, 1e-8);
  q.is_cp = q.choi_min_eig >= -tol * std::max(1.0, j.frobenius_norm());
  const std::size_t d = so.dim();
  const ComplexMatrix id = ComplexMatrix::identity(d);
  const ComplexMatrix e_star_i = dual(so).apply(id);
  ComplexMatrix herm = 0.5 * (e_star_i + e_star_i.adjoint());
  q.is_trace_nonincreasing = loewner_leq(herm, id, tol);
  q.is_trace_preserving = approx_equal(e_star_i, id, tol);
  return q;
}

// ---------------------------------------------------------------------------
// Denotation

namespace {

ComplexMatrix lifted(const LabelledOperator &op, const LabelSet &domain) { return cyl_extend(op, domain).matrix(); }

SuperOperator denote_while(const Program &p, const LabelSet &f, const SemanticsOptions &opts, WhileStats *stats);

SuperOperator denote_rec(const Program &p, const LabelSet &f, const SemanticsOptions &opts, WhileStats *stats) {
  switch (p.kind()) {
    case Program::Kind::Abort: return SuperOperator::zero(f);
    case Program::Kind::Skip: return SuperOperator::identity(f);
    case Program::Kind::Seq:
      return compose(denote_rec(p.second(), f, opts, stats), denote_rec(p.first(), f, opts, stats));
    case Program::Kind::Unitary: return SuperOperator::conjugation(f, lifted(p.op(), f));
    case Program::Kind::Init: {
      const LabelledOperator &state = p.op();
      const LabelSet &s = state.out_labels();
      return SuperOperator::from_map(f, [&](const ComplexMatrix &x) {
        const LabelledOperator reduced = partial_trace(LabelledOperator(f, f, x), s);
        return tensor(reduced, state).matrix();
      });
    }
    case Program::Kind::Cond: {
      const auto &m = p.measurement();
      SuperOperator acc = SuperOperator::zero(f);
      for (std::size_t o = 0; o < m.outcomes(); ++o) {
        const auto branch = denote_rec(p.branches()[o], f, opts, stats);
        acc = add(acc, compose(branch, SuperOperator::conjugation(f, lifted(m.ops[o], f))));
      }
      return acc;
    }
    case Program::Kind::While: return denote_while(p, f, opts, stats);
  }
  throw Error(ErrorCode::TypeError, "unknown program node");
}

SuperOperator denote_while(const Program &p, const LabelSet &f, const SemanticsOptions &opts, WhileStats *stats) {
  const auto &m = p.measurement();
  const SuperOperator exit = SuperOperator::conjugation(f, lifted(m.ops[p.exit_outcome()], f));
  const SuperOperator step =
      compose(denote_rec(p.body(), f, opts, stats), SuperOperator::conjugation(f, lifted(m.ops[p.cont()], f)));
  WhileStats local;

  if (opts.strategy != WhileStrategy::Iterative) {
    ComplexMatrix q = step.matrix;
    for (int s = 0; s < 10; ++s) q = q * q;
    local.spectral_estimate = std::pow(q.frobenius_norm(), 1.0 / 1024.0);
    if (local.spectral_estimate < 1.0 - 1e-8) {
      const std::size_t n = step.matrix.rows();
      const ComplexMatrix lhs = (ComplexMatrix::identity(n) - step.matrix).transpose();
      const ComplexMatrix x = solve(lhs, exit.matrix.transpose()).transpose();
      local.closed_form = true;
      if (stats) *stats = local;
      return {f, x};
    }
  }

  // T_{2n} = T_n + T_n·Gⁿ
  ComplexMatrix total = exit.matrix;
  ComplexMatrix power = step.matrix;
  std::size_t n = 1;
  while (true) {
    const ComplexMatrix inc = total * power;
    total += inc;
    n *= 2;
    local.residual = inc.frobenius_norm();
    if (local.residual <= opts.while_tol) break;
    if (n >= opts.while_kmax) {
      throw Error(ErrorCode::NoConvergence, "while loop not converged after " + std::to_string(n) +
                                                " iterations, last increment " + std::to_string(local.residual));
    }
    power = power * power;
  }
  local.terms = n;
  if (stats) *stats = local;
  return {f, std::move(total)};
}

}  // namespace

SuperOperator denote_on(const Program &p, const LabelSet &domain, const SemanticsOptions &opts, WhileStats *stats) {
  const LabelSet fp = footprint(p);
  if (!fp.is_subset_of(domain)) {
    throw Error(ErrorCode::NotSuperset, to_string(domain) + " does not contain the footprint " + to_string(fp));
  }
  check_dimension(domain, opts.max_dim);
  check_dimension(domain, opts.max_superop_dim);
  return denote_rec(p, domain, opts, stats);
}

SuperOperator denote(const Program &p, const SemanticsOptions &opts, WhileStats *stats) {
  return denote_on(p, footprint(p), opts, stats);
}

namespace {

LabelledOperator evolve_rec(const Program &p, const LabelledOperator &rho, const SemanticsOptions &opts) {
  switch (p.kind()) {
    case Program::Kind::Abort: return LabelledOperator::zero(rho.out_labels(), rho.in_labels());
    case Program::Kind::Skip: return rho;
    case Program::Kind::Seq: return evolve_rec(p.second(), evolve_rec(p.first(), rho, opts), opts);
    case Program::Kind::Unitary: return compose(compose(p.op(), rho), p.op().adjoint());
    case Program::Kind::Init: return tensor(partial_trace(rho, p.op().out_labels()), p.op());
    case Program::Kind::Cond: {
      const auto &m = p.measurement();
      LabelledOperator acc = LabelledOperator::zero(rho.out_labels(), rho.in_labels());
      for (std::size_t o = 0; o < m.outcomes(); ++o) {
        acc = add(acc, evolve_rec(p.branches()[o], compose(compose(m.ops[o], rho), m.ops[o].adjoint()), opts));
      }
      return acc;
    }
    case Program::Kind::While: {
      const auto &m = p.measurement();
      const auto &mc = m.ops[p.cont()];
      const auto &me = m.ops[p.exit_outcome()];
      LabelledOperator out = LabelledOperator::zero(rho.out_labels(), rho.in_labels());
      LabelledOperator cur = rho;
      for (std::size_t k = 0;; ++k) {
        out = add(out, compose(compose(me, cur), me.adjoint()));
        LabelledOperator next = evolve_rec(p.body(), compose(compose(mc, cur), mc.adjoint()), opts);
        const double mass = std::abs(next.trace());
        if (mass <= opts.while_tol) break;
        // a state that neither leaves nor changes stays in the loop forever
        if (subtract(next, cur).norm() <= opts.while_tol * cur.norm() &&
            std::abs(std::abs(cur.trace()) - mass) <= opts.while_tol * mass)
          break;
        if (k >= opts.while_kmax) {
          throw Error(ErrorCode::NoConvergence, "while loop still holds mass " + std::to_string(mass) + " after " +
                                                    std::to_string(k) + " iterations");
        }
        cur = std::move(next);
      }
      return out;
    }
  }
  throw Error(ErrorCode::TypeError, "unknown program node");
}

}  // namespace

LabelledOperator evolve(const Program &p, const LabelledOperator &rho, const SemanticsOptions &opts) {
  if (!rho.is_square()) throw Error(ErrorCode::NotSquare, "state must be square");
  const LabelSet fp = footprint(p);
  if (!fp.is_subset_of(rho.out_labels())) {
    throw Error(ErrorCode::LabelMismatch, "state on " + to_string(rho.out_labels()) + " does not cover the footprint " +
                                              to_string(fp));
  }
  check_dimension(rho.out_labels(), opts.max_dim);
  return evolve_rec(p, rho, opts);
}

}  // namespace qwv
