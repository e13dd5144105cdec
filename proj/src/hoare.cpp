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

#include "qwv/hoare.hpp"

#include <cmath>

#include "qwv/error.hpp"

namespace qwv {

std::string_view mode_name(Mode m) { return m == Mode::Total ? "total" : "partial"; }

Judgment make_judgment(LabelledOperator pre, Program c, LabelledOperator post, Mode mode, bool saturated) {
  if (!pre.is_square() || !post.is_square()) throw Error(ErrorCode::NotSquare, "assertions must be square operators");
  Judgment j;
  j.pre = std::move(pre);
  j.program = std::move(c);
  j.post = std::move(post);
  j.mode = mode;
  j.saturated = saturated;
  return j;
}

Judgment make_state_judgment(LabelledOperator u, Program c, LabelledOperator v, Mode mode, bool saturated) {
  if (!u.is_ket() || !v.is_ket()) throw Error(ErrorCode::ShapeMismatch, "state triples need kets");
  Judgment j = make_judgment(compose(u, u.adjoint()), std::move(c), compose(v, v.adjoint()), mode, saturated);
  j.pre_ket = std::move(u);
  j.post_ket = std::move(v);
  return j;
}

namespace {

LabelledOperator wp_rec(const Program &p, const LabelledOperator &b, const LabelSet &f, const CheckOptions &opts) {
  switch (p.kind()) {
    case Program::Kind::Abort: return LabelledOperator::zero(f, f);
    case Program::Kind::Skip: return b;
    case Program::Kind::Seq: return wp_rec(p.first(), wp_rec(p.second(), b, f, opts), f, opts);
    case Program::Kind::Unitary: return compose(compose(p.op().adjoint(), b), p.op());
    case Program::Kind::Init: {
      const LabelledOperator &state = p.op();
      const LabelSet &s = state.out_labels();
      const LabelledOperator reduced = partial_trace(compose(b, cyl_extend(state, f)), s);
      return tensor(reduced, LabelledOperator::identity(s));
    }
    case Program::Kind::Cond: {
      const auto &m = p.measurement();
      LabelledOperator acc = LabelledOperator::zero(f, f);
      for (std::size_t o = 0; o < m.outcomes(); ++o) {
        const auto inner = wp_rec(p.branches()[o], b, f, opts);
        acc = add(acc, compose(compose(m.ops[o].adjoint(), inner), m.ops[o]));
      }
      return acc;
    }
    case Program::Kind::While: {
      const SuperOperator so = denote(p, opts.semantics);
      return apply(dual(so), b);
    }
  }
  throw Error(ErrorCode::TypeError, "unknown program node");
}

LabelSet domain_of(const Program &c, const LabelledOperator &b) {
  if (!b.is_square()) throw Error(ErrorCode::NotSquare, "postcondition must be square");
  return set_union(footprint(c), b.out_labels());
}

}  // namespace

LabelledOperator wp_on(const Program &c, const LabelledOperator &b, const LabelSet &domain, const CheckOptions &opts) {
  if (!b.is_square()) throw Error(ErrorCode::NotSquare, "postcondition must be square");
  check_dimension(domain, opts.semantics.max_dim);
  const LabelSet fp = footprint(c);
  if (!fp.is_subset_of(domain)) throw Error(ErrorCode::NotSuperset, "domain misses the footprint");
  return wp_rec(c, cyl_extend(b, domain), domain, opts);
}

LabelledOperator wlp_on(const Program &c, const LabelledOperator &b, const LabelSet &domain, const CheckOptions &opts) {
  const auto id = LabelledOperator::identity(domain);
  return add(wp_on(c, b, domain, opts), subtract(id, wp_on(c, id, domain, opts)));
}

LabelledOperator wp(const Program &c, const LabelledOperator &b, const CheckOptions &opts) {
  return wp_on(c, b, domain_of(c, b), opts);
}

LabelledOperator wlp(const Program &c, const LabelledOperator &b, const CheckOptions &opts) {
  return wlp_on(c, b, domain_of(c, b), opts);
}

Verdict check_valid(const Judgment &j, const CheckOptions &opts) {
  if (!j.pre.is_square() || !j.post.is_square()) throw Error(ErrorCode::NotSquare, "assertions must be square");
  Verdict v;
  v.domain = set_union(footprint(j.program), set_union(j.pre.out_labels(), j.post.out_labels()));
  const LabelledOperator a = cyl_extend(j.pre, v.domain);
  const LabelledOperator w = j.mode == Mode::Total ? wp_on(j.program, j.post, v.domain, opts)
                                                   : wlp_on(j.program, j.post, v.domain, opts);
  const ComplexMatrix diff = w.matrix() - a.matrix();
  v.residual = diff.frobenius_norm();
  const bool hermitian = is_hermitian(diff, opts.psd_tol);
  if (hermitian) {
    v.slack = min_eigenvalue(0.5 * (diff + diff.adjoint()), opts.psd_tol);
  } else {
    v.slack = -v.residual;
    v.diagnostics = "wp - pre is not Hermitian";
  }
  if (j.saturated) {
    v.valid = v.residual <= opts.saturation_tol * std::max(1.0, w.norm());
    if (!v.valid) v.diagnostics = "saturation residual " + std::to_string(v.residual);
  } else {
    v.valid = hermitian && is_hermitian(a.matrix(), opts.psd_tol) && is_hermitian(w.matrix(), opts.psd_tol) &&
              loewner_leq(a.matrix(), w.matrix(), opts.psd_tol);
    if (!v.valid && v.diagnostics.empty()) v.diagnostics = "min eigenvalue of wp - pre is " + std::to_string(v.slack);
  }
  return v;
}

Verdict check_state_triple(const LabelledOperator &u, const Program &c, const LabelledOperator &v, Mode mode,
                           bool saturated, const CheckOptions &opts) {
  if (!u.is_ket() || !v.is_ket()) throw Error(ErrorCode::ShapeMismatch, "state triples need kets");
  if (u.norm() > 1.0 + opts.eq_tol || v.norm() > 1.0 + opts.eq_tol) {
    throw Error(ErrorCode::NotNormalized, "state norm exceeds 1");
  }
  if (saturated && (std::abs(u.norm() - 1.0) > opts.eq_tol || std::abs(v.norm() - 1.0) > opts.eq_tol)) {
    throw Error(ErrorCode::NotNormalized, "saturated state triple with non-unit kets");
  }
  return check_valid(make_state_judgment(u, c, v, mode, saturated), opts);
}

}  // namespace qwv
