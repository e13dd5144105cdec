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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "qwv/error.hpp"
#include "qwv/hoare.hpp"

namespace qwv {

namespace {

using Premises = std::vector<Judgment>;

struct Ctx {
  const std::string &rule;
  const Premises &prem;
  const RuleWitness &w;
  const CheckOptions &opts;

  [[noreturn]] void fail(const std::string &cond) const {
    throw Error(ErrorCode::SideConditionViolated, rule + ": " + cond);
  }
  void need_premises(std::size_t n) const {
    if (prem.size() != n) fail("expects " + std::to_string(n) + " premise(s), got " + std::to_string(prem.size()));
  }
  void need_some_premises() const {
    if (prem.empty()) fail("expects at least one premise");
  }
  const LabelledOperator &need(const std::optional<LabelledOperator> &x, const char *what) const {
    if (!x) fail(std::string("missing witness ") + what);
    if (!x->is_square() && std::string(what) != "u" && std::string(what) != "v") fail(std::string(what) + " must be square");
    return *x;
  }
  const LabelledOperator &need_ket(const std::optional<LabelledOperator> &x, const char *what) const {
    if (!x) fail(std::string("missing witness ") + what);
    if (!x->is_ket()) fail(std::string(what) + " must be a ket");
    return *x;
  }
  const Program &need_program(Program::Kind kind, const char *what) const {
    if (!w.program) fail(std::string("missing witness program (") + what + ")");
    if (w.program->kind() != kind) fail(std::string("witness program is not ") + what);
    return *w.program;
  }
  Mode mode() const { return w.mode.value_or(Mode::Total); }
  bool saturated() const { return w.saturated.value_or(true); }

  void need_mode(const Judgment &j, Mode m) const {
    if (j.mode != m) fail(std::string("premise must be ") + std::string(mode_name(m)) + " correctness");
  }
  void same_program(const Program &a, const Program &b) const {
    if (!structurally_equal(a, b, opts.eq_tol)) fail("premises talk about different programs");
  }

  bool same_pred(const LabelledOperator &a, const LabelledOperator &b) const {
    const LabelSet all = set_union(a.labels(), b.labels());
    const auto x = cyl_extend(a, all).matrix();
    const auto y = cyl_extend(b, all).matrix();
    return frobenius_distance(x, y) <= opts.saturation_tol * std::max({1.0, x.frobenius_norm(), y.frobenius_norm()});
  }
  bool leq(const LabelledOperator &a, const LabelledOperator &b) const {
    const LabelSet all = set_union(a.labels(), b.labels());
    const auto x = cyl_extend(a, all).matrix();
    const auto y = cyl_extend(b, all).matrix();
    if (!is_hermitian(x, opts.psd_tol) || !is_hermitian(y, opts.psd_tol)) return false;
    return loewner_leq(x, y, opts.psd_tol);
  }
  bool psd(const LabelledOperator &a) const { return is_psd(a.matrix(), opts.psd_tol); }
  bool below_identity(const LabelledOperator &a) const {
    return is_hermitian(a.matrix(), opts.psd_tol) &&
           is_psd(ComplexMatrix::identity(a.matrix().rows()) - a.matrix(), opts.psd_tol);
  }
};

LabelledOperator extended_sum(const LabelledOperator &a, const LabelledOperator &b) {
  const LabelSet all = set_union(a.labels(), b.labels());
  return add(cyl_extend(a, all), cyl_extend(b, all));
}

LabelSet pset_of(const Judgment &j) {
  return set_union(footprint(j.program), set_union(j.pre.out_labels(), j.post.out_labels()));
}

Judgment conclude(LabelledOperator pre, Program c, LabelledOperator post, Mode m, bool sat) {
  return make_judgment(std::move(pre), std::move(c), std::move(post), m, sat);
}

// the pure state |t⟩ of a rank-one initial state
LabelledOperator init_ket(const Ctx &ctx, const Program &init) {
  const auto &rho = init.op();
  if (!is_projection(rho.matrix(), ctx.opts.psd_tol)) ctx.fail("initial state is not pure");
  const auto ed = hermitian_eig(rho.matrix());
  return LabelledOperator(rho.out_labels(), {}, ed.eigenvectors.column_at(ed.eigenvectors.cols() - 1));
}

void pairwise_disjoint(const Ctx &ctx, const std::vector<LabelSet> &sets, const char *what) {
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!sets[i].disjoint_from(sets[j])) ctx.fail(std::string(what) + " " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
}

std::vector<LabelSet> part_labels(const Ctx &ctx, Program::Kind kind) {
  if (ctx.w.parts.empty()) ctx.fail("missing witness parts");
  std::vector<LabelSet> sets;
  for (const auto &p : ctx.w.parts) {
    if (p.kind() != kind) ctx.fail("loop body has the wrong statement kind");
    sets.push_back(p.op().out_labels());
  }
  pairwise_disjoint(ctx, sets, "loop components");
  return sets;
}

LabelledOperator parallel_unitary(const Ctx &ctx) {
  part_labels(ctx, Program::Kind::Unitary);
  std::vector<LabelledOperator> us;
  for (const auto &p : ctx.w.parts) us.push_back(p.op());
  return big_tensor(us);
}

using RuleFn = std::function<Judgment(const Ctx &)>;

const std::map<std::string, RuleFn> &rule_table() {
  static const std::map<std::string, RuleFn> table = {
      {"Ax.Sk",
       [](const Ctx &c) {
         c.need_premises(0);
         const auto &a = c.need(c.w.a, "a");
         return conclude(a, Program::skip(), a, c.mode(), c.saturated());
       }},
      {"Ax.In",
       [](const Ctx &c) {
         c.need_premises(0);
         const Program &p = c.need_program(Program::Kind::Init, "an initialization");
         const auto &a = c.need(c.w.a, "a");
         const LabelSet &s = p.op().out_labels();
         const LabelSet all = set_union(a.labels(), s);
         const auto pre = partial_trace(compose(cyl_extend(a, all), cyl_extend(p.op(), all)), s);
         return conclude(pre, p, a, c.mode(), c.saturated());
       }},
      {"Ax.InF",
       [](const Ctx &c) {
         c.need_premises(0);
         const Program &p = c.need_program(Program::Kind::Init, "an initialization");
         const auto &a = c.need(c.w.a, "a");
         if (!a.labels().disjoint_from(p.op().out_labels())) c.fail("S meets the initialized variables");
         if (!is_projection(p.op().matrix(), c.opts.psd_tol)) c.fail("initial state is not pure");
         return conclude(a, p, tensor(a, p.op()), c.mode(), c.saturated());
       }},
      {"Ax.UT",
       [](const Ctx &c) {
         c.need_premises(0);
         const Program &p = c.need_program(Program::Kind::Unitary, "a unitary");
         const auto &a = c.need(c.w.a, "a");
         return conclude(compose(compose(p.op().adjoint(), a), p.op()), p, a, c.mode(), c.saturated());
       }},
      {"Ax.UTF",
       [](const Ctx &c) {
         c.need_premises(0);
         const Program &p = c.need_program(Program::Kind::Unitary, "a unitary");
         const auto &a = c.need(c.w.a, "a");
         return conclude(a, p, compose(compose(p.op(), a), p.op().adjoint()), c.mode(), c.saturated());
       }},
      {"R.SC",
       [](const Ctx &c) {
         c.need_premises(2);
         const auto &p1 = c.prem[0];
         const auto &p2 = c.prem[1];
         if (p1.mode != p2.mode) c.fail("premises differ in correctness mode");
         if (!c.same_pred(p1.post, p2.pre)) c.fail("postcondition of the first premise is not the precondition of the second");
         Judgment j = conclude(p1.pre, Program::seq(p1.program, p2.program), p2.post, p1.mode, p1.saturated && p2.saturated);
         j.pre_ket = p1.pre_ket;
         j.post_ket = p2.post_ket;
         return j;
       }},
      {"R.IF",
       [](const Ctx &c) {
         const Program &p = c.need_program(Program::Kind::Cond, "a conditional");
         const auto &m = p.measurement();
         c.need_premises(m.outcomes());
         const Mode mode = c.prem[0].mode;
         bool sat = true;
         std::optional<LabelledOperator> pre;
         for (std::size_t o = 0; o < m.outcomes(); ++o) {
           const auto &j = c.prem[o];
           c.need_mode(j, mode);
           c.same_program(j.program, p.branches()[o]);
           if (!c.same_pred(j.post, c.prem[0].post)) c.fail("branches have different postconditions");
           sat = sat && j.saturated;
           const auto term = compose(compose(m.ops[o].adjoint(), j.pre), m.ops[o]);
           pre = pre ? extended_sum(*pre, term) : term;
         }
         return conclude(*pre, p, c.prem[0].post, mode, sat);
       }},
      {"R.LP.P",
       [](const Ctx &c) {
         c.need_premises(1);
         const Program &p = c.need_program(Program::Kind::While, "a while loop");
         const auto &prem = c.prem[0];
         c.need_mode(prem, Mode::Partial);
         c.same_program(prem.program, p.body());
         const auto &a = prem.pre;
         const auto &b = c.need(c.w.b, "b");
         const auto &m = p.measurement();
         const auto &mb = m.ops[p.cont()];
         const auto &mn = m.ops[p.exit_outcome()];
         const auto r = extended_sum(compose(compose(mb.adjoint(), a), mb), compose(compose(mn.adjoint(), b), mn));
         if (!c.same_pred(prem.post, r)) c.fail("premise postcondition differs from R");
         if (!c.below_identity(a)) c.fail("A is not below I");
         if (!c.below_identity(b)) c.fail("B is not below I");
         return conclude(r, p, b, Mode::Partial, false);
       }},
      {"R.Or",
       [](const Ctx &c) {
         c.need_premises(1);
         const auto &prem = c.prem[0];
         const auto &a = c.need(c.w.a, "a");
         const auto &b = c.need(c.w.b, "b");
         if (!c.leq(a, prem.pre)) c.fail("A is not below the premise precondition");
         if (!c.leq(prem.post, b)) c.fail("the premise postcondition is not below B");
         return conclude(a, prem.program, b, prem.mode, false);
       }},
      {"R.Scale.T",
       [](const Ctx &c) {
         c.need_premises(1);
         const auto &prem = c.prem[0];
         c.need_mode(prem, Mode::Total);
         if (c.w.lambdas.size() != 1) c.fail("expects one lambda");
         const double l = c.w.lambdas[0];
         if (!(l >= 0.0)) c.fail("lambda must be non-negative");
         return conclude(scale(l, prem.pre), prem.program, scale(l, prem.post), Mode::Total, prem.saturated);
       }},
      {"R.Add.T",
       [](const Ctx &c) {
         c.need_premises(2);
         c.need_mode(c.prem[0], Mode::Total);
         c.need_mode(c.prem[1], Mode::Total);
         c.same_program(c.prem[0].program, c.prem[1].program);
         return conclude(extended_sum(c.prem[0].pre, c.prem[1].pre), c.prem[0].program,
                         extended_sum(c.prem[0].post, c.prem[1].post), Mode::Total,
                         c.prem[0].saturated && c.prem[1].saturated);
       }},
      {"R.CC.P",
       [](const Ctx &c) {
         c.need_some_premises();
         if (c.w.lambdas.size() != c.prem.size()) c.fail("one lambda per premise required");
         double total = 0.0;
         std::optional<LabelledOperator> pre, post;
         for (std::size_t i = 0; i < c.prem.size(); ++i) {
           const auto &j = c.prem[i];
           c.need_mode(j, Mode::Partial);
           c.same_program(j.program, c.prem[0].program);
           const double l = c.w.lambdas[i];
           if (!(l >= 0.0)) c.fail("lambda must be non-negative");
           total += l;
           const auto a = scale(l, j.pre);
           const auto b = scale(l, j.post);
           pre = pre ? extended_sum(*pre, a) : a;
           post = post ? extended_sum(*post, b) : b;
         }
         if (total > 1.0 + c.opts.eq_tol) c.fail("lambdas sum above 1");
         return conclude(*pre, c.prem[0].program, *post, Mode::Partial, false);
       }},
      {"R.ST",
       [](const Ctx &c) {
         c.need_premises(1);
         Judgment j = c.prem[0];
         if (!j.saturated) c.fail("premise is not saturated");
         j.saturated = false;
         return j;
       }},
      {"R.No.LP",
       [](const Ctx &c) {
         c.need_premises(1);
         Judgment j = c.prem[0];
         if (j.program.contains_while()) c.fail("program contains a while loop");
         if (j.program.contains_abort()) c.fail("program contains abort");
         j.mode = c.w.mode.value_or(j.mode == Mode::Total ? Mode::Partial : Mode::Total);
         return j;
       }},
      {"Ax.Inv",
       [](const Ctx &c) {
         c.need_premises(0);
         if (!c.w.program) c.fail("missing witness program");
         const auto &a = c.need(c.w.a, "a");
         if (!a.labels().disjoint_from(footprint(*c.w.program))) c.fail("S meets the program footprint");
         if (!c.below_identity(a)) c.fail("A is not below I");
         return conclude(a, *c.w.program, a, Mode::Partial, false);
       }},
      {"R.SO",
       [](const Ctx &c) {
         c.need_premises(1);
         const auto &prem = c.prem[0];
         if (!c.w.channel) c.fail("missing channel");
         const SuperOperator &e = *c.w.channel;
         if (!e.labels.disjoint_from(footprint(prem.program))) c.fail("channel acts on the program footprint");
         const auto q = quality(e, c.opts.psd_tol);
         if (!q.is_cp || !q.is_trace_preserving) c.fail("witness is not a quantum channel");
         const SuperOperator d = dual(e);
         auto lift = [&](const LabelledOperator &x) {
           return apply(d, cyl_extend(x, set_union(x.out_labels(), e.labels)));
         };
         return conclude(lift(prem.pre), prem.program, lift(prem.post), prem.mode, prem.saturated);
       }},
      {"R.El",
       [](const Ctx &c) {
         c.need_premises(1);
         const auto &prem = c.prem[0];
         if (!c.w.labels.disjoint_from(prem.pre.out_labels())) c.fail("S meets the precondition labels");
         return conclude(tensor(prem.pre, LabelledOperator::identity(c.w.labels)), prem.program, prem.post, prem.mode,
                         prem.saturated);
       }},
      {"R.Er",
       [](const Ctx &c) {
         c.need_premises(1);
         const auto &prem = c.prem[0];
         if (!c.w.labels.disjoint_from(prem.post.out_labels())) c.fail("S meets the postcondition labels");
         return conclude(prem.pre, prem.program, tensor(prem.post, LabelledOperator::identity(c.w.labels)), prem.mode,
                         prem.saturated);
       }},
      {"R.TI",
       [](const Ctx &c) {
         c.need_premises(1);
         const auto &prem = c.prem[0];
         const auto &a = c.need(c.w.a, "a");
         const auto &b = c.need(c.w.b, "b");
         if (!a.out_labels().is_subset_of(prem.pre.out_labels())) c.fail("A lives outside the precondition");
         if (!b.out_labels().is_subset_of(prem.post.out_labels())) c.fail("B lives outside the postcondition");
         const LabelSet s1 = set_difference(prem.pre.out_labels(), a.out_labels());
         const LabelSet s2 = set_difference(prem.post.out_labels(), b.out_labels());
         if (!approx_eq(prem.pre, tensor(a, LabelledOperator::identity(s1)), c.opts.saturation_tol)) {
           c.fail("precondition is not A (x) I");
         }
         if (!approx_eq(prem.post, tensor(b, LabelledOperator::identity(s2)), c.opts.saturation_tol)) {
           c.fail("postcondition is not B (x) I");
         }
         return conclude(a, prem.program, b, prem.mode, prem.saturated);
       }},
      {"Frame.T",
       [](const Ctx &c) {
         c.need_premises(1);
         const auto &prem = c.prem[0];
         c.need_mode(prem, Mode::Total);
         const auto &r = c.need(c.w.r, "r");
         if (!r.labels().disjoint_from(pset_of(prem))) c.fail("frame meets the program or its assertions");
         if (!c.psd(r)) c.fail("frame is not positive");
         return conclude(tensor(prem.pre, r), prem.program, tensor(prem.post, r), Mode::Total, prem.saturated);
       }},
      {"Frame.P",
       [](const Ctx &c) {
         c.need_premises(1);
         const auto &prem = c.prem[0];
         c.need_mode(prem, Mode::Partial);
         const auto &r = c.need(c.w.r, "r");
         if (!r.labels().disjoint_from(pset_of(prem))) c.fail("frame meets the program or its assertions");
         if (!c.psd(r) || !c.below_identity(r)) c.fail("frame is not between 0 and I");
         return conclude(tensor(prem.pre, r), prem.program, tensor(prem.post, r), Mode::Partial, false);
       }},
      {"R.PC.T",
       [](const Ctx &c) {
         c.need_some_premises();
         std::vector<LabelSet> sets;
         std::vector<LabelledOperator> as, bs;
         std::vector<Program> ps;
         bool sat = true;
         for (const auto &j : c.prem) {
           c.need_mode(j, Mode::Total);
           if (!c.psd(j.pre) || !c.psd(j.post)) c.fail("assertions must be positive");
           sets.push_back(pset_of(j));
           as.push_back(j.pre);
           bs.push_back(j.post);
           ps.push_back(j.program);
           sat = sat && j.saturated;
         }
         pairwise_disjoint(c, sets, "components");
         return conclude(big_tensor(as), desugar_for(ps), big_tensor(bs), Mode::Total, sat);
       }},
      {"R.PC.P",
       [](const Ctx &c) {
         c.need_some_premises();
         std::vector<LabelSet> sets;
         std::vector<LabelledOperator> as, bs;
         std::vector<Program> ps;
         for (const auto &j : c.prem) {
           c.need_mode(j, Mode::Partial);
           if (!c.psd(j.pre) || !c.below_identity(j.pre) || !c.psd(j.post) || !c.below_identity(j.post)) {
             c.fail("assertions must lie between 0 and I");
           }
           sets.push_back(pset_of(j));
           as.push_back(j.pre);
           bs.push_back(j.post);
           ps.push_back(j.program);
         }
         pairwise_disjoint(c, sets, "components");
         return conclude(big_tensor(as), desugar_for(ps), big_tensor(bs), Mode::Partial, false);
       }},
      {"Ax.UTP",
       [](const Ctx &c) {
         c.need_premises(0);
         const auto u = parallel_unitary(c);
         const auto &a = c.need(c.w.a, "a");
         return conclude(compose(compose(u.adjoint(), a), u), desugar_for(c.w.parts), a, c.mode(), c.saturated());
       }},
      {"Ax.UTFP",
       [](const Ctx &c) {
         c.need_premises(0);
         const auto u = parallel_unitary(c);
         const auto &a = c.need(c.w.a, "a");
         return conclude(a, desugar_for(c.w.parts), compose(compose(u, a), u.adjoint()), c.mode(), c.saturated());
       }},
      {"Ax.InP",
       [](const Ctx &c) {
         c.need_premises(0);
         const auto sets = part_labels(c, Program::Kind::Init);
         if (c.w.items.size() != c.w.parts.size()) c.fail("one predicate per component required");
         Scalar pre = 1.0;
         for (std::size_t i = 0; i < sets.size(); ++i) {
           const auto &a = c.w.items[i];
           if (!a.is_square() || a.out_labels() != sets[i]) c.fail("predicate " + std::to_string(i) + " must act on its variable");
           pre *= compose(a, c.w.parts[i].op()).trace();
         }
         return conclude(LabelledOperator::scalar(pre), desugar_for(c.w.parts), big_tensor(c.w.items), c.mode(),
                         c.saturated());
       }},
      {"Ax.InFP",
       [](const Ctx &c) {
         c.need_premises(0);
         part_labels(c, Program::Kind::Init);
         std::vector<LabelledOperator> states;
         for (const auto &p : c.w.parts) {
           if (!is_projection(p.op().matrix(), c.opts.psd_tol)) c.fail("initial state is not pure");
           states.push_back(p.op());
         }
         return conclude(LabelledOperator::scalar(1.0), desugar_for(c.w.parts), big_tensor(states), c.mode(),
                         c.saturated());
       }},
      {"R.Inner",
       [](const Ctx &c) {
         c.need_premises(1);
         const auto &prem = c.prem[0];
         c.need_mode(prem, Mode::Total);
         if (!prem.saturated) c.fail("premise must be saturated");
         if (!approx_eq(prem.pre, LabelledOperator::identity(prem.pre.out_labels()), c.opts.saturation_tol)) {
           c.fail("premise precondition is not 1");
         }
         const LabelledOperator v = c.w.v ? c.need_ket(c.w.v, "v") : c.need_ket(prem.post_ket, "v");
         if (!c.same_pred(prem.post, compose(v, v.adjoint()))) c.fail("premise postcondition is not |v><v|");
         if (v.norm() > 1.0 + c.opts.eq_tol) c.fail("|v> has norm above 1");
         const auto &u = c.need_ket(c.w.u, "u");
         if (!u.out_labels().is_subset_of(v.out_labels())) c.fail("S_u is not inside S_v");
         const double n = compose(u.adjoint(), v).norm();
         Judgment j = conclude(LabelledOperator::scalar(n * n), prem.program, compose(u, u.adjoint()), Mode::Total, true);
         j.post_ket = u;
         return j;
       }},
      {"Ax.UTF'",
       [](const Ctx &c) {
         c.need_premises(0);
         const Program &p = c.need_program(Program::Kind::Unitary, "a unitary");
         const auto &v = c.need_ket(c.w.v, "v");
         if (!p.op().out_labels().is_subset_of(v.out_labels())) c.fail("the unitary acts outside S");
         return make_state_judgment(v, p, compose(p.op(), v), c.mode(), c.saturated());
       }},
      {"Ax.InF'",
       [](const Ctx &c) {
         c.need_premises(0);
         const Program &p = c.need_program(Program::Kind::Init, "an initialization");
         const auto &v = c.need_ket(c.w.v, "v");
         if (!v.out_labels().disjoint_from(p.op().out_labels())) c.fail("S meets the initialized variables");
         return make_state_judgment(v, p, tensor(v, init_ket(c, p)), c.mode(), c.saturated());
       }},
      {"Ax.UTFP'",
       [](const Ctx &c) {
         c.need_premises(0);
         const auto u = parallel_unitary(c);
         const auto &v = c.need_ket(c.w.v, "v");
         if (!u.out_labels().is_subset_of(v.out_labels())) c.fail("the unitaries act outside S");
         return make_state_judgment(v, desugar_for(c.w.parts), compose(u, v), c.mode(), c.saturated());
       }},
      {"Ax.InFP'",
       [](const Ctx &c) {
         c.need_premises(0);
         part_labels(c, Program::Kind::Init);
         std::vector<LabelledOperator> kets;
         for (const auto &p : c.w.parts) kets.push_back(init_ket(c, p));
         return make_state_judgment(LabelledOperator::scalar(1.0), desugar_for(c.w.parts), big_tensor(kets), c.mode(),
                                    c.saturated());
       }},
  };
  return table;
}

}  // namespace

const std::vector<std::string> &rule_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto &[k, _] : rule_table()) v.push_back(k);
    return v;
  }();
  return ids;
}

Judgment apply_rule(const std::string &rule, const std::vector<Judgment> &premises, const RuleWitness &w,
                    const CheckOptions &opts) {
  const auto &table = rule_table();
  auto it = table.find(rule);
  if (it == table.end()) throw Error(ErrorCode::UnknownRule, rule);
  return it->second(Ctx{rule, premises, w, opts});
}

}  // namespace qwv
