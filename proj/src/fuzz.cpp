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
#include <limits>
#include <map>
#include <random>

#include <json.hpp>

#include "qwv/error.hpp"
#include "qwv/hoare.hpp"

namespace qwv {

namespace {

using json = nlohmann::json;

std::uint64_t fnv1a(const std::string &s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

struct Gen {
  std::mt19937_64 rng;
  VarTable vars;
  std::vector<std::string> names{"a", "b", "c"};
  CheckOptions opts;

  Gen(std::uint64_t seed, const std::string &rule, std::uint64_t trial, const CheckOptions &o) : opts(o) {
    const std::uint64_t h = fnv1a(rule);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    rng.seed(seq);
    for (std::size_t i = 0; i < names.size(); ++i) {
      // the loop variable of R.LP.P must be a qubit
      const bool qubit = i == 0 || coin(0.5);
      vars.declare(names[i], qubit ? QType::boolean() : QType::zn(3));
    }
  }

  double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
  bool coin(double p) { return uni(0.0, 1.0) < p; }

  std::vector<Label> labels(const std::vector<std::string> &refs) const {
    std::vector<Label> out;
    for (const auto &r : refs) {
      const auto ls = vars.resolve(r);
      out.insert(out.end(), ls.begin(), ls.end());
    }
    return out;
  }
  LabelSet label_set(const std::vector<std::string> &refs) const { return LabelSet(labels(refs)); }
  std::size_t dim(const std::vector<std::string> &refs) const { return label_set(refs).dim(); }

  std::vector<std::string> subset(const std::vector<std::string> &from, bool nonempty = true) {
    std::vector<std::string> out;
    for (const auto &n : from)
      if (coin(0.5)) out.push_back(n);
    if (out.empty() && nonempty && !from.empty()) out.push_back(from[pick(from.size())]);
    return out;
  }
  std::vector<std::string> shuffled(std::vector<std::string> v) {
    std::shuffle(v.begin(), v.end(), rng);
    return v;
  }

  ComplexMatrix gaussian(std::size_t r, std::size_t c) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix m(r, c);
    for (auto &x : m.entries()) x = Scalar(n(rng), n(rng));
    return m;
  }
  ComplexMatrix hermitian(std::size_t d) {
    const auto g = gaussian(d, d);
    return 0.5 * (g + g.adjoint());
  }
  ComplexMatrix unitary(std::size_t d) { return expm_hermitian(hermitian(d), 2.0); }
  ComplexMatrix pure(std::size_t d) {
    auto v = gaussian(d, 1);
    v *= 1.0 / v.frobenius_norm();
    return v;
  }
  ComplexMatrix density(std::size_t d) {
    if (coin(0.4)) {
      const auto v = pure(d);
      return v * v.adjoint();
    }
    const auto g = gaussian(d, d);
    auto rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return rho;
  }
  ComplexMatrix positive(std::size_t d, double top) {
    const auto g = gaussian(d, coin(0.3) ? 1 : d);
    auto p = g * g.adjoint();
    const auto ed = hermitian_eig(p);
    p *= top / std::max(ed.eigenvalues.back(), 1e-12);
    return p;
  }
  ComplexMatrix effect(std::size_t d) { return positive(d, uni(0.2, 1.0)); }

  LabelledOperator op_on(const std::vector<std::string> &refs, const ComplexMatrix &m) const {
    return LabelledOperator::on(labels(refs), m);
  }
  LabelledOperator effect_on(const std::vector<std::string> &refs) { return op_on(refs, effect(dim(refs))); }
  LabelledOperator ket_on(const std::vector<std::string> &refs, double norm) {
    auto v = pure(dim(refs));
    v *= norm;
    return LabelledOperator::from_ordered(labels(refs), {}, v);
  }

  Program init_prog(const std::string &v, bool pure_state) {
    const std::size_t d = dim({v});
    ComplexMatrix rho;
    if (pure_state) {
      const auto k = pure(d);
      rho = k * k.adjoint();
    } else {
      rho = density(d);
    }
    return Program::init({v}, op_on({v}, rho), "rho");
  }
  Program unitary_prog(const std::vector<std::string> &vs) {
    return Program::unitary(vs, op_on(vs, unitary(dim(vs))), "U");
  }

  Program program(const std::vector<std::string> &scope, int depth, bool allow_abort) {
    const std::size_t k = depth <= 0 ? pick(3) : pick(6);
    switch (k) {
      case 0:
        if (allow_abort && coin(0.3)) return Program::abort();
        return coin(0.5) ? Program::skip() : init_prog(scope[pick(scope.size())], coin(0.5));
      case 1: return init_prog(scope[pick(scope.size())], coin(0.5));
      case 2: {
        auto s = shuffled(scope);
        s.resize(std::min<std::size_t>(s.size(), coin(0.5) ? 2 : 1));
        return unitary_prog(s);
      }
      case 3:
      case 4: return Program::seq(program(scope, depth - 1, allow_abort), program(scope, depth - 1, allow_abort));
      default: {
        const auto m = basis_measurement(vars, {scope[pick(scope.size())]});
        std::vector<Program> branches;
        for (std::size_t o = 0; o < m.outcomes(); ++o) branches.push_back(program(scope, depth - 1, allow_abort));
        return Program::cond(m, branches);
      }
    }
  }
  Program program(const std::vector<std::string> &scope) { return program(scope, 1 + static_cast<int>(pick(2)), true); }

  Mode mode() { return coin(0.5) ? Mode::Total : Mode::Partial; }

  /// A valid premise {μ·w(C,B)} C {B} with w = wp or wlp.
  Judgment premise(const Program &c, const LabelledOperator &b, Mode m, bool sat) {
    const auto w = m == Mode::Total ? wp(c, b, opts) : wlp(c, b, opts);
    const double mu = sat ? 1.0 : uni(0.0, 1.0);
    return make_judgment(scale(mu, w), c, b, m, sat);
  }
};

struct Instance {
  std::vector<Judgment> premises;
  RuleWitness w;
};

using Builder = std::function<Instance(Gen &)>;

Instance axiom(Gen &g) {
  Instance in;
  in.w.mode = g.mode();
  in.w.saturated = g.coin(0.7);
  return in;
}

Instance one_premise(Gen &g, const std::vector<std::string> &scope, std::optional<Mode> mode = {},
                     std::optional<bool> sat = {}, bool allow_abort = true) {
  Instance in;
  const Program c = g.program(scope, 1 + static_cast<int>(g.pick(2)), allow_abort);
  const auto b = g.effect_on(g.subset(scope));
  in.premises.push_back(g.premise(c, b, mode.value_or(g.mode()), sat.value_or(g.coin(0.5))));
  return in;
}

const std::map<std::string, Builder> &builders() {
  static const std::map<std::string, Builder> table = {
      {"Ax.Sk",
       [](Gen &g) {
         auto in = axiom(g);
         in.w.a = g.effect_on(g.subset(g.names));
         return in;
       }},
      {"Ax.In",
       [](Gen &g) {
         auto in = axiom(g);
         in.w.program = g.init_prog(g.names[g.pick(3)], g.coin(0.5));
         in.w.a = g.effect_on(g.subset(g.names));
         return in;
       }},
      {"Ax.InF",
       [](Gen &g) {
         auto in = axiom(g);
         auto s = g.shuffled(g.names);
         in.w.program = g.init_prog(s[0], true);
         in.w.a = g.effect_on(g.subset({s[1], s[2]}));
         return in;
       }},
      {"Ax.UT",
       [](Gen &g) {
         auto in = axiom(g);
         in.w.program = g.unitary_prog(g.shuffled(g.subset(g.names)));
         in.w.a = g.effect_on(g.subset(g.names));
         return in;
       }},
      {"Ax.UTF",
       [](Gen &g) {
         auto in = axiom(g);
         in.w.program = g.unitary_prog(g.shuffled(g.subset(g.names)));
         in.w.a = g.effect_on(g.subset(g.names));
         return in;
       }},
      {"R.SC",
       [](Gen &g) {
         Instance in;
         const Mode m = g.mode();
         const Program c1 = g.program(g.names);
         const Program c2 = g.program(g.names);
         const auto p2 = g.premise(c2, g.effect_on(g.subset(g.names)), m, g.coin(0.5));
         in.premises.push_back(g.premise(c1, p2.pre, m, g.coin(0.5)));
         in.premises.push_back(p2);
         return in;
       }},
      {"R.IF",
       [](Gen &g) {
         Instance in;
         const Mode m = g.mode();
         const bool sat = g.coin(0.5);
         const auto meas = basis_measurement(g.vars, {g.names[g.pick(3)]});
         const auto b = g.effect_on(g.subset(g.names));
         std::vector<Program> branches;
         for (std::size_t o = 0; o < meas.outcomes(); ++o) {
           branches.push_back(g.program(g.names, 1, true));
           in.premises.push_back(g.premise(branches.back(), b, m, sat || g.coin(0.5)));
         }
         in.w.program = Program::cond(meas, branches);
         return in;
       }},
      {"R.LP.P",
       [](Gen &g) {
         Instance in;
         // coin loop on the qubit a, body scrambles a (and maybe one more variable)
         std::vector<std::string> scope{"a"};
         if (g.coin(0.5)) scope.push_back(g.names[1 + g.pick(2)]);
         const Program body = g.unitary_prog(g.shuffled(scope));
         const auto meas = basis_measurement(g.vars, {"a"});
         const Program loop = Program::while_loop(meas, 1, body);
         const double mu = g.uni(0.0, 1.0);
         const auto b = g.effect_on(g.subset(g.names));
         const auto x = wlp(loop, b, g.opts);
         const auto a = wlp(body, x, g.opts);
         in.premises.push_back(make_judgment(scale(mu, a), body, scale(mu, x), Mode::Partial, false));
         in.w.program = loop;
         in.w.b = scale(mu, b);
         return in;
       }},
      {"R.Or",
       [](Gen &g) {
         auto in = one_premise(g, g.names);
         const auto &p = in.premises[0];
         const LabelSet all = set_union(p.pre.out_labels(), g.label_set(g.names));
         in.w.a = subtract(cyl_extend(p.pre, all),
                           scale(g.uni(0.0, 0.5), g.op_on(g.names, g.positive(g.dim(g.names), 1.0))));
         const auto extra = g.subset(g.names);
         in.w.b = add(cyl_extend(p.post, set_union(p.post.out_labels(), g.label_set(extra))),
                      cyl_extend(g.op_on(extra, g.positive(g.dim(extra), g.uni(0.0, 0.5))),
                                 set_union(p.post.out_labels(), g.label_set(extra))));
         return in;
       }},
      {"R.Scale.T",
       [](Gen &g) {
         auto in = one_premise(g, g.names, Mode::Total);
         in.w.lambdas = {g.uni(0.0, 2.0)};
         return in;
       }},
      {"R.Add.T",
       [](Gen &g) {
         Instance in;
         const Program c = g.program(g.names);
         for (int i = 0; i < 2; ++i) in.premises.push_back(g.premise(c, g.effect_on(g.subset(g.names)), Mode::Total, g.coin(0.5)));
         return in;
       }},
      {"R.CC.P",
       [](Gen &g) {
         Instance in;
         const Program c = g.program(g.names);
         const std::size_t n = 2 + g.pick(2);
         double total = 0.0;
         for (std::size_t i = 0; i < n; ++i) {
           in.premises.push_back(g.premise(c, g.effect_on(g.subset(g.names)), Mode::Partial, g.coin(0.5)));
           in.w.lambdas.push_back(g.uni(0.0, 1.0));
           total += in.w.lambdas.back();
         }
         const double cap = g.uni(0.5, 1.0);
         for (auto &l : in.w.lambdas) l *= cap / total;
         return in;
       }},
      {"R.ST", [](Gen &g) { return one_premise(g, g.names, {}, true); }},
      {"R.No.LP", [](Gen &g) { return one_premise(g, g.names, {}, {}, false); }},
      {"Ax.Inv",
       [](Gen &g) {
         Instance in;
         in.w.mode = Mode::Partial;
         in.w.saturated = false;
         auto s = g.shuffled(g.names);
         in.w.program = g.program({s[0], s[1]});
         in.w.a = g.effect_on({s[2]});
         return in;
       }},
      {"R.SO",
       [](Gen &g) {
         auto s = g.shuffled(g.names);
         Instance in;
         const Program c = g.program({s[0], s[1]});
         const auto b = g.effect_on(g.subset(g.names));
         in.premises.push_back(g.premise(c, b, g.mode(), g.coin(0.5)));
         const LabelSet ls = g.label_set({s[2]});
         const double p = g.uni(0.0, 1.0);
         const std::size_t d = ls.dim();
         in.w.channel = add(scale(p, SuperOperator::conjugation(ls, g.op_on({s[2]}, g.unitary(d)).matrix())),
                            scale(1.0 - p, SuperOperator::conjugation(ls, g.op_on({s[2]}, g.unitary(d)).matrix())));
         return in;
       }},
      {"R.El",
       [](Gen &g) {
         auto s = g.shuffled(g.names);
         auto in = one_premise(g, {s[0]});
         in.w.labels = g.label_set(g.subset({s[1], s[2]}));
         return in;
       }},
      {"R.Er",
       [](Gen &g) {
         auto s = g.shuffled(g.names);
         auto in = one_premise(g, {s[0]});
         in.w.labels = g.label_set(g.subset({s[1], s[2]}));
         return in;
       }},
      {"R.TI",
       [](Gen &g) {
         auto s = g.shuffled(g.names);
         Instance in;
         const Program c = g.program({s[0], s[1]});
         const auto b = g.effect_on(g.subset({s[0], s[1]}));
         auto p = g.premise(c, b, g.mode(), g.coin(0.5));
         in.w.a = p.pre;
         in.w.b = p.post;
         const LabelSet s1 = g.coin(0.5) ? g.label_set({s[2]}) : LabelSet{};
         const LabelSet s2 = g.coin(0.5) ? g.label_set({s[2]}) : LabelSet{};
         p.pre = tensor(p.pre, LabelledOperator::identity(s1));
         p.post = tensor(p.post, LabelledOperator::identity(s2));
         in.premises.push_back(p);
         return in;
       }},
      {"Frame.T",
       [](Gen &g) {
         auto s = g.shuffled(g.names);
         auto in = one_premise(g, {s[0], s[1]}, Mode::Total);
         in.w.r = g.op_on({s[2]}, g.positive(g.dim({s[2]}), g.uni(0.0, 3.0)));
         return in;
       }},
      {"Frame.P",
       [](Gen &g) {
         auto s = g.shuffled(g.names);
         auto in = one_premise(g, {s[0], s[1]}, Mode::Partial);
         // adversarial: R touches the identity
         in.w.r = g.op_on({s[2]}, g.positive(g.dim({s[2]}), g.coin(0.5) ? 1.0 : g.uni(0.0, 1.0)));
         return in;
       }},
      {"R.PC.T",
       [](Gen &g) {
         Instance in;
         const std::size_t n = 2 + g.pick(2);
         for (std::size_t i = 0; i < n; ++i) {
           const Program c = g.program({g.names[i]});
           in.premises.push_back(g.premise(c, g.effect_on({g.names[i]}), Mode::Total, g.coin(0.5)));
         }
         return in;
       }},
      {"R.PC.P",
       [](Gen &g) {
         Instance in;
         const std::size_t n = 2 + g.pick(2);
         for (std::size_t i = 0; i < n; ++i) {
           const Program c = g.program({g.names[i]});
           in.premises.push_back(g.premise(c, g.effect_on({g.names[i]}), Mode::Partial, g.coin(0.5)));
         }
         return in;
       }},
      {"Ax.UTP",
       [](Gen &g) {
         auto in = axiom(g);
         for (const auto &v : g.subset(g.names)) in.w.parts.push_back(g.unitary_prog({v}));
         in.w.a = g.effect_on(g.subset(g.names));
         return in;
       }},
      {"Ax.UTFP",
       [](Gen &g) {
         auto in = axiom(g);
         for (const auto &v : g.subset(g.names)) in.w.parts.push_back(g.unitary_prog({v}));
         in.w.a = g.effect_on(g.subset(g.names));
         return in;
       }},
      {"Ax.InP",
       [](Gen &g) {
         auto in = axiom(g);
         for (const auto &v : g.subset(g.names)) {
           in.w.parts.push_back(g.init_prog(v, g.coin(0.5)));
           in.w.items.push_back(g.effect_on({v}));
         }
         return in;
       }},
      {"Ax.InFP",
       [](Gen &g) {
         auto in = axiom(g);
         for (const auto &v : g.subset(g.names)) in.w.parts.push_back(g.init_prog(v, true));
         return in;
       }},
      {"R.Inner",
       [](Gen &g) {
         Instance in;
         const auto sv = g.shuffled(g.subset(g.names));
         // any state is sent to |v⟩: reset then scramble
         Program c = g.init_prog(sv[0], true);
         for (std::size_t i = 1; i < sv.size(); ++i) c = Program::seq(c, g.init_prog(sv[i], true));
         c = Program::seq(c, g.unitary_prog(sv));
         const auto v = evolve(c, LabelledOperator::identity(g.label_set(sv)), g.opts.semantics);
         const auto ed = hermitian_eig(scale(1.0 / v.trace().real(), v).matrix());
         const LabelledOperator vk(v.out_labels(), {}, ed.eigenvectors.column_at(ed.eigenvectors.cols() - 1));
         in.premises.push_back(make_state_judgment(LabelledOperator::scalar(1.0), c, vk, Mode::Total, true));
         in.w.u = g.ket_on(g.subset(sv), g.uni(0.0, 1.0));
         return in;
       }},
      {"Ax.UTF'",
       [](Gen &g) {
         auto in = axiom(g);
         const auto sv = g.subset(g.names);
         in.w.program = g.unitary_prog(g.shuffled(g.subset(sv)));
         in.w.v = g.ket_on(g.shuffled(sv), *in.w.saturated ? 1.0 : g.uni(0.0, 1.0));
         return in;
       }},
      {"Ax.InF'",
       [](Gen &g) {
         auto in = axiom(g);
         auto s = g.shuffled(g.names);
         in.w.program = g.init_prog(s[0], true);
         in.w.v = g.ket_on(g.subset({s[1], s[2]}), *in.w.saturated ? 1.0 : g.uni(0.0, 1.0));
         return in;
       }},
      {"Ax.UTFP'",
       [](Gen &g) {
         auto in = axiom(g);
         const auto sv = g.subset(g.names);
         for (const auto &v : g.subset(sv)) in.w.parts.push_back(g.unitary_prog({v}));
         in.w.v = g.ket_on(g.shuffled(sv), *in.w.saturated ? 1.0 : g.uni(0.0, 1.0));
         return in;
       }},
      {"Ax.InFP'",
       [](Gen &g) {
         auto in = axiom(g);
         for (const auto &v : g.subset(g.names)) in.w.parts.push_back(g.init_prog(v, true));
         return in;
       }},
  };
  return table;
}

std::string render(const LabelledOperator &op, const VarTable &vars) {
  return render_assertion(op, vars.namer());
}

struct TrialOutcome {
  bool skipped = false;
  Verdict verdict;
  bool saturated = false;
};

TrialOutcome run_trial(const std::string &rule, std::uint64_t seed, std::uint64_t trial, const CheckOptions &opts) {
  const auto &table = builders();
  auto it = table.find(rule);
  if (it == table.end()) throw Error(ErrorCode::UnknownRule, rule);
  Gen g(seed, rule, trial, opts);
  TrialOutcome out;
  Judgment concl;
  // loops too slow for the iteration cap are skipped like side-condition misses
  try {
    const Instance in = it->second(g);
    concl = apply_rule(rule, in.premises, in.w, opts);
    out.verdict = check_valid(concl, opts);
  } catch (const Error &e) {
    if (e.code() != ErrorCode::SideConditionViolated && e.code() != ErrorCode::NoConvergence) throw;
    out.skipped = true;
    return out;
  }
  out.saturated = concl.saturated;
  if (!out.verdict.valid) {
    json j;
    j["rule"] = rule;
    j["seed"] = seed;
    j["trial"] = trial;
    j["pre"] = render(concl.pre, g.vars);
    j["post"] = render(concl.post, g.vars);
    j["mode"] = std::string(mode_name(concl.mode));
    j["saturated"] = concl.saturated;
    j["program"] = print_declarations(g.vars) + pretty_print(concl.program, g.vars);
    j["slack"] = out.verdict.slack;
    j["residual"] = out.verdict.residual;
    throw Error(ErrorCode::CounterexampleFound, j.dump(2));
  }
  return out;
}

void record(FuzzStats &s, const TrialOutcome &o) {
  ++s.trials;
  if (o.skipped) {
    ++s.skipped;
    return;
  }
  ++s.passed;
  if (o.saturated) {
    s.max_residual = std::max(s.max_residual, o.verdict.residual);
  } else {
    s.min_slack = std::min(s.min_slack, o.verdict.slack);
  }
}

}  // namespace

FuzzStats soundness_fuzz(const std::string &rule, std::size_t trials, std::uint64_t seed, const CheckOptions &opts) {
  if (trials == 0) throw Error(ErrorCode::BadParam, "trials must be at least 1");
  FuzzStats s;
  s.rule = rule;
  s.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) record(s, run_trial(rule, seed, t, opts));
  if (std::isinf(s.min_slack)) s.min_slack = 0.0;
  return s;
}

FuzzStats replay_counterexample(const std::string &json_text, const CheckOptions &opts) {
  json j;
  try {
    j = json::parse(json_text, nullptr, true, true);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::BadParam, std::string("counterexample is not JSON: ") + e.what());
  }
  FuzzStats s;
  s.rule = j.at("rule").get<std::string>();
  record(s, run_trial(s.rule, j.at("seed").get<std::uint64_t>(), j.at("trial").get<std::uint64_t>(), opts));
  return s;
}

}  // namespace qwv
