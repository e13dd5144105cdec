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

#include <json.hpp>

#include "qwv/error.hpp"
#include "qwv/hoare.hpp"

namespace qwv {

namespace {

using json = nlohmann::json;

struct StepError {
  std::string message;
};

void flatten(const Program &p, std::vector<Program> &out) {
  if (p.kind() == Program::Kind::Seq) {
    flatten(p.first(), out);
    flatten(p.second(), out);
  } else if (p.kind() != Program::Kind::Skip) {
    out.push_back(p);
  }
}

bool same_program(const Program &a, const Program &b, double tol) {
  std::vector<Program> x, y;
  flatten(a, x);
  flatten(b, y);
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!structurally_equal(x[i], y[i], tol)) return false;
  return true;
}

class StepReader {
 public:
  StepReader(const ParsedProgram &prog, const CheckOptions &opts) : prog_(prog), opts_(opts) {}

  LabelledOperator assertion(const json &j) const {
    if (!j.is_string()) throw StepError{"assertion must be a string"};
    return parse_assertion(j.get<std::string>(), prog_.vars.resolver());
  }

  Program program(const json &ref) const {
    if (ref.is_number_integer()) return statement(ref.get<std::size_t>());
    if (!ref.is_string()) throw StepError{"bad program reference"};
    const std::string s = ref.get<std::string>();
    if (s == "all") return prog_.program;
    const auto dots = s.find("..");
    if (dots == std::string::npos) return statement(to_index(s));
    const std::size_t lo = to_index(s.substr(0, dots));
    const std::size_t hi = to_index(s.substr(dots + 2));
    if (lo >= hi || hi > prog_.statements.size()) throw StepError{"empty or out-of-range statement range " + s};
    return desugar_for(std::vector<Program>(prog_.statements.begin() + lo, prog_.statements.begin() + hi));
  }

  std::vector<Program> parts(const json &ref) const {
    std::vector<Program> out;
    if (ref.is_array()) {
      for (const auto &r : ref) out.push_back(program(r));
    } else {
      flatten(program(ref), out);
    }
    return out;
  }

  LabelSet labels(const json &j) const {
    std::vector<Label> out;
    for (const auto &r : j) {
      const auto ls = prog_.vars.resolve(r.get<std::string>());
      out.insert(out.end(), ls.begin(), ls.end());
    }
    return LabelSet(out);
  }

  static Mode mode(const json &j) {
    const std::string m = j.get<std::string>();
    if (m == "total") return Mode::Total;
    if (m == "partial") return Mode::Partial;
    throw StepError{"unknown mode " + m};
  }

  RuleWitness witness(const json &w) const {
    RuleWitness out;
    if (w.contains("a")) out.a = assertion(w["a"]);
    if (w.contains("b")) out.b = assertion(w["b"]);
    if (w.contains("r")) out.r = assertion(w["r"]);
    if (w.contains("u")) out.u = assertion(w["u"]);
    if (w.contains("v")) out.v = assertion(w["v"]);
    if (w.contains("program")) out.program = program(w["program"]);
    if (w.contains("parts")) out.parts = parts(w["parts"]);
    if (w.contains("items"))
      for (const auto &i : w["items"]) out.items.push_back(assertion(i));
    if (w.contains("lambdas")) out.lambdas = w["lambdas"].get<std::vector<double>>();
    if (w.contains("labels")) out.labels = labels(w["labels"]);
    if (w.contains("labels2")) out.labels2 = labels(w["labels2"]);
    if (w.contains("mode")) out.mode = mode(w["mode"]);
    if (w.contains("saturated")) out.saturated = w["saturated"].get<bool>();
    return out;
  }

  bool same_pred(const LabelledOperator &a, const LabelledOperator &b) const {
    const LabelSet all = set_union(a.labels(), b.labels());
    const auto x = cyl_extend(a, all).matrix();
    const auto y = cyl_extend(b, all).matrix();
    return frobenius_distance(x, y) <= opts_.saturation_tol * std::max({1.0, x.frobenius_norm(), y.frobenius_norm()});
  }

 private:
  Program statement(std::size_t i) const {
    if (i >= prog_.statements.size()) throw StepError{"statement " + std::to_string(i) + " out of range"};
    return prog_.statements[i];
  }
  static std::size_t to_index(const std::string &s) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoul(s, &pos);
      if (pos != s.size()) throw StepError{"bad statement index " + s};
      return v;
    } catch (const std::logic_error &) {
      throw StepError{"bad statement index " + s};
    }
  }

  const ParsedProgram &prog_;
  const CheckOptions &opts_;
};

/// The judgment a conclusion object states, with missing fields taken from `base`.
Judgment claimed(const StepReader &rd, const json &c, const std::optional<Judgment> &base) {
  auto field = [&](const char *k) -> const json * { return c.contains(k) ? &c[k] : nullptr; };
  const bool state = c.value("state", false);
  Judgment j;
  if (base) j = *base;
  if (auto p = field("program")) j.program = rd.program(*p);
  if (auto m = field("mode")) j.mode = StepReader::mode(*m);
  if (auto s = field("saturated")) j.saturated = s->get<bool>();
  if (state) {
    if (auto p = field("pre")) j.pre_ket = rd.assertion(*p);
    if (auto p = field("post")) j.post_ket = rd.assertion(*p);
    if (!j.pre_ket || !j.post_ket) throw StepError{"state conclusion needs pre and post kets"};
    return make_state_judgment(*j.pre_ket, j.program, *j.post_ket, j.mode, j.saturated);
  }
  if (auto p = field("pre")) {
    j.pre = rd.assertion(*p);
    j.pre_ket.reset();
  }
  if (auto p = field("post")) {
    j.post = rd.assertion(*p);
    j.post_ket.reset();
  }
  if (!base && (!field("pre") || !field("post") || !field("program"))) {
    throw StepError{"conclusion needs pre, program and post"};
  }
  return make_judgment(j.pre, j.program, j.post, j.mode, j.saturated);
}

void match(const StepReader &rd, const Judgment &derived, const Judgment &claim, double tol) {
  if (!rd.same_pred(derived.pre, claim.pre)) throw StepError{"precondition differs from the derived one"};
  if (!rd.same_pred(derived.post, claim.post)) throw StepError{"postcondition differs from the derived one"};
  if (!same_program(derived.program, claim.program, tol)) throw StepError{"program differs from the derived one"};
  if (derived.mode != claim.mode) throw StepError{"mode differs from the derived one"};
  if (derived.saturated != claim.saturated) throw StepError{"saturation differs from the derived one"};
}

Judgment run_step(const StepReader &rd, const json &step, const std::vector<std::optional<Judgment>> &done,
                  const CheckOptions &opts) {
  const std::string rule = step.at("rule").get<std::string>();
  std::vector<Judgment> premises;
  for (const auto &i : step.value("premises", json::array())) {
    const auto k = i.get<std::size_t>();
    if (k >= done.size()) throw StepError{"premise " + std::to_string(k) + " is not an earlier step"};
    if (!done[k]) throw StepError{"premise " + std::to_string(k) + " failed"};
    premises.push_back(*done[k]);
  }
  const json concl = step.value("conclusion", json::object());
  if (rule == "semantic") {
    if (!premises.empty()) throw StepError{"semantic steps take no premises"};
    const Judgment j = claimed(rd, concl, std::nullopt);
    const Verdict v = check_valid(j, opts);
    if (!v.valid) throw StepError{"not valid: " + v.diagnostics};
    return j;
  }
  if (rule == "rewrite") {
    if (premises.size() != 1) throw StepError{"rewrite steps take one premise"};
    const Judgment j = claimed(rd, concl, premises[0]);
    match(rd, premises[0], j, opts.eq_tol);
    return j;
  }
  const RuleWitness w = rd.witness(step.value("witnesses", json::object()));
  const Judgment derived = apply_rule(rule, premises, w, opts);
  if (concl.empty()) return derived;
  const Judgment j = claimed(rd, concl, derived);
  match(rd, derived, j, opts.eq_tol);
  return j;
}

}  // namespace

OutlineReport check_outline(const std::string &json_text, const ParsedProgram &program, const CheckOptions &opts,
                            bool throw_on_failure) {
  json doc;
  try {
    doc = json::parse(json_text, nullptr, true, true);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::BadParam, std::string("outline is not JSON: ") + e.what());
  }
  const json steps = doc.is_object() ? doc.value("steps", json::array()) : doc;
  if (!steps.is_array()) throw Error(ErrorCode::BadParam, "outline must be a list of steps");

  const StepReader rd(program, opts);
  OutlineReport report;
  std::vector<std::optional<Judgment>> done;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    OutlineStepResult r;
    r.index = i;
    r.rule = steps[i].value("rule", std::string("?"));
    try {
      done.push_back(run_step(rd, steps[i], done, opts));
      r.ok = true;
    } catch (const StepError &e) {
      r.message = e.message;
    } catch (const json::exception &e) {
      r.message = std::string("malformed step: ") + e.what();
    } catch (const Error &e) {
      if (e.code() == ErrorCode::NoConvergence) throw;
      r.message = e.what();
    }
    if (!r.ok) {
      done.emplace_back();
      report.ok = false;
      if (throw_on_failure) {
        throw Error(ErrorCode::StepFailed, "step " + std::to_string(i) + " (" + r.rule + "): " + r.message);
      }
    }
    report.steps.push_back(std::move(r));
  }
  return report;
}

}  // namespace qwv
