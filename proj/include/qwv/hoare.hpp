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

// Quantum Hoare triples: validity via weakest (liberal) preconditions, and a
// checker for individual proof-rule applications.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwv/dirac.hpp"
#include "qwv/qwhile.hpp"
#include "qwv/semantics.hpp"

namespace qwv {

enum class Mode { Partial, Total };

std::string_view mode_name(Mode m);

struct Judgment {
  LabelledOperator pre;
  Program program = Program::skip();
  LabelledOperator post;
  Mode mode = Mode::Total;
  bool saturated = false;
  // state form {|u⟩} C {|v⟩}: pre = uu†, post = vv†
  std::optional<LabelledOperator> pre_ket;
  std::optional<LabelledOperator> post_ket;
};

Judgment make_judgment(LabelledOperator pre, Program c, LabelledOperator post, Mode mode, bool saturated);
Judgment make_state_judgment(LabelledOperator u, Program c, LabelledOperator v, Mode mode, bool saturated);

struct CheckOptions {
  SemanticsOptions semantics;
  double eq_tol = 1e-9;
  double psd_tol = 1e-9;
  double saturation_tol = 1e-8;
};

struct Verdict {
  bool valid = false;
  /// Minimum eigenvalue of wp − cl(pre) (wlp for partial correctness).
  double slack = 0.0;
  /// ‖wp − cl(pre)‖_F; the deciding quantity for saturated triples.
  double residual = 0.0;
  LabelSet domain;
  std::string diagnostics;
};

/// wp over footprint(c) ∪ labels(b), computed in the Heisenberg picture.
LabelledOperator wp(const Program &c, const LabelledOperator &b, const CheckOptions &opts = {});
LabelledOperator wlp(const Program &c, const LabelledOperator &b, const CheckOptions &opts = {});
/// Same, over an explicit domain containing footprint(c) ∪ labels(b).
LabelledOperator wp_on(const Program &c, const LabelledOperator &b, const LabelSet &domain, const CheckOptions &opts = {});
LabelledOperator wlp_on(const Program &c, const LabelledOperator &b, const LabelSet &domain, const CheckOptions &opts = {});

Verdict check_valid(const Judgment &j, const CheckOptions &opts = {});
/// Validity of {uu†} c {vv†}; throws NotNormalized for a saturated triple
/// whose kets are not unit vectors.
Verdict check_state_triple(const LabelledOperator &u, const Program &c, const LabelledOperator &v, Mode mode,
                           bool saturated, const CheckOptions &opts = {});

// ---------------------------------------------------------------------------
// Rule application

/// Side data a rule needs beyond its premises. Unused fields are ignored.
struct RuleWitness {
  std::optional<LabelledOperator> a;      // main predicate / ket
  std::optional<LabelledOperator> b;      // second predicate
  std::optional<LabelledOperator> r;      // frame, invariant, or R of a loop
  std::optional<LabelledOperator> u;      // ket for R.Inner and primed rules
  std::optional<LabelledOperator> v;
  std::optional<Program> program;         // the statement the rule talks about
  std::vector<Program> parts;             // the components of a for loop
  std::vector<LabelledOperator> items;    // per-component predicates
  std::vector<double> lambdas;
  LabelSet labels;                        // S of R.El/R.Er, S1 of R.TI
  LabelSet labels2;                       // S2 of R.TI
  std::optional<SuperOperator> channel;   // R.SO
  std::optional<Mode> mode;               // axioms valid in both modes
  std::optional<bool> saturated;
};

const std::vector<std::string> &rule_ids();

/// Returns the conclusion of `rule` after checking its side conditions.
/// Throws SideConditionViolated or UnknownRule.
Judgment apply_rule(const std::string &rule, const std::vector<Judgment> &premises, const RuleWitness &w,
                    const CheckOptions &opts = {});

// ---------------------------------------------------------------------------
// Soundness harness

struct FuzzStats {
  std::string rule;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;       // instances whose side conditions failed
  double min_slack = 0.0;        // smallest slack among non-saturated conclusions
  double max_residual = 0.0;     // largest residual among saturated conclusions
};

/// Random instances of `rule`; throws CounterexampleFound with a JSON
/// description when a derived conclusion fails check_valid.
FuzzStats soundness_fuzz(const std::string &rule, std::size_t trials, std::uint64_t seed,
                         const CheckOptions &opts = {});
/// Re-runs one trial described by a counterexample file.
FuzzStats replay_counterexample(const std::string &json_text, const CheckOptions &opts = {});

// ---------------------------------------------------------------------------
// Proof outlines

struct OutlineStepResult {
  std::size_t index = 0;
  std::string rule;
  bool ok = false;
  std::string message;
};

struct OutlineReport {
  bool ok = true;
  std::vector<OutlineStepResult> steps;
};

/// Checks a JSON outline against a parsed program. Every step is reported;
/// a step citing a failed premise fails too. With `throw_on_failure` the
/// first failure raises StepFailed instead.
OutlineReport check_outline(const std::string &json_text, const ParsedProgram &program,
                            const CheckOptions &opts = {}, bool throw_on_failure = false);

}  // namespace qwv
