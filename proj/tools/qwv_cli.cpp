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

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwv/cases.hpp"
#include "qwv/error.hpp"
#include "qwv/hoare.hpp"
#include "qwv/qwhile.hpp"
#include "qwv/semantics.hpp"

namespace {

using json = nlohmann::json;
using namespace qwv;

enum Exit { kValid = 0, kInvalid = 1, kParse = 2, kSemantic = 3, kNoConvergence = 4 };

struct Config {
  double eq_tol = 1e-9;
  double psd_tol = 1e-9;
  double while_tol = 1e-10;
  std::size_t while_kmax = 100000;
  std::size_t max_dim = 256;
  std::uint64_t seed = 20260101;
  std::size_t jobs = 0;
  bool json_out = false;
  std::string gates_file;

  CheckOptions check_options() const {
    CheckOptions o;
    o.eq_tol = eq_tol;
    o.psd_tol = psd_tol;
    o.semantics.while_tol = while_tol;
    o.semantics.while_kmax = while_kmax;
    o.semantics.max_dim = max_dim;
    return o;
  }
};

template <class T>
void env_override(const char *name, T &out) {
  const char *v = std::getenv(name);
  if (!v || !*v) return;
  std::istringstream in(v);
  T x{};
  if (in >> x) out = x;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadParam, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

GateRegistry load_gates(const Config &cfg) {
  GateRegistry reg;
  if (!cfg.gates_file.empty()) reg.load_json(read_file(cfg.gates_file));
  return reg;
}

ParsedProgram load_program(const std::string &path, const Config &cfg) {
  return parse_program(read_file(path), load_gates(cfg));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 1e-15 ? 0.0 : v);
  return buf;
}

json matrix_json(const ComplexMatrix &m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

void print_table(const ComplexMatrix &m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Scalar z = m(r, c);
      std::printf("%s%+.6f%+.6fi", c ? "  " : "  ", std::abs(z.real()) < 5e-13 ? 0.0 : z.real(),
                  std::abs(z.imag()) < 5e-13 ? 0.0 : z.imag());
    }
    std::printf("\n");
  }
}

json quality_json(const QualityReport &q) {
  return {{"cp", q.is_cp}, {"trace_nonincreasing", q.is_trace_nonincreasing},
          {"trace_preserving", q.is_trace_preserving}, {"choi_min_eig", q.choi_min_eig}};
}

// ---------------------------------------------------------------------------

int cmd_run(const Config &cfg, const std::string &file, const std::string &input) {
  const ParsedProgram pp = load_program(file, cfg);
  const CheckOptions opts = cfg.check_options();
  const LabelSet all = pp.vars.all_labels();
  check_dimension(all, opts.semantics.max_dim);
  LabelledOperator rho;
  if (input.empty()) {
    const auto k = LabelledOperator(all, {}, ComplexMatrix::basis_column(all.dim(), 0));
    rho = compose(k, k.adjoint());
  } else {
    LabelledOperator in = parse_assertion(input, pp.vars.resolver());
    if (in.is_ket()) in = compose(in, in.adjoint());
    if (!in.is_square()) throw Error(ErrorCode::NotSquare, "input must be a ket or a square operator");
    const LabelSet rest = set_difference(all, in.out_labels());
    const auto k = LabelledOperator(rest, {}, ComplexMatrix::basis_column(rest.dim(), 0));
    rho = tensor(in, compose(k, k.adjoint()));
  }
  const LabelledOperator out = evolve(pp.program, rho, opts.semantics);
  std::optional<QualityReport> q;
  const LabelSet fp = footprint(pp.program);
  if (fp.dim() <= opts.semantics.max_superop_dim) q = quality(denote(pp.program, opts.semantics), opts.psd_tol);

  if (cfg.json_out) {
    json j;
    j["labels"] = to_string(out.out_labels());
    j["state"] = render_assertion(out, pp.vars.namer());
    j["matrix"] = matrix_json(out.matrix());
    j["trace"] = out.trace().real();
    if (q) j["quality"] = quality_json(*q);
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("output state on %s (trace %s)\n", to_string(out.out_labels()).c_str(), fmt(out.trace().real()).c_str());
    print_table(out.matrix());
    if (q) {
      std::printf("quality: cp=%s trace_nonincreasing=%s trace_preserving=%s choi_min_eig=%s\n", q->is_cp ? "yes" : "no",
                  q->is_trace_nonincreasing ? "yes" : "no", q->is_trace_preserving ? "yes" : "no",
                  fmt(q->choi_min_eig).c_str());
    }
  }
  return kValid;
}

int cmd_check(const Config &cfg, const std::string &file, const std::string &spec_file) {
  const ParsedProgram pp = load_program(file, cfg);
  json spec;
  try {
    spec = json::parse(read_file(spec_file), nullptr, true, true);
  } catch (const json::exception &e) {
    throw SyntaxError(1, 1, std::string("spec file: ") + e.what());
  }
  const auto resolve = pp.vars.resolver();
  const auto pre = parse_assertion(spec.at("pre").get<std::string>(), resolve);
  const auto post = parse_assertion(spec.at("post").get<std::string>(), resolve);
  const std::string mode_s = spec.value("mode", std::string("total"));
  if (mode_s != "total" && mode_s != "partial") throw Error(ErrorCode::BadParam, "mode must be total or partial");
  const Mode mode = mode_s == "total" ? Mode::Total : Mode::Partial;
  const bool sat = spec.value("saturated", false);
  const CheckOptions opts = cfg.check_options();
  Verdict v;
  if (spec.value("state", false) || (pre.is_ket() && post.is_ket() && !pre.is_square())) {
    v = check_state_triple(pre, pp.program, post, mode, sat, opts);
  } else {
    v = check_valid(make_judgment(pre, pp.program, post, mode, sat), opts);
  }
  if (cfg.json_out) {
    json j{{"status", v.valid ? "Valid" : "Invalid"}, {"mode", mode_s},   {"saturated", sat},
           {"slack", v.slack},                        {"residual", v.residual}, {"domain", to_string(v.domain)},
           {"diagnostics", v.diagnostics}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%s (%s%s) slack=%s residual=%s\n", v.valid ? "Valid" : "Invalid", mode_s.c_str(),
                sat ? ", saturated" : "", fmt(v.slack).c_str(), fmt(v.residual).c_str());
    if (!v.diagnostics.empty()) std::printf("  %s\n", v.diagnostics.c_str());
  }
  return v.valid ? kValid : kInvalid;
}

int cmd_outline(const Config &cfg, const std::string &file, const std::string &outline_file) {
  const ParsedProgram pp = load_program(file, cfg);
  const OutlineReport rep = check_outline(read_file(outline_file), pp, cfg.check_options());
  if (cfg.json_out) {
    json steps = json::array();
    for (const auto &s : rep.steps) steps.push_back({{"index", s.index}, {"rule", s.rule}, {"ok", s.ok}, {"message", s.message}});
    std::cout << json{{"ok", rep.ok}, {"steps", steps}}.dump(2) << "\n";
  } else {
    for (const auto &s : rep.steps) {
      std::printf("step %2zu  %-10s %s%s%s\n", s.index, s.rule.c_str(), s.ok ? "ok" : "FAILED", s.ok ? "" : ": ",
                  s.message.c_str());
    }
    std::printf("%s (%zu steps)\n", rep.ok ? "outline checks" : "outline FAILED", rep.steps.size());
  }
  return rep.ok ? kValid : kInvalid;
}

// Runs `n` independent tasks on up to `jobs` threads.
template <class F>
void parallel_for(std::size_t n, std::size_t jobs, F &&f) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, n);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex mu;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto &th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::vector<std::size_t> parse_list(const std::string &s) {
  std::vector<std::size_t> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoul(item));
  }
  return out;
}

struct ExampleParams {
  std::string group = "2,2";
  std::string gens;
  std::size_t n = 0;
  double theta = 1.0 / 3.0;
  std::size_t r = 1;
  std::string marked;
};

cases::CaseStudy build_case(const std::string &name, const ExampleParams &p) {
  if (name == "hsp") {
    const AbelianGroup g(parse_list(p.group));
    std::vector<Element> gens;
    static const std::regex tuple_re(R"(\(([^)]*)\))");
    for (auto it = std::sregex_iterator(p.gens.begin(), p.gens.end(), tuple_re); it != std::sregex_iterator(); ++it) {
      const auto comps = parse_list((*it)[1].str());
      if (comps.size() != g.rank()) throw Error(ErrorCode::BadParam, "generator " + (*it)[0].str() + " has the wrong rank");
      std::vector<std::size_t> reduced;
      for (std::size_t i = 0; i < comps.size(); ++i) reduced.push_back(comps[i] % g.moduli()[i]);
      gens.push_back(g.encode(reduced));
    }
    return cases::hsp(generate(g, gens));
  }
  if (name == "grover") {
    const std::size_t n = p.n ? p.n : 4;
    const auto marked = p.marked.empty() ? std::vector<std::size_t>{n - 1} : parse_list(p.marked);
    return cases::grover(n, marked, p.r);
  }
  if (name == "qpe") return cases::qpe(p.theta, p.n ? p.n : 4);
  if (name == "qft") return cases::qft_circuit(p.n ? p.n : 3);
  if (name == "rev") return cases::rev_circuit(p.n ? p.n : 4);
  if (name == "para_hadamard") return cases::para_hadamard(p.n ? p.n : 3);
  if (name == "hlf" && p.n == 4) {
    // 2x2 grid
    return cases::hlf({{1, 1, 1, 0}, {1, 0, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 0}});
  }
  return cases::by_name(name);
}

int cmd_examples(const Config &cfg, std::vector<std::string> names, bool all, const ExampleParams &params) {
  if (all || names.empty()) names = cases::case_names();
  const CheckOptions opts = cfg.check_options();
  std::vector<cases::CaseResult> results(names.size());
  std::vector<std::string> extra(names.size());
  parallel_for(names.size(), cfg.jobs, [&](std::size_t i) {
    const cases::CaseStudy c = build_case(names[i], params);
    results[i] = cases::run_case(c, opts);
    if (c.name == "hsp") {
      const auto &vars = c.parsed.vars;
      const auto dist = cases::distribution(cases::simulate(c, opts.semantics), vars, {"x"});
      std::ostringstream s;
      const AbelianGroup g(parse_list(params.group));
      const Subgroup h = generate(g, [&] {
        std::vector<Element> es;
        for (std::size_t x = 0; x < g.order(); ++x)
          if (c.triples[1 + x].judgment.pre.scalar_value().real() > 0) es.push_back(x);
        return es;
      }());
      s << "    H-perp = {";
      for (std::size_t k = 0; k < h.order(); ++k) s << (k ? ", " : "") << g.element_to_string(h.elements()[k]);
      s << "}\n";
      for (std::size_t x = 0; x < dist.size(); ++x) {
        s << "    Pr(" << g.element_to_string(x) << ") = " << fmt(dist[x]) << "\n";
      }
      extra[i] = s.str();
    }
  });
  std::size_t passed = 0;
  json out = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto &r = results[i];
    passed += r.ok;
    if (cfg.json_out) {
      json triples = json::array();
      for (const auto &t : r.triples) {
        triples.push_back({{"name", t.name}, {"valid", t.verdict.valid}, {"slack", t.verdict.slack},
                           {"residual", t.verdict.residual}});
      }
      out.push_back({{"name", r.name}, {"params", r.params}, {"ok", r.ok}, {"error", r.error},
                     {"quality", quality_json(r.quality)}, {"triples", triples}});
      continue;
    }
    std::size_t valid = 0;
    for (const auto &t : r.triples) valid += t.verdict.valid;
    std::printf("%-14s %s  %zu/%zu triples valid  (%s)\n", r.name.c_str(), r.ok ? "pass" : "FAIL", valid,
                r.triples.size(), r.params.c_str());
    if (!r.error.empty()) std::printf("    error: %s\n", r.error.c_str());
    for (const auto &t : r.triples) {
      if (!t.verdict.valid) std::printf("    invalid: %s (%s)\n", t.name.c_str(), t.verdict.diagnostics.c_str());
    }
    if (!extra[i].empty()) std::printf("%s", extra[i].c_str());
  }
  if (cfg.json_out) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("%zu/%zu case studies pass\n", passed, results.size());
  }
  return passed == results.size() ? kValid : kInvalid;
}

int cmd_selftest(const Config &cfg, std::size_t trials, std::vector<std::string> rules, const std::string &dir,
                 const std::string &replay) {
  const CheckOptions opts = cfg.check_options();
  if (!replay.empty()) {
    try {
      const FuzzStats s = replay_counterexample(read_file(replay), opts);
      std::printf("%s: replay passes (the instance is no longer a counterexample)\n", s.rule.c_str());
      return kValid;
    } catch (const Error &e) {
      if (e.code() != ErrorCode::CounterexampleFound) throw;
      std::printf("counterexample reproduced:\n%s\n", e.what());
      return kInvalid;
    }
  }
  if (rules.empty()) rules = rule_ids();
  std::vector<FuzzStats> stats(rules.size());
  std::vector<std::string> failures(rules.size());
  parallel_for(rules.size(), cfg.jobs, [&](std::size_t i) {
    try {
      stats[i] = soundness_fuzz(rules[i], trials, cfg.seed, opts);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::CounterexampleFound) throw;
      stats[i].rule = rules[i];
      failures[i] = e.what();
    }
  });
  std::size_t bad = 0;
  json out = json::array();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto &s = stats[i];
    if (!failures[i].empty()) {
      ++bad;
      std::filesystem::create_directories(dir);
      std::string safe = rules[i];
      for (char &ch : safe)
        if (ch == '\'') ch = 'p';
      const auto path = std::filesystem::path(dir) / ("counterexample-" + safe + ".json");
      std::ofstream(path) << failures[i] << "\n";
      if (!cfg.json_out) std::printf("%-10s COUNTEREXAMPLE written to %s\n", rules[i].c_str(), path.string().c_str());
      out.push_back({{"rule", rules[i]}, {"counterexample", path.string()}});
      continue;
    }
    if (cfg.json_out) {
      out.push_back({{"rule", s.rule}, {"trials", s.trials}, {"passed", s.passed}, {"skipped", s.skipped},
                     {"min_slack", s.min_slack}, {"max_residual", s.max_residual}});
    } else {
      std::printf("%-10s %zu/%zu pass, %zu skipped, min slack %s, max residual %s\n", s.rule.c_str(), s.passed,
                  s.trials, s.skipped, fmt(s.min_slack).c_str(), fmt(s.max_residual).c_str());
    }
  }
  if (cfg.json_out) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("%zu counterexample(s) across %zu rules\n", bad, rules.size());
  }
  return bad == 0 ? kValid : kInvalid;
}

}  // namespace

int main(int argc, char **argv) {
  Config cfg;
  env_override("QWV_EQ_TOL", cfg.eq_tol);
  env_override("QWV_PSD_TOL", cfg.psd_tol);
  env_override("QWV_WHILE_TOL", cfg.while_tol);
  env_override("QWV_WHILE_KMAX", cfg.while_kmax);
  env_override("QWV_MAX_DIM", cfg.max_dim);
  env_override("QWV_SEED", cfg.seed);

  CLI::App app{"qwv: qwhile programs and quantum Hoare triples"};
  app.require_subcommand(1);
  std::optional<double> tol;
  app.add_option("--tol", tol, "equality and positivity tolerance")->check(CLI::PositiveNumber);
  app.add_option("--while-kmax", cfg.while_kmax, "iteration cap for while loops")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_flag("--json", cfg.json_out, "machine-readable output");
  app.add_option("--max-dim", cfg.max_dim, "largest footprint dimension")->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");
  app.add_option("--gates", cfg.gates_file, "sidecar JSON with custom gates and measurements");

  std::string file, input, spec, outline, replay, dir = "counterexamples";
  auto *run = app.add_subcommand("run", "simulate a program");
  run->add_option("program", file)->required();
  run->add_option("--input", input, "initial state (assertion syntax; default all zeros)");

  auto *check = app.add_subcommand("check", "check a Hoare triple");
  check->add_option("program", file)->required();
  check->add_option("spec", spec, "JSON with pre, post, mode, saturated")->required();

  auto *outl = app.add_subcommand("outline", "check a proof outline");
  outl->add_option("program", file)->required();
  outl->add_option("outline", outline)->required();

  std::vector<std::string> names;
  bool all = false;
  ExampleParams ep;
  auto *ex = app.add_subcommand("examples", "run the case studies");
  ex->add_option("names", names, "case studies (default all)");
  ex->add_flag("--all", all);
  ex->add_option("--G", ep.group, "group moduli for hsp, e.g. 2,2");
  ex->add_option("--H", ep.gens, "subgroup generators for hsp, e.g. \"(1,1)\"");
  ex->add_option("--n", ep.n, "size parameter");
  ex->add_option("--theta", ep.theta, "phase for qpe");
  ex->add_option("--r", ep.r, "iterations for grover");
  ex->add_option("--marked", ep.marked, "marked items for grover, e.g. 1,5");

  std::size_t trials = 100;
  std::vector<std::string> rules;
  auto *st = app.add_subcommand("rules-selftest", "randomized soundness test of the inference rules");
  st->add_option("--trials", trials)->check(CLI::PositiveNumber);
  st->add_option("--rule", rules, "restrict to these rule ids");
  st->add_option("--out", dir, "directory for counterexample files");
  st->add_option("--replay", replay, "re-run a saved counterexample");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }
  if (tol) cfg.eq_tol = cfg.psd_tol = *tol;

  try {
    if (*run) return cmd_run(cfg, file, input);
    if (*check) return cmd_check(cfg, file, spec);
    if (*outl) return cmd_outline(cfg, file, outline);
    if (*ex) return cmd_examples(cfg, names, all, ep);
    if (*st) return cmd_selftest(cfg, trials, rules, dir, replay);
  } catch (const SyntaxError &e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kParse;
  } catch (const Error &e) {
    std::fprintf(stderr, "%s\n", e.what());
    return e.code() == ErrorCode::NoConvergence ? kNoConvergence : kSemantic;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSemantic;
  }
  return kSemantic;
}
