/*
 * Copyright 2026 The jcop Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "jcop/soundness/trial.h"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "jcop/soundness/generator.h"
#include "jcop/syntax/parser.h"

namespace jcop {

PreservationReport preservation_probe(const ClassTable& table,
                                      std::uint64_t fuel,
                                      const ConformanceOptions& options) {
  PreservationReport report;
  Context gamma = without_call_bindings(build_context(table));
  State state;
  std::uint64_t used = 0;
  std::vector<StmtPtr> stmts = flatten_seq(table.program().main_body);
  report.outcome = Outcome{Final{state}, 0};
  for (std::size_t i = 0; i < stmts.size(); ++i) {
    ExecOptions opts;
    opts.fuel = fuel - used;
    Outcome step = exec_stmt(stmts[i], state, table, opts);
    used += step.fuel_used;
    step.fuel_used = used;
    report.outcome = step;
    if (!step.is_final()) break;
    ++report.statements_run;
    state = step.state();
    ConformanceResult r = respects(state, gamma, table, options);
    if (!r.holds) report.violations.push_back({i, r});
  }
  return report;
}

void ExpressionTypingObserver::on_rule(std::string_view /*rule*/,
                                       const Stmt& /*stmt*/,
                                       const State& /*after*/,
                                       const std::vector<HeapChange>& delta) {
  for (const HeapChange& c : delta) {
    if (c.field.empty()) classes_[c.addr] = c.allocated_class;
  }
}

void ExpressionTypingObserver::on_expr(std::string_view /*rule*/,
                                       const Expr& expr, const Value& value) {
  auto it = types_.find(&expr);
  if (it == types_.end()) return;
  ++checked_;
  const Type& t = it->second;
  bool ok = true;
  if (t.is_int()) {
    ok = is_int(value);
  } else if (t.is_ref_to_class()) {
    const Addr* a = std::get_if<Addr>(&value);
    auto cls = a ? classes_.find(*a) : classes_.end();
    ok = cls != classes_.end() &&
         table_.is_subclass(cls->second, t.referenced_class());
  }
  if (!ok) {
    // Non-owning alias; the printer only reads the node.
    ExprPtr view(ExprPtr(), &expr);
    violations_.push_back(pretty_print(view) + " of type " + t.to_string() +
                          " evaluated to " + to_string(value));
  }
}

void CoverageObserver::on_rule(std::string_view rule, const Stmt& /*stmt*/,
                               const State& /*after*/,
                               const std::vector<HeapChange>& /*delta*/) {
  ++counts_[std::string(rule)];
}

void CoverageObserver::on_expr(std::string_view rule, const Expr& /*expr*/,
                               const Value& /*value*/) {
  ++counts_[std::string(rule)];
}

namespace {

class Fanout : public ExecObserver {
 public:
  explicit Fanout(std::vector<ExecObserver*> targets)
      : targets_(std::move(targets)) {}

  void on_rule(std::string_view rule, const Stmt& stmt, const State& after,
               const std::vector<HeapChange>& delta) override {
    for (ExecObserver* t : targets_) t->on_rule(rule, stmt, after, delta);
  }
  void on_expr(std::string_view rule, const Expr& expr,
               const Value& value) override {
    for (ExecObserver* t : targets_) t->on_expr(rule, expr, value);
  }

 private:
  std::vector<ExecObserver*> targets_;
};

// Per-program result, merged in index order.
struct ProgramResult {
  bool accepted = false;
  int outcome = 0;  // 0 final, 1 abort, 2 diverged
  std::map<std::string, std::uint64_t> coverage;
  std::uint64_t probed_statements = 0;
  std::uint64_t preservation_violations = 0;
  std::uint64_t checked_expressions = 0;
  std::uint64_t typing_violations = 0;
  bool mutant = false;
  bool mutant_rejected = false;
  bool mutant_aborted = false;
  std::vector<std::string> failures;
};

void run_mutant(const Program& program, std::uint64_t seed,
                const TrialOptions& options, ProgramResult& r) {
  Mutant m = mutate_program(program, seed);
  if (m.kind == MutationKind::kNone) return;
  r.mutant = true;
  try {
    ClassTable table = ClassTable::build(m.program);
    r.mutant_rejected = !check_program(table).ok();
    ExecOptions opts;
    opts.fuel = options.fuel;
    r.mutant_aborted = run_program(table, opts).is_abort();
  } catch (const BuildError&) {
    r.mutant_rejected = true;
  }
}

ProgramResult run_one(const TrialOptions& options, std::uint64_t index) {
  ProgramResult r;
  std::uint64_t seed = program_seed(options.seed, index);
  std::string tag = "program " + std::to_string(index) + " (seed " +
                    std::to_string(seed) + "): ";
  Program program = generate_program(seed, options.budget);
  if (options.mutants) run_mutant(program, seed + 1, options, r);

  std::optional<ClassTable> table;
  try {
    table.emplace(ClassTable::build(program));
  } catch (const BuildError& e) {
    r.failures.push_back(tag + "build error: " + e.what());
    return r;
  }
  ExprTypes types;
  TypeReport report = check_program(*table, &types);
  if (!report.ok()) {
    r.failures.push_back(tag + "rejected: " +
                         render_diagnostic(report.diagnostics.front(), "gen"));
    return r;
  }
  r.accepted = true;

  CoverageObserver coverage;
  ExpressionTypingObserver typing(*table, types);
  std::vector<ExecObserver*> observers = {&coverage};
  if (options.probes) observers.push_back(&typing);
  Fanout fanout(observers);
  ExecOptions opts;
  opts.fuel = options.fuel;
  opts.observer = &fanout;
  Outcome outcome = run_program(*table, opts);
  if (outcome.is_final()) {
    r.outcome = 0;
  } else if (outcome.is_abort()) {
    r.outcome = 1;
    r.failures.push_back(tag + "abort [" + outcome.abort().rule + "] " +
                         outcome.abort().reason);
  } else {
    r.outcome = 2;
  }
  r.coverage = coverage.counts();

  if (options.probes) {
    r.checked_expressions = typing.checked();
    r.typing_violations = typing.violations().size();
    for (const std::string& v : typing.violations()) {
      r.failures.push_back(tag + "expression typing: " + v);
    }
    PreservationReport pres = preservation_probe(*table, options.fuel);
    r.probed_statements = pres.statements_run;
    r.preservation_violations = pres.violations.size();
    for (const auto& v : pres.violations) {
      r.failures.push_back(tag + "conformance broken after statement " +
                           std::to_string(v.index) + ": " + v.result.clause +
                           " at " + v.result.witness);
    }
  }
  return r;
}

}  // namespace

std::uint64_t program_seed(std::uint64_t trial_seed, std::uint64_t index) {
  // splitmix64 over the pair.
  std::uint64_t z = trial_seed * 0x9E3779B97F4A7C15ULL + index + 1;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TrialStats soundness_trial(const TrialOptions& options) {
  std::vector<ProgramResult> results(options.count);
  unsigned threads = options.threads ? options.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, options.count)));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i = next++; i < options.count; i = next++) {
      results[i] = run_one(options, i);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  TrialStats stats;
  stats.seed = options.seed;
  stats.programs_generated = options.count;
  for (const ProgramResult& r : results) {
    if (r.accepted) {
      ++stats.accepted;
      if (r.outcome == 0) ++stats.final_count;
      if (r.outcome == 1) ++stats.abort_count;
      if (r.outcome == 2) ++stats.diverged_count;
    }
    for (const auto& [rule, n] : r.coverage) stats.rule_coverage[rule] += n;
    stats.probed_statements += r.probed_statements;
    stats.preservation_violations += r.preservation_violations;
    stats.checked_expressions += r.checked_expressions;
    stats.expression_typing_violations += r.typing_violations;
    if (r.mutant) {
      ++stats.mutants_generated;
      if (r.mutant_rejected) {
        ++stats.mutants_rejected;
      } else {
        ++stats.mutants_accepted;
      }
      if (r.mutant_aborted) ++stats.mutant_aborts;
    }
    stats.failures.insert(stats.failures.end(), r.failures.begin(),
                          r.failures.end());
  }
  return stats;
}

std::string to_json(const TrialStats& s) {
  nlohmann::json j = {
      {"seed", s.seed},
      {"programs_generated", s.programs_generated},
      {"accepted", s.accepted},
      {"final_count", s.final_count},
      {"abort_count", s.abort_count},
      {"diverged_count", s.diverged_count},
      {"rule_coverage", s.rule_coverage},
      {"probed_statements", s.probed_statements},
      {"preservation_violations", s.preservation_violations},
      {"checked_expressions", s.checked_expressions},
      {"expression_typing_violations", s.expression_typing_violations},
      {"mutants_generated", s.mutants_generated},
      {"mutants_rejected", s.mutants_rejected},
      {"mutants_accepted", s.mutants_accepted},
      {"mutant_aborts", s.mutant_aborts},
      {"failures", s.failures},
  };
  return j.dump();
}

std::string to_human(const TrialStats& s) {
  std::ostringstream os;
  os << "seed " << s.seed << ": " << s.programs_generated << " programs, "
     << s.accepted << " accepted\n"
     << "  final " << s.final_count << ", abort " << s.abort_count
     << ", diverged " << s.diverged_count << "\n"
     << "  preservation: " << s.probed_statements << " statements probed, "
     << s.preservation_violations << " violations\n"
     << "  expression typing: " << s.checked_expressions << " checked, "
     << s.expression_typing_violations << " violations\n";
  if (s.mutants_generated) {
    os << "  mutants: " << s.mutants_generated << " generated, "
       << s.mutants_rejected << " rejected, " << s.mutant_aborts
       << " abort when run unchecked\n";
  }
  os << "  rule coverage:\n";
  for (const auto& [rule, n] : s.rule_coverage) {
    os << "    " << rule << " " << n << "\n";
  }
  for (const std::string& f : s.failures) os << "  " << f << "\n";
  return os.str();
}

}  // namespace jcop
