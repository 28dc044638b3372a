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

#ifndef JCOP_SOUNDNESS_TRIAL_H_
#define JCOP_SOUNDNESS_TRIAL_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jcop/classtable/class_table.h"
#include "jcop/interp/interpreter.h"
#include "jcop/soundness/respects.h"
#include "jcop/typecheck/typecheck.h"

namespace jcop {

// Runs `main` one top-level statement at a time and checks conformance with
// Γ′ after each of them.
struct PreservationReport {
  struct Violation {
    std::size_t index = 0;
    ConformanceResult result;
  };
  std::size_t statements_run = 0;
  std::vector<Violation> violations;
  // Outcome of the last statement executed.
  Outcome outcome;

  bool holds() const { return violations.empty(); }
};

PreservationReport preservation_probe(const ClassTable& table,
                                      std::uint64_t fuel,
                                      const ConformanceOptions& options = {});

// Observes a run and checks every evaluated expression against its static
// type: int expressions yield integers, ref C expressions yield cells whose
// class lies below C.
class ExpressionTypingObserver : public ExecObserver {
 public:
  explicit ExpressionTypingObserver(const ClassTable& table,
                                    const ExprTypes& types)
      : table_(table), types_(types) {}

  void on_rule(std::string_view rule, const Stmt& stmt, const State& after,
               const std::vector<HeapChange>& delta) override;
  void on_expr(std::string_view rule, const Expr& expr,
               const Value& value) override;

  std::size_t checked() const { return checked_; }
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  const ClassTable& table_;
  const ExprTypes& types_;
  std::map<Addr, std::string> classes_;
  std::size_t checked_ = 0;
  std::vector<std::string> violations_;
};

// Counts statement and expression rule applications.
class CoverageObserver : public ExecObserver {
 public:
  void on_rule(std::string_view rule, const Stmt& stmt, const State& after,
               const std::vector<HeapChange>& delta) override;
  void on_expr(std::string_view rule, const Expr& expr,
               const Value& value) override;

  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }

 private:
  std::map<std::string, std::uint64_t> counts_;
};

struct TrialOptions {
  std::uint64_t seed = 0;
  std::uint64_t count = 1;
  std::uint64_t fuel = 100000;
  int budget = 12;
  // 0 picks the hardware concurrency.
  unsigned threads = 0;
  // Also run the preservation and expression-typing probes.
  bool probes = true;
  // Also derive one ill-typed mutant per program.
  bool mutants = false;
};

struct TrialStats {
  std::uint64_t seed = 0;
  std::uint64_t programs_generated = 0;
  std::uint64_t accepted = 0;
  std::uint64_t final_count = 0;
  std::uint64_t abort_count = 0;
  std::uint64_t diverged_count = 0;
  std::map<std::string, std::uint64_t> rule_coverage;

  std::uint64_t probed_statements = 0;
  std::uint64_t preservation_violations = 0;
  std::uint64_t checked_expressions = 0;
  std::uint64_t expression_typing_violations = 0;

  std::uint64_t mutants_generated = 0;
  std::uint64_t mutants_rejected = 0;
  std::uint64_t mutants_accepted = 0;
  std::uint64_t mutant_aborts = 0;

  // One line per rejected program, abort or probe violation, by index.
  std::vector<std::string> failures;

  bool passed() const {
    return accepted == programs_generated && abort_count == 0 &&
           preservation_violations == 0 && expression_typing_violations == 0;
  }
};

// Seed of the `index`-th program of a trial.
std::uint64_t program_seed(std::uint64_t trial_seed, std::uint64_t index);

// Generates, checks and runs `count` programs. Programs are independent and
// may be spread over threads; the merged result does not depend on the
// thread count.
TrialStats soundness_trial(const TrialOptions& options);

// Single-line JSON object.
std::string to_json(const TrialStats& stats);
std::string to_human(const TrialStats& stats);

}  // namespace jcop

#endif  // JCOP_SOUNDNESS_TRIAL_H_
