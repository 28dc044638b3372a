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

#include <string>

#include "doctest.h"
#include "jcop/soundness/generator.h"
#include "jcop/soundness/respects.h"
#include "jcop/soundness/trial.h"
#include "jcop/syntax/parser.h"
#include "support.h"

namespace jcop {
namespace {

using testing::corpus_files;
using testing::read_file;
using testing::table_of;

const char* const kCube = R"(
class Cube {
  int length, width, height;
  modify(int p){ this.length := 4; return(this.length); }
  layer Second_dim { modify(int p){ this.width := 5; return(this.width); } }
  layer Third_dim { modify(int p){ this.height := 6; return(this.height); } }
}
main(){ Cube o; int r; o := new Cube; r := o.modify(0); r := with Second_dim o.modify(0); }
)";

const char* const kTypes = R"(
class A { int x; A next; }
class B inherits A { }
class C { }
main(){ A a; int n; }
)";

struct Setup {
  ClassTable table = table_of(kTypes);
  Context gamma = build_context(table);
  State state;

  Setup() {
    state.heap[Addr{0}] = ObjectCell{"A", 0, {{"x", 1}, {"next", Addr{1}}}};
    state.heap[Addr{1}] = ObjectCell{"B", 1, {{"x", 2}, {"next", Addr{0}}}};
    state.heap[Addr{2}] = ObjectCell{"C", 2, {}};
    state.stack["a"] = Addr{1};
    state.stack["n"] = std::int64_t{7};
  }

  ConformanceResult check(const ConformanceOptions& o = {}) const {
    return respects(state, gamma, table, o);
  }
};

TEST_SUITE("soundness") {

TEST_CASE("respects: the empty state conforms to any context") {
  Setup s;
  CHECK(respects(State{}, s.gamma, s.table).holds);
  CHECK(respects(State{}, Context{}, s.table).holds);
}

TEST_CASE("respects: a well-formed state conforms") {
  Setup s;
  ConformanceResult r = s.check();
  CHECK(r.holds);
  CHECK(r.clause.empty());
}

TEST_CASE("respects: each clause has a counterexample") {
  SUBCASE("active layer outside the layer set") {
    Setup s;
    s.state.active = ActiveLayers({"Ghost"});
    ConformanceResult r = s.check();
    CHECK(r.clause == clause::kActiveLayers);
    CHECK(r.witness == "Ghost");
    s.gamma.layers.insert("Ghost");
    CHECK(s.check().holds);
  }
  SUBCASE("int local holding an address or bottom") {
    Setup s;
    s.state.stack["n"] = Addr{0};
    CHECK(s.check().clause == clause::kIntLocal);
    s.state.stack["n"] = Bottom{"test"};
    CHECK(s.check().clause == clause::kIntLocal);
    CHECK(s.check().witness == "n");
  }
  SUBCASE("ref local holding an integer, a dangling address or an unrelated class") {
    Setup s;
    s.state.stack["a"] = std::int64_t{3};
    CHECK(s.check().clause == clause::kRefLocal);
    s.state.stack["a"] = Addr{9};
    CHECK(s.check().clause == clause::kRefLocal);
    s.state.stack["a"] = Addr{2};
    CHECK(s.check().clause == clause::kRefLocal);
    CHECK(s.check().witness == "a");
  }
  SUBCASE("int field holding an address") {
    Setup s;
    s.state.heap[Addr{1}].fields["x"] = Addr{0};
    CHECK(s.check().clause == clause::kIntField);
    CHECK(s.check().witness == "#1.x");
  }
  SUBCASE("ref field holding an unrelated class") {
    Setup s;
    s.state.heap[Addr{0}].fields["next"] = Addr{2};
    CHECK(s.check().clause == clause::kRefField);
    CHECK(s.check().witness == "#0.next");
  }
}

TEST_CASE("respects: bottom fields and unbound locals") {
  Setup s;
  s.state.heap[Addr{0}].fields["x"] = Bottom{"uninitialized"};
  CHECK(s.check().holds);
  ConformanceOptions strict;
  strict.bottom_fields_exempt = false;
  CHECK(s.check(strict).clause == clause::kIntField);
  s.state.stack.erase("a");
  s.state.stack.erase("n");
  CHECK(s.check().holds);
}

TEST_CASE("respects: exact class toggle") {
  Setup s;
  CHECK(s.check().holds);
  ConformanceOptions exact;
  exact.exact_class = true;
  ConformanceResult r = s.check(exact);
  CHECK(r.clause == clause::kRefLocal);
  CHECK(r.witness == "a");
  s.state.stack["a"] = Addr{0};
  CHECK(s.check(exact).clause == clause::kRefField);
}

TEST_CASE("respects: the cube final state conforms") {
  ClassTable t = table_of(kCube);
  Outcome o = run_program(t);
  REQUIRE(o.is_final());
  Context gamma = without_call_bindings(build_context(t));
  CHECK(respects(o.state(), gamma, t).holds);
  // The final state still binds `this` and `p`; Γ′ leaves them out.
  CHECK(o.state().stack.count("p") == 1);
  CHECK(gamma.local("p") == nullptr);
  CHECK(gamma.local("this") == nullptr);
  CHECK(gamma.local("o") != nullptr);
}

TEST_CASE("preservation probe: cube, empty main and the good corpus") {
  PreservationReport cube = preservation_probe(table_of(kCube), 100000);
  CHECK(cube.holds());
  CHECK(cube.statements_run == 3);
  CHECK(cube.outcome.is_final());

  PreservationReport empty = preservation_probe(table_of("main(){}"), 100000);
  CHECK(empty.holds());
  CHECK(empty.statements_run == 0);
  CHECK(empty.outcome.is_final());

  for (const auto& path : corpus_files("good")) {
    CAPTURE(path.string());
    PreservationReport r = preservation_probe(table_of(read_file(path)), 100000);
    CHECK(r.holds());
    CHECK(r.outcome.is_final());
  }
}

TEST_CASE("preservation probe reports the offending statement") {
  // Well formed but the class clause is checked exactly.
  const char* src = "class A { int x; } class B inherits A { } "
                    "main(){ A a; a := new B; a.x := 1; }";
  ConformanceOptions exact;
  exact.exact_class = true;
  PreservationReport r = preservation_probe(table_of(src), 1000, exact);
  REQUIRE(r.violations.size() == 2);
  CHECK(r.violations[0].index == 0);
  CHECK(r.violations[0].result.clause == clause::kRefLocal);
  CHECK(preservation_probe(table_of(src), 1000).holds());
}

TEST_CASE("generator: small budgets and determinism") {
  Program tiny = generate_program(5, 1);
  CHECK(tiny.classes.empty());
  CHECK(flatten_seq(tiny.main_body).empty());
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CHECK(pretty_print(generate_program(seed, 12)) ==
          pretty_print(generate_program(seed, 12)));
  }
  CHECK(pretty_print(generate_program(1, 12)) !=
        pretty_print(generate_program(2, 12)));
}

TEST_CASE("generator: every generated program is accepted") {
  std::uint64_t rejected = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    Program p = generate_program(program_seed(77, seed), 2 + seed % 20);
    TypeReport r = check_program(ClassTable::build(p));
    if (!r.ok()) {
      ++rejected;
      MESSAGE("seed " << seed << ": " << r.diagnostics.front().message);
    }
  }
  CHECK(rejected == 0);
}

TEST_CASE("generator: mutants are rejected by the checker") {
  int mutated = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Mutant m = mutate_program(generate_program(seed, 12), seed);
    if (m.kind == MutationKind::kNone) continue;
    ++mutated;
    CAPTURE(to_string(m.kind));
    CHECK_FALSE(check_program(ClassTable::build(m.program)).ok());
  }
  CHECK(mutated > 400);
  CHECK(std::string(to_string(MutationKind::kDowncast)) != "");
}

TEST_CASE("trial: a single program") {
  TrialOptions o;
  o.seed = 3;
  o.count = 1;
  TrialStats s = soundness_trial(o);
  CHECK(s.programs_generated == 1);
  CHECK(s.accepted == 1);
  CHECK(s.final_count == 1);
  CHECK(s.passed());
}

TEST_CASE("trial: outcome counts add up and do not depend on threads") {
  TrialOptions o;
  o.seed = 42;
  o.count = 300;
  o.threads = 1;
  TrialStats one = soundness_trial(o);
  o.threads = 4;
  TrialStats four = soundness_trial(o);
  CHECK(one.accepted == one.final_count + one.abort_count + one.diverged_count);
  CHECK(to_json(one) == to_json(four));
  CHECK(to_human(one) == to_human(four));
  CHECK(one.passed());
  CHECK(one.failures.empty());
  CHECK(one.checked_expressions > 0);
  CHECK(one.probed_statements > 0);
}

TEST_CASE("trial: generated programs exercise every statement rule") {
  TrialOptions o;
  o.seed = 42;
  o.count = 1000;
  TrialStats s = soundness_trial(o);
  for (std::string rule :
       {":=_e^s", ":=_{o.f}^s", ":=_{l.o.f}^s", "sup^s", "pro^s", "new^s",
        "seq^s", "if^s", "while_1^s", "while_2^s"}) {
    CAPTURE(rule);
    CHECK(s.rule_coverage[rule] > 0);
  }
  for (std::string rule : {"n^s", "this^s", "o^s", "iop^s", "cast_2^s", "inst_1^s"}) {
    CAPTURE(rule);
    CHECK(s.rule_coverage[rule] > 0);
  }
}

TEST_CASE("trial: mutants are generated, rejected and mostly abort") {
  TrialOptions o;
  o.seed = 9;
  o.count = 200;
  o.mutants = true;
  TrialStats s = soundness_trial(o);
  CHECK(s.mutants_generated > 150);
  CHECK(s.mutants_rejected == s.mutants_generated);
  CHECK(s.mutants_accepted == 0);
  CHECK(s.mutant_aborts > 0);
  CHECK(s.passed());
}

TEST_CASE("trial: small fuel turns runs into divergence, not failure") {
  TrialOptions o;
  o.seed = 42;
  o.count = 100;
  o.fuel = 5;
  TrialStats s = soundness_trial(o);
  CHECK(s.diverged_count > 0);
  CHECK(s.abort_count == 0);
  CHECK(s.accepted == s.final_count + s.diverged_count);
}

}  // TEST_SUITE

}  // namespace
}  // namespace jcop
