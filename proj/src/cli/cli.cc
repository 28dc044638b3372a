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

#include "jcop/cli/cli.h"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "jcop/classtable/class_table.h"
#include "jcop/interp/interpreter.h"
#include "jcop/interp/render.h"
#include "jcop/soundness/trial.h"
#include "jcop/syntax/parser.h"
#include "jcop/typecheck/typecheck.h"

namespace jcop {

namespace {

using nlohmann::json;

struct Config {
  std::string command;
  std::string input;
  std::uint64_t fuel = 100000;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  int budget = 12;
  unsigned threads = 0;
  bool mutants = false;
  bool trace = false;
  OutputFormat format = OutputFormat::kHuman;
};

struct Loaded {
  Program program;
  std::optional<ClassTable> table;
};

class Reporter {
 public:
  Reporter(const Config& config, std::ostream& out, std::ostream& err)
      : config_(config), out_(out), err_(err) {}

  bool json() const { return config_.format == OutputFormat::kJsonLines; }

  void error(const std::string& kind, SourceSpan where,
             const std::string& message) {
    if (json()) {
      out_ << json::object({{"error", kind},
                            {"line", where.line},
                            {"column", where.column},
                            {"message", message}})
                  .dump()
           << "\n";
    } else {
      err_ << config_.input << ":" << where.line << ":" << where.column
           << ": " << kind << ": " << message << "\n";
    }
  }

 private:
  const Config& config_;
  std::ostream& out_;
  std::ostream& err_;
};

// Reads, parses and builds the class table. Returns an exit code on failure.
std::optional<int> load(const Config& config, Reporter& reporter,
                        std::ostream& err, Loaded& loaded) {
  std::ifstream in(config.input, std::ios::binary);
  if (!in) {
    err << "jcop: cannot read " << config.input << "\n";
    return exit_code::kUsage;
  }
  std::ostringstream text;
  text << in.rdbuf();
  try {
    loaded.program = parse_program(text.str());
  } catch (const ParseError& e) {
    std::string expected;
    for (const std::string& x : e.expected()) {
      expected += (expected.empty() ? "" : ", ") + x;
    }
    reporter.error("parse error", e.where(),
                   "expected " + expected + ", found " + e.found());
    return exit_code::kRejected;
  }
  try {
    loaded.table.emplace(ClassTable::build(loaded.program));
  } catch (const BuildError& e) {
    std::string what = e.what();
    // Drop the position prefix; it is reported separately.
    std::string prefix = e.where().to_string() + ": ";
    if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
    reporter.error("build error", e.where(), what);
    return exit_code::kRejected;
  }
  return std::nullopt;
}

int cmd_parse(const Config& config, std::ostream& out, std::ostream& err) {
  Reporter reporter(config, out, err);
  Loaded loaded;
  if (auto code = load(config, reporter, err, loaded)) return *code;
  if (reporter.json()) {
    out << json::object({{"status", "ok"}, {"ast", dump_ast(loaded.program)}})
               .dump()
        << "\n";
  } else {
    out << dump_ast(loaded.program);
  }
  return exit_code::kOk;
}

int cmd_check(const Config& config, std::ostream& out, std::ostream& err) {
  Reporter reporter(config, out, err);
  Loaded loaded;
  if (auto code = load(config, reporter, err, loaded)) return *code;
  TypeReport report = check_program(*loaded.table);
  if (reporter.json()) {
    for (const Diagnostic& d : report.diagnostics) {
      out << json::object({{"rule", d.rule},
                           {"kind", d.kind},
                           {"line", d.span.line},
                           {"column", d.span.column},
                           {"message", d.message}})
                 .dump()
          << "\n";
    }
    out << json::object({{"status", report.ok() ? "ok" : "rejected"},
                         {"diagnostics", report.diagnostics.size()}})
               .dump()
        << "\n";
  } else if (report.ok()) {
    out << "ok\n";
  } else {
    for (const Diagnostic& d : report.diagnostics) {
      out << render_diagnostic(d, config.input) << "\n";
    }
  }
  return report.ok() ? exit_code::kOk : exit_code::kRejected;
}

int cmd_run(const Config& config, std::ostream& out, std::ostream& err) {
  Reporter reporter(config, out, err);
  Loaded loaded;
  if (auto code = load(config, reporter, err, loaded)) return *code;
  TraceWriter trace(out);
  ExecOptions opts;
  opts.fuel = config.fuel;
  if (config.trace) opts.observer = &trace;
  Outcome outcome = run_program(*loaded.table, opts);
  out << render_outcome(outcome, config.format);
  if (outcome.is_abort()) return exit_code::kAbort;
  if (outcome.is_diverged()) return exit_code::kDiverged;
  return exit_code::kOk;
}

int cmd_fuzz(const Config& config, std::ostream& out) {
  TrialOptions opts;
  opts.seed = config.seed;
  opts.count = config.count;
  opts.fuel = config.fuel;
  opts.budget = config.budget;
  opts.threads = config.threads;
  opts.mutants = config.mutants;
  TrialStats stats = soundness_trial(opts);
  out << (config.format == OutputFormat::kJsonLines ? to_json(stats) + "\n"
                                                    : to_human(stats));
  if (stats.abort_count > 0) return exit_code::kAbort;
  return stats.passed() ? exit_code::kOk : exit_code::kRejected;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  Config config;
  CLI::App app{"Parser, checker and interpreter for the jcop language", "jcop"};
  app.require_subcommand(1);
  std::string format = "human";

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"human", "json-lines"}));
  };
  auto add_fuel = [&](CLI::App* sub) {
    sub->add_option("--fuel", config.fuel, "Maximum number of rule applications")
        ->check(CLI::PositiveNumber);
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("file", config.input, "Source file (.jcop)")->required();
  };

  CLI::App* parse = app.add_subcommand("parse", "Parse a file and print its syntax tree");
  add_input(parse);
  add_format(parse);
  CLI::App* check = app.add_subcommand("check", "Type check a file");
  add_input(check);
  add_format(check);
  CLI::App* run = app.add_subcommand("run", "Run a file and print the final state");
  add_input(run);
  add_format(run);
  add_fuel(run);
  run->add_flag("--trace", config.trace, "Print one record per applied rule");
  CLI::App* trace = app.add_subcommand("trace", "Run a file with a rule-level trace");
  add_input(trace);
  add_format(trace);
  add_fuel(trace);
  CLI::App* fuzz = app.add_subcommand("fuzz", "Check and run generated programs");
  fuzz->add_option("--seed", config.seed, "Trial seed")->required();
  fuzz->add_option("--count", config.count, "Number of programs")
      ->required()
      ->check(CLI::PositiveNumber);
  fuzz->add_option("--budget", config.budget, "Statements in each main")
      ->check(CLI::PositiveNumber);
  fuzz->add_option("--threads", config.threads, "Worker threads (0: all cores)");
  fuzz->add_flag("--mutants", config.mutants, "Also run ill-typed mutants");
  add_format(fuzz);
  add_fuel(fuzz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "jcop: " << e.what() << "\n" << app.help();
    return exit_code::kUsage;
  }
  config.format =
      format == "json-lines" ? OutputFormat::kJsonLines : OutputFormat::kHuman;

  if (parse->parsed()) return cmd_parse(config, out, err);
  if (check->parsed()) return cmd_check(config, out, err);
  if (run->parsed()) return cmd_run(config, out, err);
  if (trace->parsed()) {
    config.trace = true;
    return cmd_run(config, out, err);
  }
  return cmd_fuzz(config, out);
}

}  // namespace jcop
