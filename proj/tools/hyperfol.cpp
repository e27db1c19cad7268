// hyperfol: HyperLTL satisfiability through first-order encodings.
//
// Exit codes: 0 SAT (or oracle model found), 1 UNSAT, 2 UNKNOWN (or no model
// within the oracle bounds), 3 bench mismatch, 10 usage or input error,
// 11 any other failure.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "hyperfol/bench.hpp"
#include "hyperfol/check.hpp"
#include "hyperfol/emit.hpp"
#include "hyperfol/error.hpp"
#include "hyperfol/semantics.hpp"

using namespace hyperfol;

namespace {

constexpr int kExitMismatch = 3;
constexpr int kExitUsage = 10;
constexpr int kExitFailure = 11;

struct Args {
  std::string formula;
  std::string file;
  std::string encoding = "auto";
  std::string format = "smtlib";
  std::vector<std::string> solvers;
  std::optional<double> timeout;
  bool assume_safe = false;
  bool explicit_alphabet = false;
  bool no_simplify = false;
  bool emit_only = false;
  std::string output;
  std::size_t max_traces = OracleBounds{}.max_traces;
  std::size_t max_stem = OracleBounds{}.max_stem;
  std::size_t max_loop = OracleBounds{}.max_loop;
  std::optional<std::size_t> budget;
  std::string config;
  std::uint64_t seed = 0;
  bool dump_automaton = false;
  // bench
  std::string manifest;
  std::vector<std::string> suites;
  unsigned jobs = 1;
  std::string csv;
  // gen
  std::vector<std::string> gen_words;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), {}}; }

HyperFormula read_formula(const Args& a) {
  if (!a.formula.empty() && !a.file.empty()) throw UsageError("give either --formula or --file, not both");
  if (!a.formula.empty()) return parse(a.formula);
  if (a.file.empty() || a.file == "-") return parse(read_all(std::cin));
  std::ifstream in(a.file);
  if (!in) throw UsageError("cannot read " + a.file);
  return parse(read_all(in));
}

CheckOptions check_options(const Args& a) {
  CheckOptions o;
  o.encoding = parse_encoding_choice(a.encoding);
  o.assume_safe = a.assume_safe;
  o.explicit_alphabet = a.explicit_alphabet;
  o.simplify = !a.no_simplify;
  o.timeout_sec = a.timeout;
  return o;
}

std::vector<SolverConfig> selected_solvers(const Args& a) {
  std::optional<std::filesystem::path> path;
  if (!a.config.empty()) path = a.config;
  auto all = load_solver_configs(path);
  if (a.solvers.empty()) return all;
  std::vector<SolverConfig> out;
  for (const auto& name : a.solvers) {
    auto it = std::find_if(all.begin(), all.end(), [&](const SolverConfig& c) { return c.name == name; });
    if (it == all.end()) {
      std::string known;
      for (const auto& c : all) known += (known.empty() ? "" : ", ") + c.name;
      throw UsageError("unknown solver '" + name + "' (configured: " + known + ")");
    }
    out.push_back(*it);
  }
  return out;
}

int exit_code(Result r) { return r == Result::Sat ? 0 : r == Result::Unsat ? 1 : 2; }

void dump_automaton(const HyperFormula& phi, const CheckOptions& o) {
  auto kind = select_encoding(phi, o);
  std::cerr << to_hoa(build_automaton(phi, kind, o.assume_safe));
}

int write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path);
  if (!out || !(out << text)) throw UsageError("cannot write " + path);
  return 0;
}

int do_emit(const Args& a) {
  if (a.output.empty()) throw UsageError("emitting needs an output path (-o PATH, or -o - for stdout)");
  auto phi = read_formula(a);
  auto opts = check_options(a);
  if (a.dump_automaton) dump_automaton(phi, opts);
  OutputFormat fmt;
  if (a.format == "smtlib") fmt = OutputFormat::Smtlib2;
  else if (a.format == "tptp") fmt = OutputFormat::TptpTff;
  else throw UsageError("unknown format '" + a.format + "'");
  auto problem = encode(phi, opts);
  write_output(a.output, emit(problem, fmt));
  if (a.output != "-")
    std::cout << "wrote " << a.output << " (" << to_string(fmt) << ", " << to_string(problem.kind)
              << " encoding)\n";
  return 0;
}

int do_check(const Args& a) {
  if (a.emit_only) return do_emit(a);
  auto phi = read_formula(a);
  auto opts = check_options(a);
  auto solvers = selected_solvers(a);
  if (a.dump_automaton) dump_automaton(phi, opts);
  auto r = check(phi, solvers, opts);
  std::cout << "encoding: " << to_string(r.encoding) << "\n";
  for (const auto& m : r.members)
    std::cout << "solver " << m.solver << ": " << to_string(m.result) << (m.detail.empty() ? "" : " (" + m.detail + ")")
              << "\n";
  char t[32];
  std::snprintf(t, sizeof t, "%.3f", r.verdict.elapsed);
  std::cout << "decided by: " << (r.verdict.result == Result::Unknown ? "-" : r.verdict.solver) << " in " << t
            << " s\n";
  std::cout << to_string(r.verdict.result) << "\n";
  return exit_code(r.verdict.result);
}

int do_oracle(const Args& a) {
  auto phi = read_formula(a);
  OracleBounds b{a.max_traces, a.max_stem, a.max_loop};
  auto r = bounded_find_model(phi, b, a.budget);
  std::cout << "candidates: " << r.candidates << "\n";
  if (r.found) {
    std::cout << format_model(r.model) << "MODEL\n";
    return 0;
  }
  std::cout << "NoModelUpTo(traces=" << r.bounds.max_traces << ", stem=" << r.bounds.max_stem
            << ", loop=" << r.bounds.max_loop << ")\n";
  return 2;
}

int do_gen(const Args& a) {
  if (a.gen_words.empty()) throw UsageError("gen needs a generator, e.g. `gen unsat 3`");
  auto words = a.gen_words;
  if (words[0] == "random" && words.size() == 5) words.push_back(std::to_string(a.seed));
  std::string line;
  for (const auto& w : words) line += (line.empty() ? "" : " ") + w;
  std::vector<BenchCase> cases;
  try {
    cases = parse_manifest(line);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (cases.size() == 1) {
    std::cout << to_string(cases[0].formula) << "\n";
    return 0;
  }
  for (const auto& c : cases)
    std::cout << "// " << c.id << " expected " << to_string(c.expected) << "\n" << to_string(c.formula) << "\n";
  return 0;
}

int do_bench(const Args& a) {
  std::string text;
  if (!a.manifest.empty()) {
    std::ifstream in(a.manifest);
    if (!in) throw UsageError("cannot read " + a.manifest);
    text = read_all(in);
  }
  for (const auto& s : a.suites) text += "\nsuite " + s;
  if (a.manifest.empty() && a.suites.empty()) throw UsageError("bench needs --manifest or --suite");
  std::vector<BenchCase> cases;
  try {
    cases = parse_manifest(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  BenchOptions opts;
  opts.check = check_options(a);
  opts.jobs = a.jobs;
  auto rows = run_table(cases, selected_solvers(a), opts);
  auto csv = to_csv(rows);
  if (!a.csv.empty()) write_output(a.csv, csv);
  else std::cout << csv;
  for (const auto& r : rows)
    if (r.status == "skipped") std::cerr << "warning: " << r.id << " skipped, no configured solver is installed\n";
  return has_mismatch(rows) ? kExitMismatch : 0;
}

void add_input_options(CLI::App& app, Args& a) {
  app.add_option("-f,--formula", a.formula, "Formula text");
  app.add_option("--file", a.file, "Formula file, - for stdin (the default)");
}

void add_encoding_options(CLI::App& app, Args& a) {
  app.add_option("--encoding", a.encoding, "auto, func, pred or lia")
      ->check(CLI::IsMember({"auto", "func", "pred", "lia"}));
  app.add_flag("--assume-safe", a.assume_safe, "Encode the safety closure of a non-safe body");
  app.add_flag("--explicit-alphabet", a.explicit_alphabet, "Expand labels into full letters");
  app.add_flag("--no-simplify", a.no_simplify, "Keep a predicate for every automaton state");
  app.add_flag("--dump-automaton", a.dump_automaton, "Print the automaton (HOA) to stderr");
}

void add_solver_options(CLI::App& app, Args& a) {
  app.add_option("--solver", a.solvers, "Solver name from the config; repeat for a portfolio");
  app.add_option("--timeout", a.timeout, "Seconds per solver (default: config, 60)");
  app.add_option("--config", a.config, "Solver config file (overrides $" + std::string(kConfigEnvVar) + ")");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HyperLTL satisfiability via first-order encodings"};
  Args a;
  app.require_subcommand(0, 1);

  auto* check_cmd = app.add_subcommand("check", "Encode and solve (the default)");
  auto* emit_cmd = app.add_subcommand("emit", "Write the encoding without solving");
  auto* oracle_cmd = app.add_subcommand("oracle", "Search for a small lasso model");
  auto* bench_cmd = app.add_subcommand("bench", "Run benchmark cases and print CSV");
  auto* gen_cmd = app.add_subcommand("gen", "Print a generated formula");

  for (auto* c : {&app, check_cmd}) {
    add_input_options(*c, a);
    add_encoding_options(*c, a);
    add_solver_options(*c, a);
    c->add_flag("--emit-only", a.emit_only, "Only write the encoding (needs -o)");
    c->add_option("--format", a.format, "smtlib or tptp (with --emit-only)")->check(CLI::IsMember({"smtlib", "tptp"}));
    c->add_option("-o,--output", a.output, "Output path for --emit-only");
  }
  add_input_options(*emit_cmd, a);
  add_encoding_options(*emit_cmd, a);
  emit_cmd->add_option("--format", a.format, "smtlib or tptp")->check(CLI::IsMember({"smtlib", "tptp"}));
  emit_cmd->add_option("-o,--output", a.output, "Output path, - for stdout")->required();

  add_input_options(*oracle_cmd, a);
  oracle_cmd->add_option("--max-traces", a.max_traces, "Largest trace set tried");
  oracle_cmd->add_option("--max-stem", a.max_stem, "Longest stem tried");
  oracle_cmd->add_option("--max-loop", a.max_loop, "Longest loop tried");
  oracle_cmd->add_option("--budget", a.budget, "Stop after this many candidates");

  add_encoding_options(*bench_cmd, a);
  add_solver_options(*bench_cmd, a);
  bench_cmd->add_option("--manifest", a.manifest, "File of generator lines");
  bench_cmd->add_option("--suite", a.suites, "qn, enforce_model, unsat, gni_ni or handcrafted (repeatable)");
  bench_cmd->add_option("--jobs", a.jobs, "Cases run in parallel");
  bench_cmd->add_option("--csv", a.csv, "Write the CSV here instead of stdout");

  gen_cmd->add_option("generator", a.gen_words, "e.g. unsat 3 | enforce_model 4 2 | qn_implies 3 2 | handcrafted")
      ->required();
  gen_cmd->add_option("--seed", a.seed, "Seed for `random` when not given inline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*emit_cmd) return do_emit(a);
    if (*oracle_cmd) return do_oracle(a);
    if (*bench_cmd) return do_bench(a);
    if (*gen_cmd) return do_gen(a);
    return do_check(a);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverNotFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const SoundnessConflict& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    // Rejected input: unsafe body for func/pred, unbound variables, too many atoms.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
