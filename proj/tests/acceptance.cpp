// Acceptance run: one PASS/FAIL/SKIP line per criterion on stdout, progress
// and warnings on stderr. Exit status 1 if any criterion fails.
//
// Solver criteria use whatever configured solvers answer a trivial probe;
// with none of them working those criteria print SKIP.

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "golden_cases.hpp"
#include "hyperfol/automaton.hpp"
#include "hyperfol/error.hpp"
#include "test_support.hpp"

using namespace hyperfol;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, const std::string& status, const std::string& detail) {
  if (status == "FAIL") ++failures;
  std::cout << "criterion " << n << " " << status << ": " << detail << std::endl;
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", s);
  return buf;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

// stdout+stderr of one solver run on `file`
std::string capture(const SolverConfig& cfg, const std::filesystem::path& file) {
  std::string cmd;
  for (const auto& a : solver_argv(cfg, file)) cmd += shell_quote(a) + " ";
  cmd += "2>&1";
  std::string out;
  if (FILE* p = popen(cmd.c_str(), "r")) {
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    pclose(p);
  }
  return out;
}

// Solvers whose binary exists and that decide `exists p. G a` (or at least
// do not die at startup). cvc5-py without the package exits 127.
std::vector<SolverConfig> working_solvers() {
  std::vector<SolverConfig> out;
  auto dir = std::filesystem::temp_directory_path() / ("hyperfol_probe_" + std::to_string(getpid()));
  std::filesystem::create_directories(dir);
  auto problem = encode(parse(R"(exists p. G "a"_p)"), {});
  for (auto cfg : load_solver_configs()) {
    if (!solver_available(cfg)) continue;
    cfg.timeout_sec = 20;
    auto file = dir / ("probe" + extension(cfg.format));
    std::ofstream(file) << emit(problem, cfg.format);
    auto v = run_solver(cfg, file);
    if (v.detail == "exit 127") {
      std::cerr << "warning: " << cfg.name << " is configured but cannot run\n";
      continue;
    }
    if (v.result == Result::Unsat) {
      std::cerr << "warning: " << cfg.name << " answers UNSAT on a satisfiable probe; left out\n";
      continue;
    }
    out.push_back(cfg);
  }
  std::filesystem::remove_all(dir);
  return out;
}

void table_criterion(int n, const std::string& what, const std::vector<BenchCase>& cases,
                     const std::vector<SolverConfig>& solvers, double cap) {
  BenchOptions bo;
  bo.check.timeout_sec = cap;
  auto t0 = Clock::now();
  auto rows = run_table(cases, solvers, bo);
  std::size_t ok = 0;
  double worst = 0;
  std::string bad;
  for (const auto& r : rows) {
    worst = std::max(worst, r.time_sec);
    if (r.status == "ok" && r.time_sec <= cap) ++ok;
    else bad += " " + r.id + "(" + r.status + " " + to_string(r.verdict) + " " + fmt(r.time_sec) + "s)";
  }
  std::string detail = what + ": " + std::to_string(ok) + "/" + std::to_string(rows.size()) +
                       " correct, slowest " + fmt(worst) + " s, total " + fmt(since(t0)) + " s";
  if (!bad.empty()) detail += "; failing:" + bad;
  report(n, ok == rows.size() ? "PASS" : "FAIL", detail);
}

struct OracleHit {
  HyperFormula phi;
  LassoTraceSet model;
};

CheckOptions literal_func(double timeout) {
  CheckOptions o;
  o.encoding = EncodingChoice::Func;
  o.simplify = false;
  o.timeout_sec = timeout;
  return o;
}

// criterion 6; returns the oracle models for criterion 7
std::vector<OracleHit> oracle_vs_solver(const std::vector<SolverConfig>& solvers) {
  auto cases = suite_random_safe(100, 2024);
  std::vector<OracleHit> hits;
  std::size_t confirmed = 0, sat = 0, undecided = 0, conflicts = 0;
  auto t0 = Clock::now();
  for (const auto& c : cases) {
    auto r = bounded_find_model(c.formula, {3, 1, 2}, 20000);
    if (!r.found) continue;
    hits.push_back({c.formula, r.model});
    if (eval_hyperltl(c.formula, r.model)) ++confirmed;
    if (solvers.empty()) continue;
    try {
      auto v = check(c.formula, solvers, literal_func(60)).verdict;
      if (v.result == Result::Sat) ++sat;
      else if (v.result == Result::Unsat) {
        ++conflicts;
        std::cerr << "conflict: " << c.id << " has an oracle model but " << v.solver << " says UNSAT\n";
      } else ++undecided;
    } catch (const SoundnessConflict& e) {
      ++conflicts;
      std::cerr << "conflict: " << c.id << ": " << e.what() << "\n";
    }
  }
  std::size_t n = hits.size();
  std::string detail = std::to_string(n) + "/100 oracle models, " + std::to_string(confirmed) + " confirmed by evaluation";
  bool pass = n > 0 && confirmed == n;
  if (!solvers.empty()) {
    detail += ", func encoding SAT " + std::to_string(sat) + "/" + std::to_string(n) + ", undecided " +
              std::to_string(undecided) + ", conflicts " + std::to_string(conflicts);
    pass = pass && sat == n && conflicts == 0;
  } else {
    std::cerr << "warning: no working solver; criterion 6 checks the oracle side only\n";
    detail += " (solver side skipped)";
  }
  detail += ", " + fmt(since(t0)) + " s";
  report(6, pass ? "PASS" : "FAIL", detail);
  return hits;
}

void models_to_interpretations(const std::vector<OracleHit>& hits) {
  auto t0 = Clock::now();
  std::size_t good = 0;
  for (const auto& h : hits) {
    try {
      auto atoms = body_atoms(h.phi);
      auto nsa = to_safety_automaton(to_nnf(h.phi.body), atoms);
      auto I = build_finite_interpretation(h.phi, nsa, h.model);
      if (fol::eval_finite(encode_func(h.phi, nsa).formula, I)) ++good;
      else std::cerr << "interpretation falsifies the encoding: " << to_string(h.phi) << "\n";
    } catch (const Error& e) {
      std::cerr << "interpretation failed: " << e.what() << "\n";
    }
  }
  double t = since(t0);
  bool pass = !hits.empty() && good == hits.size() && t < 300;
  report(7, pass ? "PASS" : "FAIL",
         std::to_string(good) + "/" + std::to_string(hits.size()) + " interpretations satisfy the encoding, " + fmt(t) +
             " s");
}

void automata() {
  std::mt19937_64 rng(7);
  auto atoms = testsupport::atoms_for({"a", "b", "c"}, {"p", "q"});
  std::size_t words = 0, nba_bad = 0, nsa_words = 0, nsa_bad = 0;
  auto t0 = Clock::now();
  for (int k = 0; k < 100; ++k) {
    // every other body from the safe operators so the NSA side is exercised
    auto body = testsupport::random_nnf(rng, atoms, 1 + static_cast<int>(rng() % 12), k % 2 == 0);
    auto nba = ltl_to_nba(body, atoms);
    std::optional<SymbolicAutomaton> nsa;
    if (is_syntactically_safe(body)) nsa = to_safety_automaton(body, atoms);
    for (int j = 0; j < 50; ++j) {
      auto w = testsupport::random_word(rng, atoms.size(), 3, 3);
      bool want = eval_ltl(body, atoms, w);
      bool got = accepts_lasso(nba, w.stem, w.loop);
      ++words;
      nba_bad += got != want;
      if (nsa) {
        ++nsa_words;
        nsa_bad += accepts_lasso(*nsa, w.stem, w.loop) != got;
      }
    }
  }
  report(8, nba_bad == 0 && nsa_bad == 0 ? "PASS" : "FAIL",
         std::to_string(words) + " words: NBA mismatches " + std::to_string(nba_bad) + ", NSA vs NBA mismatches " +
             std::to_string(nsa_bad) + " of " + std::to_string(nsa_words) + ", " + fmt(since(t0)) + " s");
}

// Only agreement matters here, and the undecided runs dominate the time.
constexpr double kCrossTimeout = 20;

void cross_encoding(const std::vector<SolverConfig>& solvers) {
  auto cases = suite_random_safe(20, 77);
  struct Variant {
    std::string name;
    CheckOptions opts;
  };
  std::vector<Variant> variants;
  for (auto [name, e] : {std::pair{"func", EncodingChoice::Func}, {"pred", EncodingChoice::Pred},
                         {"lia", EncodingChoice::Lia}}) {
    CheckOptions o;
    o.encoding = e;
    o.simplify = false;
    o.timeout_sec = kCrossTimeout;
    variants.push_back({name, o});
  }
  CheckOptions simplified;
  simplified.encoding = EncodingChoice::Func;
  simplified.timeout_sec = kCrossTimeout;
  variants.push_back({"func-simplified", simplified});

  std::size_t conflicts = 0, decided = 0, runs = 0;
  auto t0 = Clock::now();
  for (const auto& c : cases) {
    std::optional<Result> seen;
    std::string seen_by;
    for (const auto& v : variants) {
      ++runs;
      Result r = Result::Unknown;
      try {
        r = check(c.formula, solvers, v.opts).verdict.result;
      } catch (const SoundnessConflict& e) {
        ++conflicts;
        std::cerr << "conflict inside one portfolio: " << c.id << " " << v.name << ": " << e.what() << "\n";
        continue;
      }
      if (r == Result::Unknown) continue;
      ++decided;
      if (seen && *seen != r) {
        ++conflicts;
        std::cerr << "conflict: " << c.id << " " << seen_by << "=" << to_string(*seen) << " " << v.name << "="
                  << to_string(r) << "\n";
      }
      if (!seen) seen = r, seen_by = v.name;
    }
  }
  report(9, conflicts == 0 ? "PASS" : "FAIL",
         "20 formulas x func/pred/lia/func-simplified: " + std::to_string(decided) + "/" + std::to_string(runs) +
             " decided, " + std::to_string(conflicts) + " conflicts, " + fmt(since(t0)) + " s");
}

bool mentions_error(const std::string& out) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    std::string low;
    for (char c : line) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (low.find("error") != std::string::npos) return true;
  }
  return false;
}

void emitters(const std::vector<SolverConfig>& solvers) {
  std::size_t exact = 0, total = 0;
  std::string drift;
  for (const auto& c : golden::cases())
    for (auto f : {OutputFormat::Smtlib2, OutputFormat::TptpTff}) {
      ++total;
      if (golden::read(golden::path(c, f)) == golden::text(c, f)) ++exact;
      else drift += " " + c.name + extension(f);
    }
  std::string detail = std::to_string(exact) + "/" + std::to_string(total) + " golden files byte-exact";
  if (!drift.empty()) detail += " (differ:" + drift + ")";
  bool pass = exact == total;

  std::size_t parsed = 0, runs = 0;
  std::string rejected, formats;
  bool tptp_solver = false;
  for (auto cfg : solvers) {
    cfg.timeout_sec = 5;  // parsing is all we look at
    tptp_solver = tptp_solver || cfg.format == OutputFormat::TptpTff;
    for (const auto& c : golden::cases()) {
      ++runs;
      auto out = capture(cfg, golden::path(c, cfg.format));
      if (mentions_error(out)) {
        rejected += " " + cfg.name + "/" + c.name;
        std::cerr << cfg.name << " on " << c.name << ":\n" << out;
      } else ++parsed;
    }
  }
  if (solvers.empty()) {
    std::cerr << "warning: no working solver; criterion 10 checks the golden files only\n";
    detail += ", parse check skipped";
  } else {
    detail += ", " + std::to_string(parsed) + "/" + std::to_string(runs) + " solver runs without parse errors";
    if (!rejected.empty()) detail += " (rejected:" + rejected + ")";
    if (!tptp_solver) detail += ", no TPTP solver installed";
    pass = pass && rejected.empty();
  }
  report(10, pass ? "PASS" : "FAIL", detail);
}

}  // namespace

int main() {
  auto solvers = working_solvers();
  if (solvers.empty()) {
    std::cerr << "warning: no configured solver works here; solver criteria are skipped\n";
  } else {
    std::cerr << "solvers:";
    for (const auto& s : solvers) std::cerr << " " << s.name;
    std::cerr << "\n";
  }

  auto skip = [&](int n) { report(n, "SKIP", "no working solver"); };
  if (solvers.empty()) {
    for (int n = 1; n <= 5; ++n) skip(n);
  } else {
    table_criterion(1, "enforce_model n 1..5, b 1..2, SAT iff n <= 2^b", suite_enforce_model(), solvers, 60);
    table_criterion(2, "unsat n 0..5, all UNSAT", suite_unsat(), solvers, 60);
    table_criterion(3, "bounded GNI/NI both directions, b 1..3, all SAT", suite_gni_ni(), solvers, 300);
    table_criterion(4, "six information-flow cases", gen_handcrafted(), solvers, 60);
    table_criterion(5, "QN(n) -> QN(m), UNSAT iff n <= m", suite_qn(), solvers, 60);
  }
  auto hits = oracle_vs_solver(solvers);
  models_to_interpretations(hits);
  automata();
  if (solvers.empty()) skip(9);
  else cross_encoding(solvers);
  emitters(solvers);
  return failures == 0 ? 0 : 1;
}
