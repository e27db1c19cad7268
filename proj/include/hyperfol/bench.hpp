#pragma once

// Benchmark formula families and a verdict-table harness.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperfol/check.hpp"
#include "hyperfol/formula.hpp"

namespace hyperfol {

enum class Expected { Sat, Unsat, Unknown };
std::string to_string(Expected e);

struct BenchCase {
  std::string id;
  std::string family;
  HyperFormula formula;
  Expected expected = Expected::Unknown;
  std::string source;  // where the expectation comes from
};

/// Negation of a prenex formula: dual prefix, negated body.
HyperFormula negate(const HyperFormula& phi);
/// Prenex form of a & b. Variables of b that clash with a are renamed.
HyperFormula conjoin(const HyperFormula& a, const HyperFormula& b);
/// a & !b, i.e. a counterexample to "a implies b".
HyperFormula implication_query(const HyperFormula& a, const HyperFormula& b);

/// forall p0..pc. !(inputs agree with p0 & outputs pairwise differ).
HyperFormula gen_qn(unsigned c, const std::vector<std::string>& in = {"in"},
                    const std::vector<std::string>& out = {"o1", "o2"});
HyperFormula gen_enforce_model(unsigned n, unsigned b);
HyperFormula gen_unsat(unsigned n);

struct GniNi {
  HyperFormula gni, ni, gni_implies_ni, ni_implies_gni;
};
/// Every G bounded to the first b positions.
GniNi gen_gni_ni(unsigned b);

/// Unbounded generalized noninterference and non-inference (safe as is).
HyperFormula gni_formula();
HyperFormula ni_formula();

/// The six information-flow combinations; eventualities bounded by b.
std::vector<BenchCase> gen_handcrafted(unsigned b = 2);

/// Seeded random formula over atom_count APs. With safe_only the body is an
/// NNF over literals, &, |, X, G, W, R.
HyperFormula gen_random(const std::vector<Quantifier>& prefix, unsigned body_size, unsigned atom_count,
                        bool safe_only, std::uint64_t seed);

std::vector<BenchCase> suite_enforce_model();  // n in 1..5, b in 1..2
std::vector<BenchCase> suite_unsat();          // n in 0..5
std::vector<BenchCase> suite_gni_ni();         // b in 1..3, both directions
std::vector<BenchCase> suite_qn();             // n, m in 1..4
/// count formulas of shape forall^1 exists^m (m cycling 1..max_exists).
std::vector<BenchCase> suite_random_safe(unsigned count, std::uint64_t seed, unsigned max_exists = 3);

/// One generator invocation per line, e.g. `unsat 3`, `enforce_model 4 2`,
/// `qn 2`, `qn_implies 3 2`, `gni 2`, `ni 2`, `gni_implies_ni 2`,
/// `ni_implies_gni 2`, `handcrafted`,
/// `random forall,exists 8 2 safe 17`, `suite enforce_model`, or
/// `formula ID EXPECTED TEXT`. `#` starts a comment.
std::vector<BenchCase> parse_manifest(const std::string& text);

struct BenchRow {
  std::string id;
  std::string family;
  Expected expected = Expected::Unknown;
  Result verdict = Result::Unknown;
  std::string solver;
  std::string encoding;
  double time_sec = 0;
  std::string status;  // ok, mismatch, unknown, skipped, error
};

struct BenchOptions {
  CheckOptions check;
  unsigned jobs = 1;
};

/// Rows come back in input order. Cases whose solvers are all missing get
/// status "skipped".
std::vector<BenchRow> run_table(const std::vector<BenchCase>& cases, const std::vector<SolverConfig>& solvers,
                                const BenchOptions& opts);
std::string to_csv(const std::vector<BenchRow>& rows);
bool has_mismatch(const std::vector<BenchRow>& rows);

}  // namespace hyperfol
