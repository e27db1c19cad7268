#pragma once

// Direct HyperLTL semantics over finite sets of lasso-shaped traces, and a
// bounded explicit model finder used as ground truth for the encodings.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperfol/formula.hpp"

namespace hyperfol {

/// A set of propositions as a bitmask over some indexed universe (<= 64 entries).
using Letter = std::uint64_t;

/// Ultimately periodic word stem . loop^omega.
struct LassoWord {
  std::vector<Letter> stem;
  std::vector<Letter> loop;

  std::size_t length() const { return stem.size() + loop.size(); }
  /// Letter at absolute position i.
  Letter at(std::size_t i) const;
  bool operator==(const LassoWord&) const = default;
};

/// Hard cap on stem + 2 * loop after alignment.
inline constexpr std::size_t kMaxAlignedPositions = std::size_t{1} << 20;

/// Smallest representation of the same infinite word (primitive loop, shortest stem).
LassoWord canonical(const LassoWord& w);

/// Re-expresses every word with stem length max(stems) and loop length lcm(loops).
/// Throws EmptyLoop or LcmOverflow.
std::vector<LassoWord> align(const std::vector<LassoWord>& words);

/// An LTL body compiled against a fixed atom order; evaluation is exact on lassos.
class BodyEvaluator {
 public:
  BodyEvaluator(const Ltl& body, std::vector<AtomId> atoms);

  const std::vector<AtomId>& atoms() const { return atoms_; }
  /// Truth of the body at position 0 of `word` (letters index `atoms()`).
  bool eval(const LassoWord& word) const;

 private:
  struct Node {
    Op op;
    int atom = -1;
    int lhs = -1;
    int rhs = -1;
  };
  int compile(const Ltl& f);

  std::vector<AtomId> atoms_;
  std::vector<Node> nodes_;  // children precede parents
};

/// Direct single-word evaluation: atoms of `body` index into `atoms`.
bool eval_ltl(const Ltl& body, const std::vector<AtomId>& atoms, const LassoWord& word);

/// A trace over 2^AP, letters indexing `LassoTraceSet::ap_universe`.
using LassoTrace = LassoWord;

struct LassoTraceSet {
  std::vector<std::string> ap_universe;
  std::vector<LassoTrace> traces;
};

/// The combined word of a trace tuple over the indexed atoms `atoms`
/// (each atom's variable is mapped by `vars` to a position in `tuple`).
LassoWord combined_word(const LassoTraceSet& set, const std::vector<std::size_t>& tuple,
                        const std::vector<std::string>& vars, const std::vector<AtomId>& atoms);

/// The body atoms of `phi` in sorted order; this fixes letter layout for words of phi.
std::vector<AtomId> body_atoms(const HyperFormula& phi);

/// T |= phi. Throws EmptyTraceSet.
bool eval_hyperltl(const HyperFormula& phi, const LassoTraceSet& set);

struct OracleBounds {
  std::size_t max_traces = 3;
  std::size_t max_stem = 2;
  std::size_t max_loop = 2;
};

struct OracleResult {
  bool found = false;
  LassoTraceSet model;      // meaningful when found
  OracleBounds bounds;      // the bounds that were exhausted otherwise
  std::size_t candidates = 0;
};

/// Enumerates candidate trace sets by increasing total size (|AP| * sum of
/// lasso lengths) and returns the first model. Not finding one is not an
/// unsatisfiability verdict. Optional `budget` caps the number of candidates.
OracleResult bounded_find_model(const HyperFormula& phi, const OracleBounds& bounds,
                                std::optional<std::size_t> budget = std::nullopt);

/// `{a,b} {} | {a}` for one trace.
std::string format_trace(const LassoTrace& t, const std::vector<std::string>& aps);
/// One `trace k: ...` line per trace.
std::string format_model(const LassoTraceSet& set);

}  // namespace hyperfol
