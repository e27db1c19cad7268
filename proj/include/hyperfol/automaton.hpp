#pragma once

// Symbolic automata over the alphabet 2^(AP x vars). Edge labels are cubes
// (partial assignments); a cube denotes every letter consistent with it.

#include <optional>
#include <string>
#include <vector>

#include "hyperfol/formula.hpp"
#include "hyperfol/semantics.hpp"

namespace hyperfol {

struct Cube {
  Letter pos = 0;  // atoms that must hold
  Letter neg = 0;  // atoms that must not hold

  bool matches(Letter l) const { return (l & pos) == pos && (l & neg) == 0; }
  bool empty() const { return pos == 0 && neg == 0; }
  bool consistent() const { return (pos & neg) == 0; }
  bool operator==(const Cube&) const = default;
  auto operator<=>(const Cube&) const = default;
};

/// Cubes covering exactly the letters matched by none of `cubes`. The result
/// is an irredundant cover and only mentions atoms mentioned by the input.
std::vector<Cube> complement(const std::vector<Cube>& cubes);

enum class AutomatonKind { Buchi, Safety };

struct Edge {
  std::size_t source;
  Cube label;
  std::size_t target;
};

/// Compact label for all edges from `source` to `target`. It admits every
/// letter of those edges, plus possibly letters another edge of `source`
/// serves at least as well, so using it in place of the cubes keeps each
/// state's language. The exception is a guard into a bad state, which only
/// admits the letters no other guard of `source` does.
/// NNF over literals, &, |, true and false.
struct Guard {
  std::size_t source;
  std::size_t target;
  Ltl formula;
};

/// Immutable after construction. `marked` holds the accepting states of a
/// Buchi automaton or the bad states of a safety automaton.
struct SymbolicAutomaton {
  AutomatonKind kind = AutomatonKind::Buchi;
  std::vector<AtomId> atoms;  // bit k of a cube/letter refers to atoms[k]
  std::size_t num_states = 0;
  std::vector<std::size_t> initial;
  std::vector<Edge> edges;
  std::vector<bool> marked;
  std::vector<std::string> names;  // per-state description, for dumps only
  std::vector<Guard> guards;       // empty if the automaton was not built from a formula

  bool is_accepting(std::size_t q) const { return kind == AutomatonKind::Buchi && marked[q]; }
  bool is_bad(std::size_t q) const { return kind == AutomatonKind::Safety && marked[q]; }
  std::vector<std::size_t> bad_states() const;
  std::vector<std::size_t> accepting_states() const;
  std::vector<std::vector<std::size_t>> outgoing() const;  // edge indices per state
};

/// Tableau translation of an NNF body, degeneralized with a level counter.
/// `atoms` must contain every atom of the body (extra atoms are allowed).
SymbolicAutomaton ltl_to_nba(const Ltl& nnf_body, const std::vector<AtomId>& atoms);

/// NNF using only literals, &, |, X, G, W, R (plus constants).
bool is_syntactically_safe(const Ltl& nnf_body);

/// Tableau of a safe body with one absorbing bad sink. Throws NotSyntacticallySafe.
SymbolicAutomaton to_safety_automaton(const Ltl& nnf_body, const std::vector<AtomId>& atoms);

/// Safety automaton whose language is the safety closure of the NBA's language:
/// states that cannot reach an accepting cycle are dropped, acceptance is
/// forgotten, and the automaton is completed with a bad sink.
SymbolicAutomaton safety_closure(const SymbolicAutomaton& nba);

/// Buchi automaton with the same language: F = Q \ B, bad states removed.
SymbolicAutomaton safety_to_buchi(const SymbolicAutomaton& nsa);

/// A lasso-shaped run: states at positions 0.., loop repeats forever.
struct LassoRun {
  std::vector<std::size_t> stem;
  std::vector<std::size_t> loop;

  std::size_t at(std::size_t i) const {
    return i < stem.size() ? stem[i] : loop[(i - stem.size()) % loop.size()];
  }
};

/// Some accepting lasso run on `word` (letters over aut.atoms), if any.
std::optional<LassoRun> find_accepting_run(const SymbolicAutomaton& aut, const LassoWord& word);

/// Throws EmptyLoop when `loop` is empty.
bool accepts_lasso(const SymbolicAutomaton& aut, const std::vector<Letter>& stem,
                   const std::vector<Letter>& loop);

/// Plain-text dump in a HOA-like layout (not a stability contract).
std::string to_hoa(const SymbolicAutomaton& aut);

std::string to_string(const Cube& c, const std::vector<AtomId>& atoms);

}  // namespace hyperfol
