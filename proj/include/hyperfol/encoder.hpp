#pragma once

// HyperFormula + automaton -> equisatisfiable first-order problem, and the
// finite interpretation induced by a finite lasso model.

#include <map>
#include <string>

#include "hyperfol/automaton.hpp"
#include "hyperfol/fol.hpp"
#include "hyperfol/formula.hpp"
#include "hyperfol/semantics.hpp"

namespace hyperfol {

enum class EncodingKind { FuncSafety, PredSafety, Lia };

std::string to_string(EncodingKind k);

struct EncodedProblem {
  fol::Signature signature;
  fol::Formula formula;
  EncodingKind kind = EncodingKind::FuncSafety;
  /// Generated symbol -> what it stands for ("ap a", "state 3: ...", ...).
  std::map<std::string, std::string> provenance;
};

struct EncodeOptions {
  /// Expand every cube into the full letters over AP x vars it denotes.
  bool explicit_alphabet = false;
  /// Drop state predicates that are constant (true sinks, bad states) and
  /// inline initial states nothing leads back to. Equisatisfiable, not equivalent.
  bool simplify = false;
};

/// Largest |AP| * |vars| accepted by the explicit-alphabet mode.
inline constexpr std::size_t kMaxExplicitAtoms = 12;

/// `out-1` -> `out_2D1`: letters and digits kept, `_` doubled, other bytes as _HH.
std::string escape_ap(const std::string& ap);
std::string ap_predicate(const std::string& ap);
std::string state_predicate(std::size_t q);

/// Successor function. Throws KindMismatch unless `nsa` is a safety automaton.
EncodedProblem encode_func(const HyperFormula& phi, const SymbolicAutomaton& nsa,
                           const EncodeOptions& opts = {});
/// Successor predicate with seriality and functionality axioms.
EncodedProblem encode_pred(const HyperFormula& phi, const SymbolicAutomaton& nsa,
                           const EncodeOptions& opts = {});
/// Integer time with Buchi acceptance; safety automata are converted first.
EncodedProblem encode_lia(const HyperFormula& phi, const SymbolicAutomaton& aut,
                          const EncodeOptions& opts = {});

/// The model of encode_func(phi, nsa) (or encode_pred for `kind` PredSafety)
/// induced by T. Throws NotAModel, LcmOverflow, KindMismatch.
fol::FiniteInterpretation build_finite_interpretation(const HyperFormula& phi, const SymbolicAutomaton& nsa,
                                                      const LassoTraceSet& T,
                                                      EncodingKind kind = EncodingKind::FuncSafety);

}  // namespace hyperfol
