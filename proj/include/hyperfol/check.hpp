#pragma once

// formula -> automaton -> encoding -> solver verdict.

#include <optional>
#include <string>
#include <vector>

#include "hyperfol/encoder.hpp"
#include "hyperfol/solvers.hpp"

namespace hyperfol {

enum class EncodingChoice { Auto, Func, Pred, Lia };

EncodingChoice parse_encoding_choice(const std::string& s);

struct CheckOptions {
  EncodingChoice encoding = EncodingChoice::Auto;
  /// Treat the body as a safety property even if the syntactic check fails.
  bool assume_safe = false;
  bool explicit_alphabet = false;
  /// See EncodeOptions::simplify.
  bool simplify = true;
  /// Overrides every solver's configured timeout.
  std::optional<double> timeout_sec;
};

/// Func for syntactically safe bodies (or with assume_safe), Lia otherwise;
/// explicit choices are kept. Throws NotSyntacticallySafe for func/pred on a
/// non-safe body without assume_safe.
EncodingKind select_encoding(const HyperFormula& phi, const CheckOptions& opts);

/// The automaton the selected encoding consumes.
SymbolicAutomaton build_automaton(const HyperFormula& phi, EncodingKind kind, bool assume_safe);

EncodedProblem encode(const HyperFormula& phi, const CheckOptions& opts);

struct CheckResult {
  Verdict verdict;
  EncodingKind encoding = EncodingKind::FuncSafety;
  std::vector<Verdict> members;
};

/// Emits the problem once per format the solvers need (temporary files) and
/// runs them as one portfolio.
CheckResult check(const HyperFormula& phi, const std::vector<SolverConfig>& solvers, const CheckOptions& opts);
CheckResult solve_problem(const EncodedProblem& problem, const std::vector<SolverConfig>& solvers,
                          std::optional<double> timeout_sec = std::nullopt);

}  // namespace hyperfol
