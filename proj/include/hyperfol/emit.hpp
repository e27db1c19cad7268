#pragma once

// Text serialization of encoded problems. Output is deterministic.

#include <string>

#include "hyperfol/encoder.hpp"

namespace hyperfol {

enum class OutputFormat { Smtlib2, TptpTff };

std::string to_string(OutputFormat f);
/// File extension including the dot: ".smt2" or ".p".
std::string extension(OutputFormat f);

std::string emit_smtlib(const EncodedProblem& p);
std::string emit_tptp(const EncodedProblem& p);
std::string emit(const EncodedProblem& p, OutputFormat f);

/// TPTP spelling of a symbol name (first character lowercased).
std::string tptp_symbol(const std::string& name);
/// TPTP spelling of a variable name (first character uppercased).
std::string tptp_variable(const std::string& name);

}  // namespace hyperfol
