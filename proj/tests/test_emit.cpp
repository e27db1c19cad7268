#include "doctest.h"
#include "hyperfol/automaton.hpp"
#include "hyperfol/emit.hpp"

#include <regex>

using namespace hyperfol;

namespace {

EncodedProblem problem(const std::string& text, EncodingKind kind) {
  auto phi = parse(text);
  auto atoms = body_atoms(phi);
  auto body = to_nnf(phi.body);
  switch (kind) {
    case EncodingKind::FuncSafety: return encode_func(phi, to_safety_automaton(body, atoms));
    case EncodingKind::PredSafety: return encode_pred(phi, to_safety_automaton(body, atoms));
    default: return encode_lia(phi, ltl_to_nba(body, atoms));
  }
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

bool balanced(const std::string& s) {
  int depth = 0;
  for (char c : s) {
    depth += c == '(';
    depth -= c == ')';
    if (depth < 0) return false;
  }
  return depth == 0;
}

}  // namespace

TEST_CASE("smtlib for exists p. G a") {
  auto text = emit_smtlib(problem(R"(exists p. G "a"_p)", EncodingKind::FuncSafety));
  CHECK(text.rfind("(set-logic UF)\n", 0) == 0);
  CHECK(occurrences(text, "(declare-sort Trace 0)") == 1);
  CHECK(occurrences(text, "(declare-sort Time 0)") == 1);
  CHECK(occurrences(text, "(declare-fun i0 () Time)") == 1);
  CHECK(occurrences(text, "(declare-fun t0 () Trace)") == 1);
  CHECK(occurrences(text, "(declare-fun succ (Time) Time)") == 1);
  CHECK(occurrences(text, "(declare-fun P_a (Trace Time) Bool)") == 1);
  CHECK(occurrences(text, "(declare-fun S_0 (Trace Time) Bool)") == 1);
  CHECK(occurrences(text, "(declare-fun S_1 (Trace Time) Bool)") == 1);
  CHECK(occurrences(text, "(assert ") == 1);
  CHECK(occurrences(text, "(check-sat)") == 1);
  CHECK(text.substr(text.size() - 12) == "(check-sat)\n");
  CHECK(balanced(text));
  // sorts, then functions, then predicates, then the assertion
  CHECK(text.find("declare-sort Time") < text.find("declare-fun i0"));
  CHECK(text.find("declare-fun succ") < text.find("declare-fun P_a"));
  CHECK(text.find("declare-fun S_1") < text.find("(assert"));
}

TEST_CASE("smtlib for the integer encoding") {
  auto text = emit_smtlib(problem(R"(exists p. F "a"_p)", EncodingKind::Lia));
  CHECK(text.rfind("(set-logic UFLIA)\n", 0) == 0);
  CHECK(text.find("Time") == std::string::npos);
  CHECK(text.find("(declare-fun P_a (Trace Int) Bool)") != std::string::npos);
  CHECK(text.find("(+ i 1)") != std::string::npos);
  CHECK(text.find("(< i j)") != std::string::npos);
  CHECK(balanced(text));
}

TEST_CASE("smtlib for the predicate encoding") {
  auto text = emit_smtlib(problem(R"(exists p. G "a"_p)", EncodingKind::PredSafety));
  CHECK(text.find("(declare-fun Succ (Time Time) Bool)") != std::string::npos);
  CHECK(text.find("(= j k)") != std::string::npos);
  CHECK(text.find("succ") == std::string::npos);
}

TEST_CASE("tptp shapes") {
  auto func = emit_tptp(problem(R"(exists p. G "a"_p)", EncodingKind::FuncSafety));
  CHECK(func.find("tff(trace_type, type, trace: $tType).") != std::string::npos);
  CHECK(func.find("tff(time_type, type, time: $tType).") != std::string::npos);
  CHECK(func.find("succ: time > time") != std::string::npos);
  CHECK(func.find("p_a: (trace * time) > $o") != std::string::npos);
  CHECK(occurrences(func, ", axiom, ") == 1);
  CHECK(func.find("conjecture") == std::string::npos);
  CHECK(balanced(func));

  auto lia = emit_tptp(problem(R"(exists p. F "a"_p)", EncodingKind::Lia));
  CHECK(lia.find("$int") != std::string::npos);
  CHECK(lia.find("$sum(I,1)") != std::string::npos);
  CHECK(lia.find("$less(I,J)") != std::string::npos);
  CHECK(lia.find("time") == std::string::npos);

  auto pred = emit_tptp(problem(R"(exists p. G "a"_p)", EncodingKind::PredSafety));
  CHECK(pred.find("(J = K)") != std::string::npos);
}

TEST_CASE("tptp identifiers are sanitized") {
  auto text = emit_tptp(problem(R"(exists p. G "out-1"_p)", EncodingKind::FuncSafety));
  CHECK(text.find("p_out_2D1") != std::string::npos);
  CHECK(text.find("out-1") == std::string::npos);
  // every declared name is a lower word
  std::regex decl(R"(tff\((\w+), type, ([a-z][A-Za-z0-9_]*):)");
  std::size_t n = 0;
  for (std::sregex_iterator it(text.begin(), text.end(), decl), end; it != end; ++it) ++n;
  CHECK(n == 8);
  CHECK(tptp_symbol("S_3") == "s_3");
  CHECK(tptp_variable("x1") == "X1");
}

TEST_CASE("emission is deterministic") {
  for (auto kind : {EncodingKind::FuncSafety, EncodingKind::PredSafety, EncodingKind::Lia}) {
    auto a = problem(R"(forall p. exists q. G ("a"_p <-> X "b"_q))", kind);
    auto b = problem(R"(forall p. exists q. G ("a"_p <-> X "b"_q))", kind);
    CHECK(emit(a, OutputFormat::Smtlib2) == emit(b, OutputFormat::Smtlib2));
    CHECK(emit(a, OutputFormat::TptpTff) == emit(b, OutputFormat::TptpTff));
  }
  CHECK(extension(OutputFormat::Smtlib2) == ".smt2");
  CHECK(extension(OutputFormat::TptpTff) == ".p");
}
