#include "hyperfol/check.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <map>

#include "hyperfol/error.hpp"

namespace hyperfol {

EncodingChoice parse_encoding_choice(const std::string& s) {
  if (s == "auto") return EncodingChoice::Auto;
  if (s == "func") return EncodingChoice::Func;
  if (s == "pred") return EncodingChoice::Pred;
  if (s == "lia") return EncodingChoice::Lia;
  throw std::invalid_argument("unknown encoding '" + s + "' (expected auto, func, pred or lia)");
}

EncodingKind select_encoding(const HyperFormula& phi, const CheckOptions& opts) {
  const bool safe = is_syntactically_safe(to_nnf(phi.body));
  switch (opts.encoding) {
    case EncodingChoice::Auto:
      return safe || opts.assume_safe ? EncodingKind::FuncSafety : EncodingKind::Lia;
    case EncodingChoice::Func:
    case EncodingChoice::Pred:
      if (!safe && !opts.assume_safe) throw NotSyntacticallySafe();
      return opts.encoding == EncodingChoice::Func ? EncodingKind::FuncSafety : EncodingKind::PredSafety;
    case EncodingChoice::Lia:
      return EncodingKind::Lia;
  }
  return EncodingKind::Lia;
}

SymbolicAutomaton build_automaton(const HyperFormula& phi, EncodingKind kind, bool assume_safe) {
  validate(phi);
  Ltl nnf = to_nnf(phi.body);
  auto atoms = body_atoms(phi);
  if (kind == EncodingKind::Lia) return ltl_to_nba(nnf, atoms);
  if (is_syntactically_safe(nnf)) return to_safety_automaton(nnf, atoms);
  if (!assume_safe) throw NotSyntacticallySafe();
  return safety_closure(ltl_to_nba(nnf, atoms));
}

EncodedProblem encode(const HyperFormula& phi, const CheckOptions& opts) {
  EncodingKind kind = select_encoding(phi, opts);
  auto aut = build_automaton(phi, kind, opts.assume_safe);
  EncodeOptions eo{opts.explicit_alphabet, opts.simplify};
  switch (kind) {
    case EncodingKind::FuncSafety: return encode_func(phi, aut, eo);
    case EncodingKind::PredSafety: return encode_pred(phi, aut, eo);
    case EncodingKind::Lia: return encode_lia(phi, aut, eo);
  }
  return encode_lia(phi, aut, eo);
}

namespace {

std::filesystem::path temp_problem_path(OutputFormat f) {
  static std::atomic<unsigned long> counter{0};
  auto name = "hyperfol-" + std::to_string(getpid()) + "-" + std::to_string(counter++) + extension(f);
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

CheckResult solve_problem(const EncodedProblem& problem, const std::vector<SolverConfig>& solvers,
                          std::optional<double> timeout_sec) {
  std::map<OutputFormat, std::filesystem::path> files;
  std::vector<std::pair<SolverConfig, std::filesystem::path>> jobs;
  for (auto cfg : solvers) {
    if (timeout_sec) cfg.timeout_sec = *timeout_sec;
    auto it = files.find(cfg.format);
    if (it == files.end()) {
      auto path = temp_problem_path(cfg.format);
      std::ofstream(path) << emit(problem, cfg.format);
      it = files.emplace(cfg.format, path).first;
    }
    jobs.emplace_back(cfg, it->second);
  }
  CheckResult r;
  r.encoding = problem.kind;
  try {
    r.verdict = run_portfolio(jobs, &r.members);
  } catch (...) {
    for (const auto& [f, p] : files) std::filesystem::remove(p);
    throw;
  }
  for (const auto& [f, p] : files) std::filesystem::remove(p);
  return r;
}

CheckResult check(const HyperFormula& phi, const std::vector<SolverConfig>& solvers, const CheckOptions& opts) {
  return solve_problem(encode(phi, opts), solvers, opts.timeout_sec);
}

}  // namespace hyperfol
