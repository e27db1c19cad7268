#pragma once

// Many-sorted first-order formulas, signatures, and a finite-domain evaluator.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hyperfol::fol {

struct Sort {
  std::string name;
  bool integer = false;  // the built-in integers (fixed interpretation)
};

struct FunctionDecl {
  std::string name;
  std::vector<std::string> args;
  std::string result;
};

struct PredicateDecl {
  std::string name;
  std::vector<std::string> args;
};

struct Signature {
  std::vector<Sort> sorts;
  std::vector<FunctionDecl> functions;
  std::vector<PredicateDecl> predicates;

  const Sort* find_sort(const std::string& name) const;
  const FunctionDecl* find_function(const std::string& name) const;
  const PredicateDecl* find_predicate(const std::string& name) const;
  /// Name of the integer sort, or "" if none is declared.
  std::string integer_sort() const;
};

enum class TermKind { Var, App, IntConst, IntAdd };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermKind kind;
  std::string name;  // variable or function symbol
  std::vector<Term> args;
  std::int64_t value = 0;  // IntConst
};

Term var(std::string name);
Term app(std::string fn, std::vector<Term> args = {});
Term int_const(std::int64_t v);
Term int_add(Term a, Term b);

enum class Kind { True, False, Not, And, Or, Implies, Forall, Exists, Pred, Equal, IntLess };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

/// And/Or are n-ary. Forall/Exists bind `name` of sort `sort` over children[0].
struct FormulaNode {
  Kind kind;
  std::vector<Formula> children;
  std::string name;  // predicate symbol or bound variable
  std::string sort;  // binder sort
  std::vector<Term> terms;  // Pred arguments, or the two sides of Equal/IntLess
};

Formula tt();
Formula ff();
Formula lnot(Formula f);
Formula land(std::vector<Formula> fs);
Formula lor(std::vector<Formula> fs);
Formula implies(Formula a, Formula b);
Formula forall(std::string var, std::string sort, Formula body);
Formula exists(std::string var, std::string sort, Formula body);
Formula pred(std::string name, std::vector<Term> args);
Formula equal(Term a, Term b);
Formula int_less(Term a, Term b);

/// Throws SortError (with a slash-separated path to the offending node) or
/// UnboundFolVariable.
void check_sorts(const Formula& theta, const Signature& sig);

std::size_t size_of(const Formula& f);

/// Finite domains are {0, ..., n-1}. Tables are flattened row-major over the
/// argument sorts' domains (first argument most significant).
struct FiniteInterpretation {
  Signature signature;
  std::map<std::string, std::size_t> domain;
  std::map<std::string, std::vector<std::size_t>> functions;
  std::map<std::string, std::vector<bool>> predicates;

  std::size_t table_size(const std::vector<std::string>& arg_sorts) const;
  std::size_t index(const std::vector<std::string>& arg_sorts, const std::vector<std::size_t>& args) const;
};

/// Tarskian evaluation. Throws IntegerSortPresent, DomainEmpty.
bool eval_finite(const Formula& theta, const FiniteInterpretation& interp);

}  // namespace hyperfol::fol
