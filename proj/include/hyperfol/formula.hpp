#pragma once

// HyperLTL formulas: quantifier prefix over trace variables and an LTL body
// over indexed atoms "ap"_var.

#include <compare>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hyperfol {

enum class Op {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Until,
  WeakUntil,
  Release,
  Eventually,
  Globally,
};

/// One element of AP x {trace variables}.
struct AtomId {
  std::string ap;
  std::string var;

  auto operator<=>(const AtomId&) const = default;
  bool operator==(const AtomId&) const = default;
};

struct LtlNode;
using Ltl = std::shared_ptr<const LtlNode>;

/// Immutable LTL body node. Unary operators use `lhs`; binary use both.
struct LtlNode {
  Op op;
  AtomId atom;  // only for Op::Atom
  Ltl lhs;
  Ltl rhs;
};

namespace ltl {

Ltl tt();
Ltl ff();
Ltl atom(std::string ap, std::string var);
Ltl lnot(Ltl a);
Ltl land(Ltl a, Ltl b);
Ltl lor(Ltl a, Ltl b);
Ltl implies(Ltl a, Ltl b);
Ltl iff(Ltl a, Ltl b);
Ltl next(Ltl a);
Ltl until(Ltl a, Ltl b);
Ltl weak_until(Ltl a, Ltl b);
Ltl release(Ltl a, Ltl b);
Ltl eventually(Ltl a);
Ltl globally(Ltl a);

/// a <-/-> b, written as !(a <-> b).
Ltl xor_(Ltl a, Ltl b);
/// Left-nested conjunction; `true` for an empty list.
Ltl conj(const std::vector<Ltl>& parts);
/// Left-nested disjunction; `false` for an empty list.
Ltl disj(const std::vector<Ltl>& parts);
/// X^k a.
Ltl next_n(unsigned k, Ltl a);

}  // namespace ltl

bool is_unary(Op op);
bool is_binary(Op op);

/// Structural equality (ignores sharing).
bool equal(const Ltl& a, const Ltl& b);
/// Total structural order, consistent with `equal`.
int compare(const Ltl& a, const Ltl& b);

/// Fully parenthesized concrete syntax accepted by `parse_body`.
std::string to_string(const Ltl& body);

std::set<AtomId> atoms_of(const Ltl& body);
std::size_t size_of(const Ltl& body);

/// Push negations to atoms. Result uses {&,|,X,U,R,W,G,F} plus literals.
Ltl to_nnf(const Ltl& body);
/// Rewrite into the core {!,&,X,U} plus `true`.
Ltl expand_sugar(const Ltl& body);

/// inner | X inner | ... | X^{b-1} inner. Throws std::invalid_argument for b = 0.
Ltl bounded_eventually(unsigned b, Ltl inner);
/// inner & X inner & ... & X^{b-1} inner. Throws std::invalid_argument for b = 0.
Ltl bounded_globally(unsigned b, Ltl inner);

enum class Quantifier { Forall, Exists };

struct QuantifiedVar {
  Quantifier quantifier;
  std::string var;

  bool operator==(const QuantifiedVar&) const = default;
};

struct HyperFormula {
  std::vector<QuantifiedVar> prefix;
  Ltl body;

  std::vector<std::string> variables() const;
  /// Index of `var` in the prefix, or -1.
  int index_of(std::string_view var) const;
  std::set<std::string> aps() const;
};

bool equal(const HyperFormula& a, const HyperFormula& b);

/// Checks the closed-formula invariants; throws UnboundVariable / DuplicateVariable.
void validate(const HyperFormula& phi);

bool is_valid_identifier(std::string_view name);

std::string to_string(const HyperFormula& phi);

/// Parse a full formula `quant+ body`.
HyperFormula parse(std::string_view text);
/// Parse a quantifier-free body (atoms are not checked against any prefix).
Ltl parse_body(std::string_view text);

}  // namespace hyperfol
