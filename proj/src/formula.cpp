#include "hyperfol/formula.hpp"

#include <stdexcept>

#include "hyperfol/error.hpp"

namespace hyperfol {

namespace {

Ltl make(Op op, Ltl lhs = nullptr, Ltl rhs = nullptr) {
  return std::make_shared<const LtlNode>(LtlNode{op, {}, std::move(lhs), std::move(rhs)});
}

}  // namespace

namespace ltl {

Ltl tt() {
  static const Ltl node = make(Op::True);
  return node;
}
Ltl ff() {
  static const Ltl node = make(Op::False);
  return node;
}
Ltl atom(std::string ap, std::string var) {
  return std::make_shared<const LtlNode>(
      LtlNode{Op::Atom, AtomId{std::move(ap), std::move(var)}, nullptr, nullptr});
}
Ltl lnot(Ltl a) { return make(Op::Not, std::move(a)); }
Ltl land(Ltl a, Ltl b) { return make(Op::And, std::move(a), std::move(b)); }
Ltl lor(Ltl a, Ltl b) { return make(Op::Or, std::move(a), std::move(b)); }
Ltl implies(Ltl a, Ltl b) { return make(Op::Implies, std::move(a), std::move(b)); }
Ltl iff(Ltl a, Ltl b) { return make(Op::Iff, std::move(a), std::move(b)); }
Ltl next(Ltl a) { return make(Op::Next, std::move(a)); }
Ltl until(Ltl a, Ltl b) { return make(Op::Until, std::move(a), std::move(b)); }
Ltl weak_until(Ltl a, Ltl b) { return make(Op::WeakUntil, std::move(a), std::move(b)); }
Ltl release(Ltl a, Ltl b) { return make(Op::Release, std::move(a), std::move(b)); }
Ltl eventually(Ltl a) { return make(Op::Eventually, std::move(a)); }
Ltl globally(Ltl a) { return make(Op::Globally, std::move(a)); }

Ltl xor_(Ltl a, Ltl b) { return lnot(iff(std::move(a), std::move(b))); }

Ltl conj(const std::vector<Ltl>& parts) {
  if (parts.empty()) return tt();
  Ltl acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = land(acc, parts[i]);
  return acc;
}

Ltl disj(const std::vector<Ltl>& parts) {
  if (parts.empty()) return ff();
  Ltl acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = lor(acc, parts[i]);
  return acc;
}

Ltl next_n(unsigned k, Ltl a) {
  for (unsigned i = 0; i < k; ++i) a = next(std::move(a));
  return a;
}

}  // namespace ltl

bool is_unary(Op op) {
  return op == Op::Not || op == Op::Next || op == Op::Eventually || op == Op::Globally;
}

bool is_binary(Op op) {
  switch (op) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
    case Op::Until:
    case Op::WeakUntil:
    case Op::Release:
      return true;
    default:
      return false;
  }
}

int compare(const Ltl& a, const Ltl& b) {
  if (a.get() == b.get()) return 0;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  if (a->op == Op::Atom) {
    auto c = a->atom <=> b->atom;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (a->lhs) {
    if (int c = compare(a->lhs, b->lhs); c != 0) return c;
  }
  if (a->rhs) return compare(a->rhs, b->rhs);
  return 0;
}

bool equal(const Ltl& a, const Ltl& b) { return compare(a, b) == 0; }

namespace {

const char* binary_symbol(Op op) {
  switch (op) {
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Iff: return "<->";
    case Op::Until: return "U";
    case Op::WeakUntil: return "W";
    case Op::Release: return "R";
    default: return "?";
  }
}

void quote_ap(std::string& out, const std::string& ap) {
  out += '"';
  for (char c : ap) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

void print(std::string& out, const Ltl& f) {
  switch (f->op) {
    case Op::True: out += "1"; return;
    case Op::False: out += "0"; return;
    case Op::Atom:
      quote_ap(out, f->atom.ap);
      out += '_';
      out += f->atom.var;
      return;
    case Op::Not: out += "!"; print(out, f->lhs); return;
    case Op::Next: out += "X "; print(out, f->lhs); return;
    case Op::Eventually: out += "F "; print(out, f->lhs); return;
    case Op::Globally: out += "G "; print(out, f->lhs); return;
    default:
      out += '(';
      print(out, f->lhs);
      out += ' ';
      out += binary_symbol(f->op);
      out += ' ';
      print(out, f->rhs);
      out += ')';
  }
}

void collect_atoms(const Ltl& f, std::set<AtomId>& out) {
  if (f->op == Op::Atom) {
    out.insert(f->atom);
    return;
  }
  if (f->lhs) collect_atoms(f->lhs, out);
  if (f->rhs) collect_atoms(f->rhs, out);
}

Ltl nnf(const Ltl& f, bool neg) {
  using namespace ltl;
  switch (f->op) {
    case Op::True: return neg ? ff() : tt();
    case Op::False: return neg ? tt() : ff();
    case Op::Atom: return neg ? lnot(f) : f;
    case Op::Not: return nnf(f->lhs, !neg);
    case Op::And:
      return neg ? lor(nnf(f->lhs, true), nnf(f->rhs, true))
                 : land(nnf(f->lhs, false), nnf(f->rhs, false));
    case Op::Or:
      return neg ? land(nnf(f->lhs, true), nnf(f->rhs, true))
                 : lor(nnf(f->lhs, false), nnf(f->rhs, false));
    case Op::Implies:
      return neg ? land(nnf(f->lhs, false), nnf(f->rhs, true))
                 : lor(nnf(f->lhs, true), nnf(f->rhs, false));
    case Op::Iff: {
      auto a = nnf(f->lhs, false), na = nnf(f->lhs, true);
      auto b = nnf(f->rhs, false), nb = nnf(f->rhs, true);
      return neg ? lor(land(a, nb), land(na, b)) : lor(land(a, b), land(na, nb));
    }
    case Op::Next: return next(nnf(f->lhs, neg));
    case Op::Until:
      return neg ? release(nnf(f->lhs, true), nnf(f->rhs, true))
                 : until(nnf(f->lhs, false), nnf(f->rhs, false));
    case Op::Release:
      return neg ? until(nnf(f->lhs, true), nnf(f->rhs, true))
                 : release(nnf(f->lhs, false), nnf(f->rhs, false));
    case Op::WeakUntil: {
      if (!neg) return weak_until(nnf(f->lhs, false), nnf(f->rhs, false));
      // !(a W b) = !b U (!a & !b)
      auto nb = nnf(f->rhs, true);
      return until(nb, land(nnf(f->lhs, true), nb));
    }
    case Op::Eventually:
      return neg ? globally(nnf(f->lhs, true)) : eventually(nnf(f->lhs, false));
    case Op::Globally:
      return neg ? eventually(nnf(f->lhs, true)) : globally(nnf(f->lhs, false));
  }
  throw std::logic_error("nnf: unknown operator");
}

}  // namespace

std::string to_string(const Ltl& body) {
  std::string out;
  print(out, body);
  return out;
}

std::set<AtomId> atoms_of(const Ltl& body) {
  std::set<AtomId> out;
  collect_atoms(body, out);
  return out;
}

std::size_t size_of(const Ltl& body) {
  std::size_t n = 1;
  if (body->lhs) n += size_of(body->lhs);
  if (body->rhs) n += size_of(body->rhs);
  return n;
}

Ltl to_nnf(const Ltl& body) { return nnf(body, false); }

Ltl expand_sugar(const Ltl& f) {
  using namespace ltl;
  switch (f->op) {
    case Op::True:
    case Op::Atom:
      return f;
    case Op::False: return lnot(tt());
    case Op::Not: return lnot(expand_sugar(f->lhs));
    case Op::And: return land(expand_sugar(f->lhs), expand_sugar(f->rhs));
    case Op::Or: return lnot(land(lnot(expand_sugar(f->lhs)), lnot(expand_sugar(f->rhs))));
    case Op::Implies: return lnot(land(expand_sugar(f->lhs), lnot(expand_sugar(f->rhs))));
    case Op::Iff: {
      auto a = expand_sugar(f->lhs), b = expand_sugar(f->rhs);
      return land(lnot(land(a, lnot(b))), lnot(land(lnot(a), b)));
    }
    case Op::Next: return next(expand_sugar(f->lhs));
    case Op::Until: return until(expand_sugar(f->lhs), expand_sugar(f->rhs));
    case Op::Eventually: return until(tt(), expand_sugar(f->lhs));
    case Op::Globally: return lnot(until(tt(), lnot(expand_sugar(f->lhs))));
    case Op::WeakUntil:
      return expand_sugar(lor(until(f->lhs, f->rhs), globally(f->lhs)));
    case Op::Release:
      return lnot(until(lnot(expand_sugar(f->lhs)), lnot(expand_sugar(f->rhs))));
  }
  throw std::logic_error("expand_sugar: unknown operator");
}

Ltl bounded_eventually(unsigned b, Ltl inner) {
  if (b == 0) throw std::invalid_argument("bounded eventually needs b >= 1");
  std::vector<Ltl> parts;
  for (unsigned k = 0; k < b; ++k) parts.push_back(ltl::next_n(k, inner));
  return ltl::disj(parts);
}

Ltl bounded_globally(unsigned b, Ltl inner) {
  if (b == 0) throw std::invalid_argument("bounded globally needs b >= 1");
  std::vector<Ltl> parts;
  for (unsigned k = 0; k < b; ++k) parts.push_back(ltl::next_n(k, inner));
  return ltl::conj(parts);
}

std::vector<std::string> HyperFormula::variables() const {
  std::vector<std::string> out;
  out.reserve(prefix.size());
  for (const auto& q : prefix) out.push_back(q.var);
  return out;
}

int HyperFormula::index_of(std::string_view var) const {
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prefix[i].var == var) return static_cast<int>(i);
  return -1;
}

std::set<std::string> HyperFormula::aps() const {
  std::set<std::string> out;
  for (const auto& a : atoms_of(body)) out.insert(a.ap);
  return out;
}

bool equal(const HyperFormula& a, const HyperFormula& b) {
  return a.prefix == b.prefix && equal(a.body, b.body);
}

bool is_valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name[0])) return false;
  for (char c : name)
    if (!alpha(c) && !digit(c)) return false;
  return true;
}

void validate(const HyperFormula& phi) {
  std::set<std::string> seen;
  for (const auto& q : phi.prefix) {
    if (!is_valid_identifier(q.var))
      throw Error("invalid trace variable name '" + q.var + "'");
    if (!seen.insert(q.var).second) throw DuplicateVariable(q.var);
  }
  for (const auto& a : atoms_of(phi.body))
    if (!seen.contains(a.var)) throw UnboundVariable(a.var);
}

std::string to_string(const HyperFormula& phi) {
  std::string out;
  for (const auto& q : phi.prefix) {
    out += q.quantifier == Quantifier::Forall ? "forall " : "exists ";
    out += q.var;
    out += ". ";
  }
  out += to_string(phi.body);
  return out;
}

}  // namespace hyperfol
