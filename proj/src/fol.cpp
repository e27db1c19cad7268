#include "hyperfol/fol.hpp"

#include <algorithm>
#include <functional>

#include "hyperfol/error.hpp"

namespace hyperfol::fol {

const Sort* Signature::find_sort(const std::string& name) const {
  for (const auto& s : sorts)
    if (s.name == name) return &s;
  return nullptr;
}

const FunctionDecl* Signature::find_function(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

const PredicateDecl* Signature::find_predicate(const std::string& name) const {
  for (const auto& p : predicates)
    if (p.name == name) return &p;
  return nullptr;
}

std::string Signature::integer_sort() const {
  for (const auto& s : sorts)
    if (s.integer) return s.name;
  return "";
}

Term var(std::string name) { return std::make_shared<const TermNode>(TermNode{TermKind::Var, std::move(name), {}, 0}); }

Term app(std::string fn, std::vector<Term> args) {
  return std::make_shared<const TermNode>(TermNode{TermKind::App, std::move(fn), std::move(args), 0});
}

Term int_const(std::int64_t v) { return std::make_shared<const TermNode>(TermNode{TermKind::IntConst, "", {}, v}); }

Term int_add(Term a, Term b) {
  return std::make_shared<const TermNode>(TermNode{TermKind::IntAdd, "", {std::move(a), std::move(b)}, 0});
}

namespace {

Formula node(Kind k, std::vector<Formula> children = {}, std::string name = "", std::string sort = "",
             std::vector<Term> terms = {}) {
  return std::make_shared<const FormulaNode>(
      FormulaNode{k, std::move(children), std::move(name), std::move(sort), std::move(terms)});
}

}  // namespace

Formula tt() { return node(Kind::True); }
Formula ff() { return node(Kind::False); }
Formula lnot(Formula f) { return node(Kind::Not, {std::move(f)}); }
Formula land(std::vector<Formula> fs) { return node(Kind::And, std::move(fs)); }
Formula lor(std::vector<Formula> fs) { return node(Kind::Or, std::move(fs)); }
Formula implies(Formula a, Formula b) { return node(Kind::Implies, {std::move(a), std::move(b)}); }
Formula forall(std::string v, std::string sort, Formula body) {
  return node(Kind::Forall, {std::move(body)}, std::move(v), std::move(sort));
}
Formula exists(std::string v, std::string sort, Formula body) {
  return node(Kind::Exists, {std::move(body)}, std::move(v), std::move(sort));
}
Formula pred(std::string name, std::vector<Term> args) {
  return node(Kind::Pred, {}, std::move(name), "", std::move(args));
}
Formula equal(Term a, Term b) { return node(Kind::Equal, {}, "", "", {std::move(a), std::move(b)}); }
Formula int_less(Term a, Term b) { return node(Kind::IntLess, {}, "", "", {std::move(a), std::move(b)}); }

std::size_t size_of(const Formula& f) {
  std::size_t n = 1 + f->terms.size();
  for (const auto& c : f->children) n += size_of(c);
  return n;
}

namespace {

using Scope = std::vector<std::pair<std::string, std::string>>;  // var -> sort, innermost last

class SortChecker {
 public:
  explicit SortChecker(const Signature& sig) : sig_(sig), int_(sig.integer_sort()) {}

  void formula(const Formula& f, const std::string& path) {
    switch (f->kind) {
      case Kind::True:
      case Kind::False:
        return;
      case Kind::Not:
      case Kind::And:
      case Kind::Or:
      case Kind::Implies: {
        static const char* names[] = {"", "", "not", "and", "or", "implies"};
        for (std::size_t k = 0; k < f->children.size(); ++k)
          formula(f->children[k], path + "/" + names[static_cast<int>(f->kind)] + "[" + std::to_string(k) + "]");
        return;
      }
      case Kind::Forall:
      case Kind::Exists: {
        if (!sig_.find_sort(f->sort)) throw SortError(path, "declared sort", f->sort);
        scope_.emplace_back(f->name, f->sort);
        formula(f->children.at(0), path + "/" + (f->kind == Kind::Forall ? "forall " : "exists ") + f->name);
        scope_.pop_back();
        return;
      }
      case Kind::Pred: {
        const auto* p = sig_.find_predicate(f->name);
        if (!p) throw SortError(path, "declared predicate", f->name);
        arguments(f->name, p->args, f->terms, path);
        return;
      }
      case Kind::Equal: {
        std::string here = path + "/=";
        auto a = term(f->terms.at(0), here + "[0]");
        auto b = term(f->terms.at(1), here + "[1]");
        if (a != b) throw SortError(here + "[1]", a, b);
        return;
      }
      case Kind::IntLess: {
        std::string here = path + "/<";
        if (int_.empty()) throw SortError(here, "integer sort", "none declared");
        for (std::size_t k = 0; k < 2; ++k) {
          auto s = term(f->terms.at(k), here + "[" + std::to_string(k) + "]");
          if (s != int_) throw SortError(here + "[" + std::to_string(k) + "]", int_, s);
        }
        return;
      }
    }
  }

 private:
  void arguments(const std::string& sym, const std::vector<std::string>& expected,
                 const std::vector<Term>& args, const std::string& path) {
    std::string here = path + "/" + sym;
    if (expected.size() != args.size())
      throw SortError(here, std::to_string(expected.size()) + " arguments", std::to_string(args.size()));
    for (std::size_t k = 0; k < args.size(); ++k) {
      std::string p = here + "[" + std::to_string(k) + "]";
      auto s = term(args[k], p);
      if (s != expected[k]) throw SortError(p, expected[k], s);
    }
  }

  std::string term(const Term& t, const std::string& path) {
    switch (t->kind) {
      case TermKind::Var:
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == t->name) return it->second;
        throw UnboundFolVariable(t->name);
      case TermKind::App: {
        const auto* fn = sig_.find_function(t->name);
        if (!fn) throw SortError(path, "declared function", t->name);
        arguments(t->name, fn->args, t->args, path);
        return fn->result;
      }
      case TermKind::IntConst:
        if (int_.empty()) throw SortError(path, "integer sort", "none declared");
        return int_;
      case TermKind::IntAdd: {
        if (int_.empty()) throw SortError(path, "integer sort", "none declared");
        for (std::size_t k = 0; k < 2; ++k) {
          std::string p = path + "/+[" + std::to_string(k) + "]";
          auto s = term(t->args.at(k), p);
          if (s != int_) throw SortError(p, int_, s);
        }
        return int_;
      }
    }
    return "";
  }

  const Signature& sig_;
  std::string int_;
  Scope scope_;
};

bool mentions_integers(const Formula& f, const Signature& sig) {
  auto term_has = [&](const Term& t, auto&& self) -> bool {
    if (t->kind == TermKind::IntConst || t->kind == TermKind::IntAdd) return true;
    for (const auto& a : t->args)
      if (self(a, self)) return true;
    return false;
  };
  if (f->kind == Kind::IntLess) return true;
  if (f->kind == Kind::Forall || f->kind == Kind::Exists) {
    const Sort* s = sig.find_sort(f->sort);
    if (s && s->integer) return true;
  }
  for (const auto& t : f->terms)
    if (term_has(t, term_has)) return true;
  for (const auto& c : f->children)
    if (mentions_integers(c, sig)) return true;
  return false;
}

class Evaluator {
 public:
  explicit Evaluator(const FiniteInterpretation& I) : I_(I) {}

  bool eval(const Formula& f) {
    switch (f->kind) {
      case Kind::True: return true;
      case Kind::False: return false;
      case Kind::Not: return !eval(f->children[0]);
      case Kind::And:
        for (const auto& c : f->children)
          if (!eval(c)) return false;
        return true;
      case Kind::Or:
        for (const auto& c : f->children)
          if (eval(c)) return true;
        return false;
      case Kind::Implies: return !eval(f->children[0]) || eval(f->children[1]);
      case Kind::Forall:
      case Kind::Exists: {
        std::size_t n = domain(f->sort);
        bool want = f->kind == Kind::Exists;
        env_.emplace_back(f->name, 0);
        bool result = !want;
        for (std::size_t d = 0; d < n; ++d) {
          env_.back().second = d;
          if (eval(f->children[0]) == want) {
            result = want;
            break;
          }
        }
        env_.pop_back();
        return result;
      }
      case Kind::Pred: {
        const auto* p = I_.signature.find_predicate(f->name);
        std::vector<std::size_t> args;
        for (const auto& t : f->terms) args.push_back(term(t));
        return I_.predicates.at(f->name).at(I_.index(p->args, args));
      }
      case Kind::Equal: return term(f->terms[0]) == term(f->terms[1]);
      case Kind::IntLess: throw IntegerSortPresent();
    }
    return false;
  }

 private:
  std::size_t domain(const std::string& sort) {
    auto it = I_.domain.find(sort);
    if (it == I_.domain.end() || it->second == 0) throw DomainEmpty(sort);
    return it->second;
  }

  std::size_t term(const Term& t) {
    switch (t->kind) {
      case TermKind::Var:
        for (auto it = env_.rbegin(); it != env_.rend(); ++it)
          if (it->first == t->name) return it->second;
        throw UnboundFolVariable(t->name);
      case TermKind::App: {
        const auto* fn = I_.signature.find_function(t->name);
        std::vector<std::size_t> args;
        for (const auto& a : t->args) args.push_back(term(a));
        return I_.functions.at(t->name).at(I_.index(fn->args, args));
      }
      default:
        throw IntegerSortPresent();
    }
  }

  const FiniteInterpretation& I_;
  std::vector<std::pair<std::string, std::size_t>> env_;
};

}  // namespace

void check_sorts(const Formula& theta, const Signature& sig) {
  for (const auto& f : sig.functions)
    for (const auto& s : f.args)
      if (!sig.find_sort(s)) throw SortError("signature/" + f.name, "declared sort", s);
  for (const auto& p : sig.predicates)
    for (const auto& s : p.args)
      if (!sig.find_sort(s)) throw SortError("signature/" + p.name, "declared sort", s);
  SortChecker(sig).formula(theta, "");
}

std::size_t FiniteInterpretation::table_size(const std::vector<std::string>& arg_sorts) const {
  std::size_t n = 1;
  for (const auto& s : arg_sorts) n *= domain.at(s);
  return n;
}

std::size_t FiniteInterpretation::index(const std::vector<std::string>& arg_sorts,
                                        const std::vector<std::size_t>& args) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < args.size(); ++k) idx = idx * domain.at(arg_sorts[k]) + args[k];
  return idx;
}

bool eval_finite(const Formula& theta, const FiniteInterpretation& interp) {
  if (mentions_integers(theta, interp.signature)) throw IntegerSortPresent();
  return Evaluator(interp).eval(theta);
}

}  // namespace hyperfol::fol
