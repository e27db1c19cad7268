#include "doctest.h"
#include "hyperfol/error.hpp"
#include "hyperfol/fol.hpp"

#include <random>

using namespace hyperfol;
using namespace hyperfol::fol;

namespace {

Signature trace_time() {
  Signature s;
  s.sorts = {{"Trace"}, {"Time"}};
  s.functions = {{"succ", {"Time"}, "Time"}, {"i0", {}, "Time"}};
  s.predicates = {{"P_a", {"Trace", "Time"}}, {"S_0", {"Trace", "Trace", "Time"}}};
  return s;
}

// One sort S with P, R, f, and a constant c<d> naming each element.
FiniteInterpretation small(std::size_t n, std::mt19937_64& rng) {
  FiniteInterpretation I;
  I.signature.sorts = {{"S"}};
  I.signature.predicates = {{"P", {"S"}}, {"R", {"S", "S"}}};
  I.signature.functions = {{"f", {"S"}, "S"}};
  I.domain["S"] = n;
  for (std::size_t i = 0; i < n; ++i) I.predicates["P"].push_back(rng() % 2);
  for (std::size_t i = 0; i < n * n; ++i) I.predicates["R"].push_back(rng() % 2);
  for (std::size_t i = 0; i < n; ++i) I.functions["f"].push_back(rng() % n);
  for (std::size_t d = 0; d < n; ++d) {
    I.signature.functions.push_back({"c" + std::to_string(d), {}, "S"});
    I.functions["c" + std::to_string(d)] = {d};
  }
  return I;
}

// Random formula over P, R, f with bound variables drawn from `vars`.
Formula random_formula(std::mt19937_64& rng, std::vector<std::string>& vars, int depth) {
  auto pick = [&]() -> Term {
    Term t = var(vars[rng() % vars.size()]);
    return rng() % 3 == 0 ? app("f", {t}) : t;
  };
  if (depth == 0 || (!vars.empty() && rng() % 4 == 0)) {
    if (vars.empty()) return rng() % 2 ? tt() : ff();
    switch (rng() % 3) {
      case 0: return pred("P", {pick()});
      case 1: return pred("R", {pick(), pick()});
      default: return equal(pick(), pick());
    }
  }
  switch (rng() % 5) {
    case 0: return lnot(random_formula(rng, vars, depth - 1));
    case 1: return land({random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)});
    case 2: return lor({random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)});
    default: {
      std::string v = "v" + std::to_string(vars.size());
      vars.push_back(v);
      Formula body = random_formula(rng, vars, depth - 1);
      vars.pop_back();
      return rng() % 2 ? forall(v, "S", body) : exists(v, "S", body);
    }
  }
}

Term rename_term(const Term& t, const std::string& from, const std::string& to) {
  if (t->kind == TermKind::Var) return t->name == from ? var(to) : t;
  if (t->kind != TermKind::App) return t;
  std::vector<Term> args;
  for (const auto& a : t->args) args.push_back(rename_term(a, from, to));
  return app(t->name, args);
}

// Renames every binder of `from` (and its occurrences) to `to`.
Formula rename(const Formula& f, const std::string& from, const std::string& to) {
  auto node = std::make_shared<FormulaNode>(*f);
  for (auto& c : node->children) c = rename(c, from, to);
  for (auto& t : node->terms) t = rename_term(t, from, to);
  if ((f->kind == Kind::Forall || f->kind == Kind::Exists) && f->name == from) node->name = to;
  return node;
}

// body[x := d], with d named by the constant c<d>.
Formula subst(const Formula& f, const std::string& x, std::size_t d) {
  return exists(x, "S", land({equal(var(x), app("c" + std::to_string(d))), f}));
}

}  // namespace

TEST_CASE("check_sorts examples") {
  auto sig = trace_time();
  CHECK_NOTHROW(check_sorts(forall("x", "Trace", forall("i", "Time", pred("P_a", {var("x"), var("i")}))), sig));

  // succ applied to a trace
  auto bad = forall("x", "Trace", pred("P_a", {var("x"), app("succ", {var("x")})}));
  CHECK_THROWS_AS(check_sorts(bad, sig), SortError);
  try {
    check_sorts(bad, sig);
  } catch (const SortError& e) {
    CHECK(e.expected() == "Time");
    CHECK(e.found() == "Trace");
  }

  // S_0 needs two traces
  auto arity = forall("x", "Trace", forall("i", "Time", pred("S_0", {var("x"), var("i")})));
  CHECK_THROWS_AS(check_sorts(arity, sig), SortError);

  CHECK_THROWS_AS(check_sorts(forall("i", "Time", pred("P_a", {var("x"), var("i")})), sig), UnboundFolVariable);
  CHECK_THROWS_AS(check_sorts(pred("Q", {}), sig), SortError);
  CHECK_THROWS_AS(check_sorts(forall("x", "Nope", tt()), sig), SortError);
}

TEST_CASE("check_sorts on integer terms") {
  Signature sig;
  sig.sorts = {{"Trace"}, {"Int", true}};
  sig.predicates = {{"P_a", {"Trace", "Int"}}};
  auto ok = forall("x", "Trace", forall("i", "Int", land({pred("P_a", {var("x"), int_add(var("i"), int_const(1))}),
                                                          int_less(var("i"), int_const(0))})));
  CHECK_NOTHROW(check_sorts(ok, sig));
  CHECK_THROWS_AS(check_sorts(forall("x", "Trace", int_less(var("x"), int_const(0))), sig), SortError);
  CHECK(sig.integer_sort() == "Int");
}

TEST_CASE("eval_finite examples") {
  FiniteInterpretation I;
  I.signature.sorts = {{"S"}};
  I.signature.predicates = {{"P", {"S"}}};
  I.domain["S"] = 1;
  I.predicates["P"] = {true};
  CHECK(eval_finite(forall("x", "S", pred("P", {var("x")})), I));
  CHECK_FALSE(eval_finite(exists("x", "S", lnot(pred("P", {var("x")}))), I));

  I.domain["S"] = 0;
  I.predicates["P"] = {};
  CHECK_THROWS_AS(eval_finite(forall("x", "S", pred("P", {var("x")})), I), DomainEmpty);

  FiniteInterpretation J;
  J.signature.sorts = {{"Int", true}};
  CHECK_THROWS_AS(eval_finite(forall("i", "Int", tt()), J), IntegerSortPresent);
}

TEST_CASE("function tables and equality") {
  FiniteInterpretation I;
  I.signature.sorts = {{"Time"}};
  I.signature.functions = {{"succ", {"Time"}, "Time"}, {"i0", {}, "Time"}};
  I.domain["Time"] = 3;
  I.functions["succ"] = {1, 2, 1};
  I.functions["i0"] = {0};
  // succ never returns to 0
  CHECK(eval_finite(forall("i", "Time", lnot(equal(app("succ", {var("i")}), app("i0")))), I));
  CHECK(eval_finite(equal(app("succ", {app("succ", {app("succ", {app("i0")})})}), app("succ", {app("i0")})), I));
  CHECK(I.table_size({"Time", "Time"}) == 9);
  CHECK(I.index({"Time", "Time"}, {2, 1}) == 7);
}

TEST_CASE("quantifiers match explicit expansion") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    std::size_t n = 1 + rng() % 4;
    auto I = small(n, rng);
    std::vector<std::string> vars = {"x"};
    Formula body = random_formula(rng, vars, 3);
    std::vector<Formula> conj, disj;
    for (std::size_t d = 0; d < n; ++d) {
      conj.push_back(subst(body, "x", d));
      disj.push_back(subst(body, "x", d));
    }
    CHECK(eval_finite(forall("x", "S", body), I) == eval_finite(land(conj), I));
    CHECK(eval_finite(exists("x", "S", body), I) == eval_finite(lor(disj), I));
  }
}

TEST_CASE("evaluation is invariant under renaming bound variables") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    auto I = small(1 + rng() % 3, rng);
    std::vector<std::string> vars;
    Formula f = random_formula(rng, vars, 4);
    Formula g = rename(rename(f, "v0", "w0"), "v1", "w1");
    CHECK(eval_finite(f, I) == eval_finite(g, I));
  }
}

TEST_CASE("size_of counts nodes and argument terms") {
  CHECK(size_of(tt()) == 1);
  CHECK(size_of(forall("x", "S", land({pred("P", {var("x")}), lnot(pred("P", {var("x")}))}))) == 7);
}

