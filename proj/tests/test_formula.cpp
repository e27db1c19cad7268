#include "doctest.h"
#include "hyperfol/error.hpp"
#include "hyperfol/formula.hpp"
#include "hyperfol/semantics.hpp"
#include "test_support.hpp"

using namespace hyperfol;

namespace {
Ltl a(const char* var = "p") { return ltl::atom("a", var); }
Ltl b(const char* var = "p") { return ltl::atom("b", var); }
}  // namespace

TEST_CASE("parse: prefix and iff body") {
  auto phi = parse(R"(forall p1. exists p2. G ("a"_p1 <-> "a"_p2))");
  REQUIRE(phi.prefix.size() == 2);
  CHECK(phi.prefix[0] == QuantifiedVar{Quantifier::Forall, "p1"});
  CHECK(phi.prefix[1] == QuantifiedVar{Quantifier::Exists, "p2"});
  CHECK(equal(phi.body, ltl::globally(ltl::iff(ltl::atom("a", "p1"), ltl::atom("a", "p2")))));
}

TEST_CASE("parse: NI formula") {
  auto phi = parse(
      R"(forall p1. exists p2. (G (("l"_p1 <-> "l"_p2) & ("o"_p1 <-> "o"_p2))) & (G (! "h"_p2)))");
  auto l = [](const char* v) { return ltl::atom("l", v); };
  auto o = [](const char* v) { return ltl::atom("o", v); };
  auto expected = ltl::land(ltl::globally(ltl::land(ltl::iff(l("p1"), l("p2")), ltl::iff(o("p1"), o("p2")))),
                            ltl::globally(ltl::lnot(ltl::atom("h", "p2"))));
  CHECK(equal(phi.body, expected));
}

TEST_CASE("parse: errors") {
  CHECK_THROWS_AS(parse(R"(forall p. "a"_q)"), UnboundVariable);
  CHECK_THROWS_AS(parse(R"(forall p. exists p. "a"_p)"), DuplicateVariable);
  CHECK_THROWS_AS(parse(R"("a"_p)"), ParseError);
  try {
    parse("forall p.\n  (\"a\"_p & )");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 12);
  }
}

TEST_CASE("parse: precedence, sugar words, comments") {
  CHECK(equal(parse_body(R"("a"_p | "b"_p & "a"_p)"), ltl::lor(a(), ltl::land(b(), a()))));
  CHECK(equal(parse_body(R"("a"_p U "b"_p U "a"_p)"), ltl::until(a(), ltl::until(b(), a()))));
  CHECK(equal(parse_body(R"("a"_p -> "b"_p -> "a"_p)"), ltl::implies(a(), ltl::implies(b(), a()))));
  CHECK(equal(parse_body(R"(GF "a"_p)"), ltl::globally(ltl::eventually(a()))));
  CHECK(equal(parse_body(R"(!X "a"_p U "b"_p)"), ltl::until(ltl::lnot(ltl::next(a())), b())));
  CHECK(equal(parse_body("1 & 0 // trailing"), ltl::land(ltl::tt(), ltl::ff())));
  CHECK(equal(parse_body(R"("out-1"_p && "x\"y"_p)"),
              ltl::land(ltl::atom("out-1", "p"), ltl::atom("x\"y", "p"))));
}

TEST_CASE("to_nnf examples") {
  CHECK(equal(to_nnf(ltl::lnot(ltl::until(a(), b()))), ltl::release(ltl::lnot(a()), ltl::lnot(b()))));
  CHECK(equal(to_nnf(ltl::lnot(ltl::globally(a()))), ltl::eventually(ltl::lnot(a()))));
  CHECK(equal(to_nnf(ltl::lnot(ltl::lnot(a()))), a()));
}

TEST_CASE("expand_sugar examples") {
  auto G_a = ltl::lnot(ltl::until(ltl::tt(), ltl::lnot(a())));
  CHECK(equal(expand_sugar(ltl::globally(a())), G_a));
  CHECK(equal(expand_sugar(ltl::lor(a(), b())), ltl::lnot(ltl::land(ltl::lnot(a()), ltl::lnot(b())))));
  auto w = expand_sugar(ltl::weak_until(a(), b()));
  auto expected = ltl::lnot(ltl::land(ltl::lnot(ltl::until(a(), b())), ltl::lnot(G_a)));
  CHECK(equal(w, expected));
}

TEST_CASE("bounded_eventually examples") {
  CHECK(equal(bounded_eventually(1, a()), a()));
  CHECK(equal(bounded_eventually(2, a()), ltl::lor(a(), ltl::next(a()))));
  CHECK_THROWS_AS(bounded_eventually(0, a()), std::invalid_argument);
  CHECK_THROWS_AS(bounded_globally(0, a()), std::invalid_argument);
}

TEST_CASE("print/parse round trip on random formulas") {
  std::mt19937_64 rng(7);
  auto atoms = testsupport::atoms_for({"a", "b c", "q\"x"}, {"p", "q"});
  for (int k = 0; k < 300; ++k) {
    HyperFormula phi;
    phi.prefix = {{Quantifier::Forall, "p"}, {Quantifier::Exists, "q"}};
    phi.body = testsupport::random_body(rng, atoms, 1 + static_cast<int>(rng() % 14));
    auto text = to_string(phi);
    auto back = parse(text);
    INFO(text);
    CHECK(equal(back, phi));
  }
}

TEST_CASE("normal forms preserve semantics and atoms") {
  std::mt19937_64 rng(11);
  auto atoms = testsupport::atoms_for({"a", "b"}, {"p"});
  for (int k = 0; k < 200; ++k) {
    auto body = testsupport::random_body(rng, atoms, 1 + static_cast<int>(rng() % 12));
    auto nnf = to_nnf(body);
    auto core = expand_sugar(body);
    CHECK(atoms_of(nnf) == atoms_of(body));
    CHECK(atoms_of(core) == atoms_of(body));
    for (int j = 0; j < 50; ++j) {
      auto w = testsupport::random_word(rng, atoms.size(), 3, 3);
      bool v = eval_ltl(body, atoms, w);
      INFO(to_string(body));
      CHECK(eval_ltl(nnf, atoms, w) == v);
      CHECK(eval_ltl(core, atoms, w) == v);
    }
  }
}
