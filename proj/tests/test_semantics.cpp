#include "doctest.h"
#include "hyperfol/error.hpp"
#include "hyperfol/semantics.hpp"
#include "test_support.hpp"

using namespace hyperfol;

namespace {

LassoTraceSet set_of(std::vector<std::string> aps, std::vector<LassoTrace> traces) {
  return LassoTraceSet{std::move(aps), std::move(traces)};
}

HyperFormula unsat0() {
  return parse(R"(forall p1. exists p2. exists p3.
                  "a"_p3 & G ("a"_p1 -> X "a"_p2) & G !"a"_p1)");
}

HyperFormula enforce_model(unsigned n, unsigned b) {
  HyperFormula phi;
  std::vector<Ltl> parts;
  for (unsigned i = 1; i <= n; ++i) phi.prefix.push_back({Quantifier::Exists, "p" + std::to_string(i)});
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j)
      if (i != j)
        parts.push_back(bounded_eventually(
            b, ltl::xor_(ltl::atom("a", "p" + std::to_string(i)), ltl::atom("a", "p" + std::to_string(j)))));
  phi.body = ltl::conj(parts);
  return phi;
}

}  // namespace

TEST_CASE("eval_hyperltl examples") {
  auto all_a = parse(R"(forall p. G "a"_p)");
  CHECK(eval_hyperltl(all_a, set_of({"a"}, {LassoTrace{{}, {1}}})));
  CHECK_FALSE(eval_hyperltl(all_a, set_of({"a"}, {LassoTrace{{1}, {0}}})));

  std::mt19937_64 rng(3);
  auto u0 = unsat0();
  for (int k = 0; k < 30; ++k) {
    LassoTraceSet t{{"a"}, {}};
    for (std::size_t n = 1 + rng() % 3; n > 0; --n) t.traces.push_back(testsupport::random_word(rng, 1, 2, 2));
    CHECK_FALSE(eval_hyperltl(u0, t));
  }

  auto gni = parse(R"(forall p1. forall p2. exists p3.
      G (("l"_p1 <-> "l"_p3) & ("o"_p1 <-> "o"_p3)) & G ("h"_p2 <-> "h"_p3))");
  for (Letter l = 0; l < 8; ++l) CHECK(eval_hyperltl(gni, set_of({"h", "l", "o"}, {LassoTrace{{}, {l}}})));

  CHECK_THROWS_AS(eval_hyperltl(all_a, set_of({"a"}, {})), EmptyTraceSet);
}

TEST_CASE("alignment and canonical form") {
  auto w = align({LassoWord{{1}, {0, 1}}, LassoWord{{}, {1, 1, 0}}});
  CHECK(w[0].stem.size() == 1);
  CHECK(w[0].loop.size() == 6);
  CHECK(w[1].loop.size() == 6);
  CHECK(canonical(LassoWord{{1, 0, 1}, {0, 1, 0, 1}}) == LassoWord{{}, {1, 0}});
  CHECK(canonical(LassoWord{{0, 0, 1}, {0, 1, 0, 1}}) == LassoWord{{0}, {0, 1}});
  CHECK_THROWS_AS(align({LassoWord{{}, {}}}), EmptyLoop);
  std::vector<LassoWord> big;
  for (std::size_t p : {1021u, 1031u, 1033u}) big.push_back(LassoWord{{}, std::vector<Letter>(p, 0)});
  CHECK_THROWS_AS(align(big), LcmOverflow);
}

TEST_CASE("eval is invariant under loop unrolling") {
  std::mt19937_64 rng(5);
  auto atoms = testsupport::atoms_for({"a", "b"}, {"p", "q"});
  for (int k = 0; k < 100; ++k) {
    HyperFormula phi;
    phi.prefix = {{rng() % 2 ? Quantifier::Forall : Quantifier::Exists, "p"},
                  {rng() % 2 ? Quantifier::Forall : Quantifier::Exists, "q"}};
    phi.body = testsupport::random_body(rng, atoms, 1 + static_cast<int>(rng() % 10));
    LassoTraceSet t{{"a", "b"}, {}};
    for (std::size_t n = 1 + rng() % 3; n > 0; --n) t.traces.push_back(testsupport::random_word(rng, 2, 2, 3));
    bool v = eval_hyperltl(phi, t);
    for (auto& tr : t.traces) {
      auto l = tr.loop;
      tr.loop.insert(tr.loop.end(), l.begin(), l.end());
    }
    CHECK(eval_hyperltl(phi, t) == v);
  }
}

TEST_CASE("bounded_find_model examples") {
  auto r2 = bounded_find_model(enforce_model(2, 1), {3, 2, 2});
  REQUIRE(r2.found);
  REQUIRE(r2.model.traces.size() == 2);
  CHECK((r2.model.traces[0].at(0) & 1) != (r2.model.traces[1].at(0) & 1));

  auto r3 = bounded_find_model(enforce_model(3, 1), {3, 2, 2});
  CHECK_FALSE(r3.found);

  auto single = bounded_find_model(parse(R"(exists p. "a"_p)"), {1, 0, 1});
  REQUIRE(single.found);
  REQUIRE(single.model.traces.size() == 1);
  CHECK(single.model.traces[0] == LassoTrace{{}, {1}});
  CHECK(format_model(single.model) == "trace 0: | {a}\n");
}

TEST_CASE("oracle finds nothing for unsat(2) at the stated bounds") {
  auto phi = parse(R"(forall p1. exists p2. exists p3.
                      "a"_p3 & G ("a"_p1 -> X "a"_p2) & X X G !"a"_p1)");
  auto r = bounded_find_model(phi, {3, 4, 3});
  CHECK_FALSE(r.found);
}

TEST_CASE("format_trace") {
  CHECK(format_trace(LassoTrace{{3, 0}, {1}}, {"a", "b"}) == "{a,b} {} | {a}");
}
