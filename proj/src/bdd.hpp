#pragma once

// Minimal reduced ordered BDDs over at most 64 variables, used for edge
// labels during automaton construction. Variable k is cube bit k.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hyperfol/automaton.hpp"

namespace hyperfol {

class Bdd {
 public:
  using Ref = std::uint32_t;
  static constexpr Ref kFalse = 0;
  static constexpr Ref kTrue = 1;

  explicit Bdd(unsigned nvars);

  Ref var(unsigned v);
  Ref lnot(Ref f);
  Ref land(Ref f, Ref g);
  Ref lor(Ref f, Ref g) { return lnot(land(lnot(f), lnot(g))); }
  Ref diff(Ref f, Ref g) { return land(f, lnot(g)); }
  Ref cube(const Cube& c);

  /// Irredundant sum-of-products cover of f (Minato-Morreale).
  std::vector<Cube> isop(Ref f);

 private:
  struct Node {
    unsigned var;
    Ref lo, hi;
  };
  struct IsopResult {
    std::vector<Cube> cubes;
    Ref cover;
  };

  Ref mk(unsigned var, Ref lo, Ref hi);
  unsigned top(Ref f) const { return nodes_[f].var; }
  Ref lo(Ref f, unsigned v) const { return top(f) == v ? nodes_[f].lo : f; }
  Ref hi(Ref f, unsigned v) const { return top(f) == v ? nodes_[f].hi : f; }
  IsopResult isop(Ref lower, Ref upper);

  static std::uint64_t key(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }

  unsigned nvars_;
  std::vector<Node> nodes_;
  std::vector<std::unordered_map<std::uint64_t, Ref>> unique_;  // per variable, keyed by (lo, hi)
  std::unordered_map<std::uint64_t, Ref> and_cache_;
  std::unordered_map<Ref, Ref> not_cache_;
  std::unordered_map<std::uint64_t, IsopResult> isop_cache_;
};

}  // namespace hyperfol
