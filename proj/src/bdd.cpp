#include "bdd.hpp"

#include <stdexcept>

namespace hyperfol {

Bdd::Bdd(unsigned nvars) : nvars_(nvars), unique_(nvars) {
  if (nvars > 64) throw std::invalid_argument("bdd: more than 64 variables");
  nodes_.push_back({nvars, kFalse, kFalse});
  nodes_.push_back({nvars, kTrue, kTrue});
}

Bdd::Ref Bdd::mk(unsigned var, Ref lo, Ref hi) {
  if (lo == hi) return lo;
  auto [it, fresh] = unique_[var].emplace(key(lo, hi), static_cast<Ref>(nodes_.size()));
  if (fresh) nodes_.push_back({var, lo, hi});
  return it->second;
}

Bdd::Ref Bdd::var(unsigned v) { return mk(v, kFalse, kTrue); }

Bdd::Ref Bdd::lnot(Ref f) {
  if (f <= kTrue) return f ^ 1;
  if (auto it = not_cache_.find(f); it != not_cache_.end()) return it->second;
  Node n = nodes_[f];
  Ref r = mk(n.var, lnot(n.lo), lnot(n.hi));
  not_cache_.emplace(f, r);
  return r;
}

Bdd::Ref Bdd::land(Ref f, Ref g) {
  if (f == kFalse || g == kFalse) return kFalse;
  if (f == kTrue) return g;
  if (g == kTrue || f == g) return f;
  if (f > g) std::swap(f, g);
  auto k = key(f, g);
  if (auto it = and_cache_.find(k); it != and_cache_.end()) return it->second;
  unsigned v = std::min(top(f), top(g));
  Ref r = mk(v, land(lo(f, v), lo(g, v)), land(hi(f, v), hi(g, v)));
  and_cache_.emplace(k, r);
  return r;
}

Bdd::Ref Bdd::cube(const Cube& c) {
  Ref r = kTrue;
  for (unsigned v = nvars_; v-- > 0;) {
    Letter bit = Letter{1} << v;
    if (c.pos & bit) r = mk(v, kFalse, r);
    else if (c.neg & bit) r = mk(v, r, kFalse);
  }
  return r;
}

std::vector<Cube> Bdd::isop(Ref f) { return isop(f, f).cubes; }

Bdd::IsopResult Bdd::isop(Ref lower, Ref upper) {
  if (lower == kFalse) return {{}, kFalse};
  if (upper == kTrue) return {{Cube{}}, kTrue};
  auto k = key(lower, upper);
  if (auto it = isop_cache_.find(k); it != isop_cache_.end()) return it->second;
  unsigned v = std::min(top(lower), top(upper));
  Ref l0 = lo(lower, v), l1 = hi(lower, v), u0 = lo(upper, v), u1 = hi(upper, v);
  IsopResult r0 = isop(diff(l0, u1), u0);
  IsopResult r1 = isop(diff(l1, u0), u1);
  Ref rest = lor(diff(l0, r0.cover), diff(l1, r1.cover));
  IsopResult rs = isop(rest, land(u0, u1));
  IsopResult out;
  const Letter bit = Letter{1} << v;
  for (auto c : r0.cubes) out.cubes.push_back({c.pos, c.neg | bit});
  for (auto c : r1.cubes) out.cubes.push_back({c.pos | bit, c.neg});
  for (auto c : rs.cubes) out.cubes.push_back(c);
  out.cover = lor(mk(v, r0.cover, r1.cover), rs.cover);
  isop_cache_.emplace(k, out);
  return out;
}

}  // namespace hyperfol
