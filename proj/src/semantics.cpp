#include "hyperfol/semantics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "hyperfol/error.hpp"

namespace hyperfol {

Letter LassoWord::at(std::size_t i) const {
  if (i < stem.size()) return stem[i];
  return loop[(i - stem.size()) % loop.size()];
}

LassoWord canonical(const LassoWord& w) {
  if (w.loop.empty()) throw EmptyLoop();
  LassoWord out = w;
  const std::size_t n = out.loop.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = out.loop[i] == out.loop[i - p];
    if (periodic) {
      out.loop.resize(p);
      break;
    }
  }
  // Fold the stem into the loop while its last letter matches the loop's last.
  while (!out.stem.empty() && out.stem.back() == out.loop.back()) {
    std::rotate(out.loop.rbegin(), out.loop.rbegin() + 1, out.loop.rend());
    out.stem.pop_back();
  }
  return out;
}

std::vector<LassoWord> align(const std::vector<LassoWord>& words) {
  std::size_t stem = 0, loop = 1;
  for (const auto& w : words) {
    if (w.loop.empty()) throw EmptyLoop();
    stem = std::max(stem, w.stem.size());
    loop = std::lcm(loop, w.loop.size());
    if (loop > kMaxAlignedPositions) throw LcmOverflow();
  }
  if (stem + 2 * loop > kMaxAlignedPositions) throw LcmOverflow();
  std::vector<LassoWord> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    LassoWord a;
    a.stem.reserve(stem);
    a.loop.reserve(loop);
    for (std::size_t i = 0; i < stem; ++i) a.stem.push_back(w.at(i));
    for (std::size_t i = 0; i < loop; ++i) a.loop.push_back(w.at(stem + i));
    out.push_back(std::move(a));
  }
  return out;
}

BodyEvaluator::BodyEvaluator(const Ltl& body, std::vector<AtomId> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.size() > 64) throw TooManyAtoms(atoms_.size());
  compile(body);
}

int BodyEvaluator::compile(const Ltl& f) {
  Node n{f->op};
  if (f->op == Op::Atom) {
    auto it = std::find(atoms_.begin(), atoms_.end(), f->atom);
    if (it == atoms_.end())
      throw std::invalid_argument("atom " + f->atom.ap + "_" + f->atom.var + " not in atom list");
    n.atom = static_cast<int>(it - atoms_.begin());
  }
  if (f->lhs) n.lhs = compile(f->lhs);
  if (f->rhs) n.rhs = compile(f->rhs);
  nodes_.push_back(n);
  return static_cast<int>(nodes_.size()) - 1;
}

bool BodyEvaluator::eval(const LassoWord& word) const {
  if (word.loop.empty()) throw EmptyLoop();
  const std::size_t stem = word.stem.size();
  const std::size_t total = word.length();
  auto succ = [&](std::size_t i) { return i + 1 < total ? i + 1 : stem; };

  std::vector<std::vector<char>> val(nodes_.size(), std::vector<char>(total, 0));
  // Fixpoint of v = base | (step & X v) (or the dual), iterated backwards.
  auto fixpoint = [&](std::vector<char>& v, bool greatest, auto&& update) {
    std::fill(v.begin(), v.end(), greatest ? 1 : 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t k = total; k-- > 0;) {
        char nv = update(k, v[succ(k)]);
        if (nv != v[k]) {
          v[k] = nv;
          changed = true;
        }
      }
    }
  };

  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    auto& v = val[id];
    const std::vector<char>* a = n.lhs >= 0 ? &val[n.lhs] : nullptr;
    const std::vector<char>* b = n.rhs >= 0 ? &val[n.rhs] : nullptr;
    switch (n.op) {
      case Op::True: std::fill(v.begin(), v.end(), 1); break;
      case Op::False: break;
      case Op::Atom:
        for (std::size_t i = 0; i < total; ++i) v[i] = (word.at(i) >> n.atom) & 1U;
        break;
      case Op::Not:
        for (std::size_t i = 0; i < total; ++i) v[i] = !(*a)[i];
        break;
      case Op::And:
        for (std::size_t i = 0; i < total; ++i) v[i] = (*a)[i] && (*b)[i];
        break;
      case Op::Or:
        for (std::size_t i = 0; i < total; ++i) v[i] = (*a)[i] || (*b)[i];
        break;
      case Op::Implies:
        for (std::size_t i = 0; i < total; ++i) v[i] = !(*a)[i] || (*b)[i];
        break;
      case Op::Iff:
        for (std::size_t i = 0; i < total; ++i) v[i] = (*a)[i] == (*b)[i];
        break;
      case Op::Next:
        for (std::size_t i = 0; i < total; ++i) v[i] = (*a)[succ(i)];
        break;
      case Op::Until:
        fixpoint(v, false, [&](std::size_t i, char nx) -> char { return (*b)[i] || ((*a)[i] && nx); });
        break;
      case Op::WeakUntil:
        fixpoint(v, true, [&](std::size_t i, char nx) -> char { return (*b)[i] || ((*a)[i] && nx); });
        break;
      case Op::Release:
        fixpoint(v, true, [&](std::size_t i, char nx) -> char { return (*b)[i] && ((*a)[i] || nx); });
        break;
      case Op::Eventually:
        fixpoint(v, false, [&](std::size_t i, char nx) -> char { return (*a)[i] || nx; });
        break;
      case Op::Globally:
        fixpoint(v, true, [&](std::size_t i, char nx) -> char { return (*a)[i] && nx; });
        break;
    }
  }
  return val.back()[0];
}

bool eval_ltl(const Ltl& body, const std::vector<AtomId>& atoms, const LassoWord& word) {
  return BodyEvaluator(body, atoms).eval(word);
}

std::vector<AtomId> body_atoms(const HyperFormula& phi) {
  auto s = atoms_of(phi.body);
  return {s.begin(), s.end()};
}

namespace {

struct AtomLayout {
  std::size_t var_index;
  std::size_t ap_index;
};

std::vector<AtomLayout> layout(const std::vector<std::string>& universe,
                               const std::vector<std::string>& vars,
                               const std::vector<AtomId>& atoms) {
  std::vector<AtomLayout> out;
  for (const auto& a : atoms) {
    auto vi = std::find(vars.begin(), vars.end(), a.var);
    auto ai = std::find(universe.begin(), universe.end(), a.ap);
    if (vi == vars.end()) throw UnboundVariable(a.var);
    if (ai == universe.end()) throw std::invalid_argument("AP '" + a.ap + "' not in trace universe");
    out.push_back({static_cast<std::size_t>(vi - vars.begin()),
                   static_cast<std::size_t>(ai - universe.begin())});
  }
  return out;
}

LassoWord combine(const std::vector<const LassoTrace*>& traces, const std::vector<AtomLayout>& lay) {
  std::vector<LassoWord> picked;
  picked.reserve(traces.size());
  for (auto* t : traces) picked.push_back(*t);
  auto aligned = align(picked);
  const std::size_t stem = aligned.empty() ? 0 : aligned[0].stem.size();
  const std::size_t loop = aligned.empty() ? 1 : aligned[0].loop.size();
  LassoWord w;
  w.stem.resize(stem);
  w.loop.resize(loop);
  for (std::size_t i = 0; i < stem + loop; ++i) {
    Letter l = 0;
    for (std::size_t k = 0; k < lay.size(); ++k) {
      const auto& tw = aligned[lay[k].var_index];
      if ((tw.at(i) >> lay[k].ap_index) & 1U) l |= Letter{1} << k;
    }
    (i < stem ? w.stem[i] : w.loop[i - stem]) = l;
  }
  return w;
}

std::vector<std::string> sorted_aps(const HyperFormula& phi) {
  auto s = phi.aps();
  return {s.begin(), s.end()};
}

// Quantifier recursion over indices into some trace pool.
class TupleEvaluator {
 public:
  TupleEvaluator(const HyperFormula& phi, std::function<bool(const std::vector<std::size_t>&)> leaf)
      : phi_(phi), leaf_(std::move(leaf)) {}

  bool run(const std::vector<std::size_t>& domain) {
    tuple_.assign(phi_.prefix.size(), 0);
    return rec(0, domain);
  }

 private:
  bool rec(std::size_t depth, const std::vector<std::size_t>& domain) {
    if (depth == phi_.prefix.size()) return leaf_(tuple_);
    const bool forall = phi_.prefix[depth].quantifier == Quantifier::Forall;
    for (std::size_t t : domain) {
      tuple_[depth] = t;
      bool v = rec(depth + 1, domain);
      if (forall && !v) return false;
      if (!forall && v) return true;
    }
    return forall;
  }

  const HyperFormula& phi_;
  std::function<bool(const std::vector<std::size_t>&)> leaf_;
  std::vector<std::size_t> tuple_;
};

}  // namespace

LassoWord combined_word(const LassoTraceSet& set, const std::vector<std::size_t>& tuple,
                        const std::vector<std::string>& vars, const std::vector<AtomId>& atoms) {
  if (atoms.size() > 64) throw TooManyAtoms(atoms.size());
  auto lay = layout(set.ap_universe, vars, atoms);
  std::vector<const LassoTrace*> traces;
  for (auto i : tuple) traces.push_back(&set.traces.at(i));
  return combine(traces, lay);
}

bool eval_hyperltl(const HyperFormula& phi, const LassoTraceSet& set) {
  if (set.traces.empty()) throw EmptyTraceSet();
  validate(phi);
  auto atoms = body_atoms(phi);
  BodyEvaluator body(phi.body, atoms);
  auto lay = layout(set.ap_universe, phi.variables(), atoms);
  std::vector<std::size_t> domain(set.traces.size());
  std::iota(domain.begin(), domain.end(), 0);
  TupleEvaluator ev(phi, [&](const std::vector<std::size_t>& tuple) {
    std::vector<const LassoTrace*> traces;
    for (auto i : tuple) traces.push_back(&set.traces[i]);
    return body.eval(combine(traces, lay));
  });
  return ev.run(domain);
}

OracleResult bounded_find_model(const HyperFormula& phi, const OracleBounds& bounds,
                                std::optional<std::size_t> budget) {
  validate(phi);
  if (bounds.max_traces == 0 || bounds.max_loop == 0)
    throw std::invalid_argument("oracle bounds must be >= 1");
  const auto aps = sorted_aps(phi);
  if (aps.size() > 64) throw TooManyAtoms(aps.size());
  const std::size_t letters_log = aps.size();
  if (letters_log * (bounds.max_stem + bounds.max_loop) > 20)
    throw Error("oracle bounds too large for the AP count");

  // Pool of distinct lassos, cheapest first.
  std::vector<LassoTrace> pool;
  {
    std::map<std::pair<std::vector<Letter>, std::vector<Letter>>, bool> seen;
    const Letter nletters = Letter{1} << letters_log;
    for (std::size_t s = 0; s <= bounds.max_stem; ++s) {
      for (std::size_t l = 1; l <= bounds.max_loop; ++l) {
        std::vector<Letter> digits(s + l, 0);
        for (;;) {
          LassoWord w{{digits.begin(), digits.begin() + s}, {digits.begin() + s, digits.end()}};
          auto c = canonical(w);
          if (seen.emplace(std::make_pair(c.stem, c.loop), true).second) pool.push_back(c);
          std::size_t k = 0;
          while (k < digits.size() && ++digits[k] == nletters) digits[k++] = 0;
          if (k == digits.size()) break;
        }
      }
    }
  }
  const std::size_t unit = std::max<std::size_t>(1, aps.size());
  auto cost = [&](const LassoTrace& t) { return unit * t.length(); };
  std::stable_sort(pool.begin(), pool.end(), [&](const LassoTrace& a, const LassoTrace& b) {
    if (cost(a) != cost(b)) return cost(a) < cost(b);
    if (a.stem.size() != b.stem.size()) return a.stem.size() < b.stem.size();
    return std::tie(a.stem, a.loop) < std::tie(b.stem, b.loop);
  });

  auto atoms = body_atoms(phi);
  BodyEvaluator body(phi.body, atoms);
  LassoTraceSet pool_set{aps, pool};
  auto lay = layout(aps, phi.variables(), atoms);

  std::unordered_map<std::string, bool> cache;
  TupleEvaluator ev(phi, [&](const std::vector<std::size_t>& tuple) {
    std::string key;
    key.reserve(tuple.size() * 4);
    for (auto i : tuple) {
      auto v = static_cast<std::uint32_t>(i);
      key.append(reinterpret_cast<const char*>(&v), sizeof v);
    }
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::vector<const LassoTrace*> traces;
    for (auto i : tuple) traces.push_back(&pool[i]);
    bool v = body.eval(combine(traces, lay));
    if (cache.size() < (std::size_t{1} << 22)) cache.emplace(std::move(key), v);
    return v;
  });

  OracleResult result;
  result.bounds = bounds;
  std::vector<std::size_t> max_costs;
  for (const auto& t : pool) max_costs.push_back(cost(t));
  std::sort(max_costs.rbegin(), max_costs.rend());
  std::size_t max_total = 0;
  for (std::size_t i = 0; i < bounds.max_traces && i < max_costs.size(); ++i) max_total += max_costs[i];

  std::vector<std::size_t> chosen;
  bool stop = false;
  // Subsets (increasing indices) whose costs sum to exactly `remaining`.
  std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t remaining) {
    if (remaining == 0) {
      ++result.candidates;
      if (ev.run(chosen)) return true;
      if (budget && result.candidates >= *budget) stop = true;
      return false;
    }
    if (chosen.size() == bounds.max_traces) return false;
    for (std::size_t i = start; i < pool.size() && !stop; ++i) {
      if (cost(pool[i]) > remaining) break;
      chosen.push_back(i);
      if (dfs(i + 1, remaining - cost(pool[i]))) return true;
      chosen.pop_back();
    }
    return false;
  };

  for (std::size_t total = unit; total <= max_total && !stop; ++total) {
    chosen.clear();
    if (dfs(0, total)) {
      result.found = true;
      result.model.ap_universe = aps;
      for (auto i : chosen) result.model.traces.push_back(pool[i]);
      if (!eval_hyperltl(phi, result.model))
        throw std::logic_error("bounded_find_model: reported model does not satisfy formula");
      return result;
    }
  }
  return result;
}

std::string format_trace(const LassoTrace& t, const std::vector<std::string>& aps) {
  auto letter = [&](Letter l) {
    std::string s = "{";
    bool first = true;
    for (std::size_t k = 0; k < aps.size(); ++k) {
      if (!((l >> k) & 1U)) continue;
      if (!first) s += ",";
      s += aps[k];
      first = false;
    }
    return s + "}";
  };
  std::string out;
  for (auto l : t.stem) out += letter(l) + " ";
  out += "|";
  for (auto l : t.loop) out += " " + letter(l);
  return out;
}

std::string format_model(const LassoTraceSet& set) {
  std::ostringstream os;
  for (std::size_t k = 0; k < set.traces.size(); ++k)
    os << "trace " << k << ": " << format_trace(set.traces[k], set.ap_universe) << "\n";
  return os.str();
}

}  // namespace hyperfol
