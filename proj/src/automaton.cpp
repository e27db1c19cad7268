#include "hyperfol/automaton.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "bdd.hpp"
#include "hyperfol/error.hpp"

namespace hyperfol {

std::vector<std::size_t> SymbolicAutomaton::bad_states() const {
  std::vector<std::size_t> out;
  if (kind != AutomatonKind::Safety) return out;
  for (std::size_t q = 0; q < num_states; ++q)
    if (marked[q]) out.push_back(q);
  return out;
}

std::vector<std::size_t> SymbolicAutomaton::accepting_states() const {
  std::vector<std::size_t> out;
  if (kind != AutomatonKind::Buchi) return out;
  for (std::size_t q = 0; q < num_states; ++q)
    if (marked[q]) out.push_back(q);
  return out;
}

std::vector<std::vector<std::size_t>> SymbolicAutomaton::outgoing() const {
  std::vector<std::vector<std::size_t>> out(num_states);
  for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].source].push_back(e);
  return out;
}

std::vector<Cube> complement(const std::vector<Cube>& cubes) {
  Bdd bdd(64);
  Bdd::Ref covered = Bdd::kFalse;
  for (const auto& c : cubes) covered = bdd.lor(covered, bdd.cube(c));
  return bdd.isop(bdd.lnot(covered));
}

namespace {

using Obligations = std::vector<int>;  // sorted ids of interned formulas

void collect_eventualities(const Ltl& f, std::vector<Ltl>& out) {
  if (f->op == Op::Until || f->op == Op::Eventually) {
    bool known = std::any_of(out.begin(), out.end(), [&](const Ltl& g) { return equal(f, g); });
    if (!known) out.push_back(f);
  }
  if (f->lhs) collect_eventualities(f->lhs, out);
  if (f->rhs) collect_eventualities(f->rhs, out);
}

bool is_propositional(const Ltl& f) {
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return true;
    case Op::Not:
      return f->lhs->op == Op::Atom;
    case Op::And:
    case Op::Or:
      return is_propositional(f->lhs) && is_propositional(f->rhs);
    default:
      return false;
  }
}

// One way to satisfy a set of obligations now: the letters allowed, what is
// owed from the next position on, and which eventualities were put off.
// `guard` is the label as a formula, before dominance reduction.
struct Term {
  Bdd::Ref label;
  Obligations next;
  std::vector<int> postponed;
  Ltl guard;
};

Ltl guard_and(const Ltl& a, const Ltl& b) {
  if (a->op == Op::True || b->op == Op::False) return b;
  if (b->op == Op::True || a->op == Op::False) return a;
  return ltl::land(a, b);
}

Ltl guard_or(const Ltl& a, const Ltl& b) {
  if (a->op == Op::False || b->op == Op::True || a == b) return b;
  if (b->op == Op::False || a->op == Op::True) return a;
  return ltl::lor(a, b);
}

template <class T>
std::vector<T> sorted_union(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <class T>
bool subset(const std::vector<T>& small, const std::vector<T>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

class Tableau {
 public:
  Tableau(const std::vector<AtomId>& atoms, std::vector<Ltl> eventualities)
      : atoms_(atoms), eventualities_(std::move(eventualities)), bdd_(static_cast<unsigned>(atoms.size())) {}

  std::size_t num_eventualities() const { return eventualities_.size(); }
  Bdd& bdd() { return bdd_; }
  const Ltl& formula(int id) const { return formulas_[static_cast<std::size_t>(id)]; }

  /// Obligations for a set of formulas; nullopt if one of them is false.
  std::optional<Obligations> obligations(const std::vector<Ltl>& fs) {
    Obligations out;
    for (const auto& f : fs) {
      if (f->op == Op::True) continue;
      if (f->op == Op::False) return std::nullopt;
      out.push_back(intern(f));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Term> expand(const Obligations& state) {
    std::vector<Term> acc = always_;
    for (int id : state) {
      acc = product(acc, terms_of(id));
      if (acc.empty()) break;
    }
    return acc;
  }

  std::string name(const Obligations& obs) const {
    std::string k;
    for (int id : obs) {
      if (!k.empty()) k += " & ";
      k += to_string(formula(id));
    }
    return k.empty() ? "1" : k;
  }

 private:
  int intern(const Ltl& f) {
    auto [it, fresh] = ids_.emplace(to_string(f), static_cast<int>(formulas_.size()));
    if (fresh) formulas_.push_back(f);
    return it->second;
  }

  int eventuality_index(const Ltl& f) const {
    for (std::size_t i = 0; i < eventualities_.size(); ++i)
      if (equal(eventualities_[i], f)) return static_cast<int>(i);
    throw std::logic_error("unknown eventuality");
  }

  const std::vector<Term>& terms_of(int id) {
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    Ltl f = formula(id);  // formulas_ may grow while computing
    auto terms = compute(f);
    return memo_.emplace(id, std::move(terms)).first->second;
  }

  const std::vector<Term>& terms_of(const Ltl& f) {
    if (f->op == Op::True) return always_;
    return terms_of(intern(f));
  }

  Term defer(const Ltl& f, bool postpone) {
    Term t{Bdd::kTrue, {intern(f)}, {}, ltl::tt()};
    if (postpone) t.postponed.push_back(eventuality_index(f));
    return t;
  }

  std::vector<Term> compute(const Ltl& f) {
    if (is_propositional(f)) {
      Bdd::Ref l = prop(f);
      if (l == Bdd::kFalse) return {};
      return {Term{l, {}, {}, f}};
    }
    switch (f->op) {
      case Op::And:
        return product(terms_of(f->lhs), terms_of(f->rhs));
      case Op::Or:
        return merge(concat(terms_of(f->lhs), terms_of(f->rhs)));
      case Op::Next:
        if (f->lhs->op == Op::False) return {};
        if (f->lhs->op == Op::True) return always_;
        return {Term{Bdd::kTrue, {intern(f->lhs)}, {}, ltl::tt()}};
      case Op::Globally:
        return product(terms_of(f->lhs), {defer(f, false)});
      case Op::Until:
        return merge(concat(terms_of(f->rhs), product(terms_of(f->lhs), {defer(f, true)})));
      case Op::Eventually:
        return merge(concat(terms_of(f->lhs), {defer(f, true)}));
      case Op::WeakUntil:
        return merge(concat(terms_of(f->rhs), product(terms_of(f->lhs), {defer(f, false)})));
      case Op::Release:
        return product(terms_of(f->rhs), merge(concat(terms_of(f->lhs), {defer(f, false)})));
      default:
        throw std::logic_error("tableau expects NNF");
    }
  }

  Bdd::Ref prop(const Ltl& f) {
    switch (f->op) {
      case Op::True: return Bdd::kTrue;
      case Op::False: return Bdd::kFalse;
      case Op::Atom: return bdd_.var(atom_bit(f->atom));
      case Op::Not: return bdd_.lnot(prop(f->lhs));
      case Op::And: return bdd_.land(prop(f->lhs), prop(f->rhs));
      case Op::Or: return bdd_.lor(prop(f->lhs), prop(f->rhs));
      default: throw std::logic_error("not propositional");
    }
  }

  unsigned atom_bit(const AtomId& a) const {
    auto it = std::find(atoms_.begin(), atoms_.end(), a);
    if (it == atoms_.end()) throw std::invalid_argument("atom " + a.ap + "_" + a.var + " not in alphabet");
    return static_cast<unsigned>(it - atoms_.begin());
  }

  static std::vector<Term> concat(std::vector<Term> a, const std::vector<Term>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  std::vector<Term> product(const std::vector<Term>& a, const std::vector<Term>& b) {
    std::vector<Term> out;
    for (const auto& x : a)
      for (const auto& y : b) {
        Bdd::Ref l = bdd_.land(x.label, y.label);
        if (l == Bdd::kFalse) continue;
        out.push_back(Term{l, sorted_union(x.next, y.next), sorted_union(x.postponed, y.postponed),
                           guard_and(x.guard, y.guard)});
      }
    return merge(std::move(out));
  }

  // Joins terms with equal successor data, then removes from each label the
  // letters already served by a term owing less.
  std::vector<Term> merge(std::vector<Term> terms) {
    std::vector<Term> out;
    std::map<std::pair<Obligations, std::vector<int>>, std::size_t> index;
    for (auto& t : terms) {
      auto [it, fresh] = index.emplace(std::make_pair(t.next, t.postponed), out.size());
      if (fresh) out.push_back(std::move(t));
      else {
        out[it->second].label = bdd_.lor(out[it->second].label, t.label);
        out[it->second].guard = guard_or(out[it->second].guard, t.guard);
      }
    }
    std::vector<Bdd::Ref> reduced(out.size());
    for (std::size_t b = 0; b < out.size(); ++b) {
      Bdd::Ref better = Bdd::kFalse;
      for (std::size_t a = 0; a < out.size(); ++a)
        if (a != b && subset(out[a].next, out[b].next) && subset(out[a].postponed, out[b].postponed))
          better = bdd_.lor(better, out[a].label);
      reduced[b] = bdd_.diff(out[b].label, better);
    }
    std::vector<Term> kept;
    for (std::size_t b = 0; b < out.size(); ++b) {
      if (reduced[b] == Bdd::kFalse) continue;
      out[b].label = reduced[b];
      kept.push_back(std::move(out[b]));
    }
    return kept;
  }

  const std::vector<AtomId>& atoms_;
  std::vector<Ltl> eventualities_;
  Bdd bdd_;
  std::unordered_map<std::string, int> ids_;
  std::vector<Ltl> formulas_;
  std::unordered_map<int, std::vector<Term>> memo_;
  const std::vector<Term> always_ = {Term{Bdd::kTrue, {}, {}, ltl::tt()}};
};

struct TableauGraph {
  std::vector<std::string> names;
  struct TEdge {
    std::size_t source;
    std::vector<Cube> cubes;
    std::size_t target;
    std::vector<int> postponed;
    Ltl guard;
  };
  std::vector<TEdge> edges;  // one per expansion term
  std::vector<bool> dead;  // no successor at all
  std::size_t eventualities = 0;
  bool empty = false;  // the body itself is false
};

std::vector<AtomId> merged_atoms(const Ltl& body, const std::vector<AtomId>& atoms) {
  std::set<AtomId> all(atoms.begin(), atoms.end());
  for (const auto& a : atoms_of(body)) all.insert(a);
  if (all.size() > 64) throw TooManyAtoms(all.size());
  return {all.begin(), all.end()};
}

TableauGraph build_tableau(const Ltl& body, const std::vector<AtomId>& atoms) {
  std::vector<Ltl> ev;
  collect_eventualities(body, ev);
  Tableau tab(atoms, ev);
  TableauGraph g;
  g.eventualities = ev.size();
  std::map<Obligations, std::size_t> ids;
  std::vector<Obligations> states;
  std::deque<std::size_t> work;
  auto add = [&](Obligations obs) {
    auto [it, fresh] = ids.emplace(obs, states.size());
    if (fresh) {
      g.names.push_back(tab.name(obs));
      g.dead.push_back(false);
      states.push_back(std::move(obs));
      work.push_back(it->second);
    }
    return it->second;
  };
  auto init = tab.obligations({body});
  if (!init) {
    // A false body: one state with nothing to expand.
    g.names.push_back("0");
    g.dead.push_back(true);
    return g;
  }
  add(*init);
  while (!work.empty()) {
    std::size_t s = work.front();
    work.pop_front();
    auto terms = tab.expand(states[s]);
    if (terms.empty()) g.dead[s] = true;
    for (auto& t : terms) {
      std::size_t target = add(t.next);
      g.edges.push_back({s, tab.bdd().isop(t.label), target, t.postponed, t.guard});
    }
  }
  return g;
}

using GuardMap = std::map<std::pair<std::size_t, std::size_t>, Ltl>;

void add_guard(GuardMap& m, std::size_t source, std::size_t target, const Ltl& f) {
  auto [it, fresh] = m.emplace(std::make_pair(source, target), f);
  if (!fresh) it->second = guard_or(it->second, f);
}

std::vector<Guard> flatten(const GuardMap& m) {
  std::vector<Guard> out;
  for (const auto& [key, f] : m) out.push_back({key.first, key.second, f});
  return out;
}

// Keeps only states selected by `keep`, renumbering in index order.
SymbolicAutomaton restrict_states(const SymbolicAutomaton& a, const std::vector<bool>& keep) {
  SymbolicAutomaton out;
  out.kind = a.kind;
  out.atoms = a.atoms;
  std::vector<std::size_t> remap(a.num_states, SIZE_MAX);
  for (std::size_t q = 0; q < a.num_states; ++q) {
    if (!keep[q]) continue;
    remap[q] = out.num_states++;
    out.marked.push_back(a.marked[q]);
    out.names.push_back(a.names[q]);
  }
  for (auto q : a.initial)
    if (keep[q]) out.initial.push_back(remap[q]);
  for (const auto& e : a.edges)
    if (keep[e.source] && keep[e.target]) out.edges.push_back({remap[e.source], e.label, remap[e.target]});
  for (const auto& g : a.guards)
    if (keep[g.source] && keep[g.target]) out.guards.push_back({remap[g.source], remap[g.target], g.formula});
  return out;
}

SymbolicAutomaton prune_dead_ends(SymbolicAutomaton a) {
  for (;;) {
    std::vector<bool> has_succ(a.num_states, false);
    for (const auto& e : a.edges) has_succ[e.source] = true;
    if (std::all_of(has_succ.begin(), has_succ.end(), [](bool b) { return b; })) return a;
    a = restrict_states(a, has_succ);
  }
}

std::vector<std::vector<std::size_t>> successors(const SymbolicAutomaton& a) {
  std::vector<std::vector<std::size_t>> out(a.num_states);
  for (const auto& e : a.edges) out[e.source].push_back(e.target);
  return out;
}

std::vector<bool> reach_from(const std::vector<std::vector<std::size_t>>& succ,
                             const std::vector<std::size_t>& starts) {
  std::vector<bool> seen(succ.size(), false);
  std::deque<std::size_t> work;
  for (auto s : starts)
    if (!seen[s]) {
      seen[s] = true;
      work.push_back(s);
    }
  while (!work.empty()) {
    auto s = work.front();
    work.pop_front();
    for (auto t : succ[s])
      if (!seen[t]) {
        seen[t] = true;
        work.push_back(t);
      }
  }
  return seen;
}

// Adds a single absorbing bad sink and routes every uncovered letter to it.
SymbolicAutomaton complete_with_sink(SymbolicAutomaton a, const std::vector<bool>& dead) {
  // Dead states collapse into the sink.
  std::vector<bool> live(a.num_states);
  for (std::size_t q = 0; q < a.num_states; ++q) live[q] = !dead[q];
  std::vector<std::size_t> remap(a.num_states, SIZE_MAX);
  SymbolicAutomaton out;
  out.kind = AutomatonKind::Safety;
  out.atoms = a.atoms;
  for (std::size_t q = 0; q < a.num_states; ++q) {
    if (!live[q]) continue;
    remap[q] = out.num_states++;
    out.names.push_back(a.names[q]);
    out.marked.push_back(false);
  }
  const std::size_t sink = out.num_states;
  bool need_sink = std::any_of(dead.begin(), dead.end(), [](bool d) { return d; });
  auto target = [&](std::size_t q) { return live[q] ? remap[q] : sink; };
  std::vector<std::vector<Cube>> labels(out.num_states);
  for (const auto& e : a.edges) {
    if (!live[e.source]) continue;
    out.edges.push_back({remap[e.source], e.label, target(e.target)});
    labels[remap[e.source]].push_back(e.label);
  }
  // Guards are kept when the input has them (an edgeless input trivially does).
  const bool track = !a.guards.empty() || a.edges.empty();
  GuardMap guards;
  std::vector<Ltl> covered(out.num_states, ltl::ff());
  for (const auto& g : a.guards) {
    if (!live[g.source]) continue;
    add_guard(guards, remap[g.source], target(g.target), g.formula);
    covered[remap[g.source]] = guard_or(covered[remap[g.source]], g.formula);
  }
  for (std::size_t q = 0; q < labels.size(); ++q) {
    auto rest = complement(labels[q]);
    for (const auto& c : rest) out.edges.push_back({q, c, sink});
    if (rest.empty()) continue;
    need_sink = true;
    if (track) add_guard(guards, q, sink, to_nnf(ltl::lnot(covered[q])));
  }
  for (auto q : a.initial) {
    std::size_t t = target(q);
    if (std::find(out.initial.begin(), out.initial.end(), t) == out.initial.end()) out.initial.push_back(t);
  }
  if (need_sink) {
    out.num_states++;
    out.names.push_back("bad");
    out.marked.push_back(true);
    out.edges.push_back({sink, Cube{}, sink});
    if (track) add_guard(guards, sink, sink, ltl::tt());
  }
  out.guards = flatten(guards);
  return out;
}

}  // namespace

SymbolicAutomaton ltl_to_nba(const Ltl& nnf_body, const std::vector<AtomId>& atoms) {
  auto all_atoms = merged_atoms(nnf_body, atoms);
  auto g = build_tableau(nnf_body, all_atoms);
  const std::size_t k = g.eventualities;

  // Degeneralize: state (s, level), level k marks completion of a round.
  SymbolicAutomaton nba;
  nba.kind = AutomatonKind::Buchi;
  nba.atoms = all_atoms;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
  std::deque<std::pair<std::size_t, std::size_t>> work;
  auto intern = [&](std::size_t s, std::size_t level) {
    auto [it, fresh] = ids.emplace(std::make_pair(s, level), nba.num_states);
    if (fresh) {
      nba.num_states++;
      nba.marked.push_back(level == k);
      nba.names.push_back(k == 0 ? g.names[s] : g.names[s] + " @" + std::to_string(level));
      work.emplace_back(s, level);
    }
    return it->second;
  };
  std::vector<std::vector<std::size_t>> out_edges(g.names.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) out_edges[g.edges[e].source].push_back(e);

  GuardMap guards;
  nba.initial.push_back(intern(0, 0));
  while (!work.empty()) {
    auto [s, level] = work.front();
    work.pop_front();
    std::size_t from = ids.at({s, level});
    for (auto ei : out_edges[s]) {
      const auto& e = g.edges[ei];
      std::size_t l = level == k ? 0 : level;
      while (l < k && !std::binary_search(e.postponed.begin(), e.postponed.end(), static_cast<int>(l))) ++l;
      std::size_t to = intern(e.target, l);
      for (const auto& c : e.cubes) nba.edges.push_back({from, c, to});
      add_guard(guards, from, to, e.guard);
    }
  }
  nba.guards = flatten(guards);
  return prune_dead_ends(std::move(nba));
}

bool is_syntactically_safe(const Ltl& f) {
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return true;
    case Op::Not:
      return f->lhs->op == Op::Atom;
    case Op::And:
    case Op::Or:
    case Op::WeakUntil:
    case Op::Release:
      return is_syntactically_safe(f->lhs) && is_syntactically_safe(f->rhs);
    case Op::Next:
    case Op::Globally:
      return is_syntactically_safe(f->lhs);
    default:
      return false;
  }
}

SymbolicAutomaton to_safety_automaton(const Ltl& nnf_body, const std::vector<AtomId>& atoms) {
  if (!is_syntactically_safe(nnf_body)) throw NotSyntacticallySafe();
  auto all_atoms = merged_atoms(nnf_body, atoms);
  auto g = build_tableau(nnf_body, all_atoms);
  SymbolicAutomaton raw;
  raw.kind = AutomatonKind::Safety;
  raw.atoms = all_atoms;
  raw.num_states = g.names.size();
  raw.initial = {0};
  raw.names = g.names;
  raw.marked.assign(raw.num_states, false);
  GuardMap guards;
  for (const auto& e : g.edges) {
    for (const auto& c : e.cubes) raw.edges.push_back({e.source, c, e.target});
    add_guard(guards, e.source, e.target, e.guard);
  }
  raw.guards = flatten(guards);
  return complete_with_sink(std::move(raw), g.dead);
}

SymbolicAutomaton safety_closure(const SymbolicAutomaton& nba) {
  if (nba.kind != AutomatonKind::Buchi) throw KindMismatch("safety_closure expects a Buchi automaton");
  auto succ = successors(nba);
  // States on an accepting cycle, then everything that can reach one.
  std::vector<std::size_t> good;
  for (std::size_t q = 0; q < nba.num_states; ++q) {
    if (!nba.marked[q]) continue;
    auto r = reach_from(succ, succ[q]);
    if (r[q]) good.push_back(q);
  }
  std::vector<std::vector<std::size_t>> pred(nba.num_states);
  for (const auto& e : nba.edges) pred[e.target].push_back(e.source);
  auto productive = reach_from(pred, good);
  SymbolicAutomaton kept = restrict_states(nba, productive);
  kept.kind = AutomatonKind::Safety;
  std::fill(kept.marked.begin(), kept.marked.end(), false);
  if (kept.initial.empty()) {
    // Empty language: a lone bad initial state.
    SymbolicAutomaton out;
    out.kind = AutomatonKind::Safety;
    out.atoms = nba.atoms;
    out.num_states = 1;
    out.initial = {0};
    out.marked = {true};
    out.names = {"bad"};
    out.edges.push_back({0, Cube{}, 0});
    out.guards.push_back({0, 0, ltl::tt()});
    return out;
  }
  return complete_with_sink(std::move(kept), std::vector<bool>(kept.num_states, false));
}

SymbolicAutomaton safety_to_buchi(const SymbolicAutomaton& nsa) {
  if (nsa.kind != AutomatonKind::Safety) throw KindMismatch("safety_to_buchi expects a safety automaton");
  std::vector<bool> keep(nsa.num_states);
  for (std::size_t q = 0; q < nsa.num_states; ++q) keep[q] = !nsa.marked[q];
  auto out = restrict_states(nsa, keep);
  out.kind = AutomatonKind::Buchi;
  std::fill(out.marked.begin(), out.marked.end(), true);
  return out;
}

std::optional<LassoRun> find_accepting_run(const SymbolicAutomaton& aut, const LassoWord& word) {
  if (word.loop.empty()) throw EmptyLoop();
  const std::size_t npos = word.length();
  const std::size_t stem = word.stem.size();
  const std::size_t total = aut.num_states * npos;
  if (total == 0) return std::nullopt;
  auto node = [&](std::size_t q, std::size_t p) { return q * npos + p; };
  auto next_pos = [&](std::size_t p) { return p + 1 < npos ? p + 1 : stem; };
  const bool safety = aut.kind == AutomatonKind::Safety;
  auto allowed = [&](std::size_t q) { return !(safety && aut.marked[q]); };
  auto target = [&](std::size_t q) { return safety ? allowed(q) : aut.marked[q]; };

  auto out = aut.outgoing();
  auto succ_of = [&](std::size_t n) {
    std::vector<std::size_t> res;
    std::size_t q = n / npos, p = n % npos;
    Letter l = word.at(p);
    for (auto ei : out[q]) {
      const auto& e = aut.edges[ei];
      if (e.label.matches(l) && allowed(e.target)) res.push_back(node(e.target, next_pos(p)));
    }
    std::sort(res.begin(), res.end());
    res.erase(std::unique(res.begin(), res.end()), res.end());
    return res;
  };

  std::vector<std::size_t> parent(total, SIZE_MAX);
  std::vector<bool> seen(total, false);
  std::vector<std::size_t> order;
  std::deque<std::size_t> work;
  for (auto q : aut.initial) {
    if (!allowed(q)) continue;
    auto n = node(q, 0);
    if (!seen[n]) {
      seen[n] = true;
      work.push_back(n);
    }
  }
  while (!work.empty()) {
    auto n = work.front();
    work.pop_front();
    order.push_back(n);
    for (auto m : succ_of(n))
      if (!seen[m]) {
        seen[m] = true;
        parent[m] = n;
        work.push_back(m);
      }
  }

  for (auto c : order) {
    if (!target(c / npos)) continue;
    // Shortest cycle through c.
    std::vector<std::size_t> back(total, SIZE_MAX);
    std::vector<bool> vis(total, false);
    std::deque<std::size_t> q;
    bool closed = false;
    std::size_t last = SIZE_MAX;
    for (auto m : succ_of(c)) {
      if (m == c) {
        closed = true;
        last = c;
        break;
      }
      if (!vis[m]) {
        vis[m] = true;
        back[m] = c;
        q.push_back(m);
      }
    }
    while (!closed && !q.empty()) {
      auto n = q.front();
      q.pop_front();
      for (auto m : succ_of(n)) {
        if (m == c) {
          closed = true;
          last = n;
          break;
        }
        if (!vis[m]) {
          vis[m] = true;
          back[m] = n;
          q.push_back(m);
        }
      }
    }
    if (!closed) continue;
    LassoRun run;
    for (std::size_t n = parent[c]; n != SIZE_MAX; n = parent[n]) run.stem.push_back(n / npos);
    std::reverse(run.stem.begin(), run.stem.end());
    std::vector<std::size_t> cyc;
    if (last != c)
      for (std::size_t n = last; n != c; n = back[n]) cyc.push_back(n / npos);
    cyc.push_back(c / npos);
    std::reverse(cyc.begin(), cyc.end());
    run.loop = std::move(cyc);
    return run;
  }
  return std::nullopt;
}

bool accepts_lasso(const SymbolicAutomaton& aut, const std::vector<Letter>& stem,
                   const std::vector<Letter>& loop) {
  if (loop.empty()) throw EmptyLoop();
  return find_accepting_run(aut, LassoWord{stem, loop}).has_value();
}

std::string to_string(const Cube& c, const std::vector<AtomId>& atoms) {
  if (c.empty()) return "t";
  std::string out;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    Letter bit = Letter{1} << k;
    if (!((c.pos | c.neg) & bit)) continue;
    if (!out.empty()) out += "&";
    if (c.neg & bit) out += "!";
    out += std::to_string(k);
  }
  return out;
}

std::string to_hoa(const SymbolicAutomaton& aut) {
  std::ostringstream os;
  os << "HOA: v1\n";
  os << "States: " << aut.num_states << "\n";
  for (auto q : aut.initial) os << "Start: " << q << "\n";
  os << "AP: " << aut.atoms.size();
  for (const auto& a : aut.atoms) os << " \"" << a.ap << "_" << a.var << "\"";
  os << "\n";
  os << (aut.kind == AutomatonKind::Buchi ? "acc-name: Buchi\n" : "acc-name: safety (bad states)\n");
  os << "--BODY--\n";
  auto out = aut.outgoing();
  for (std::size_t q = 0; q < aut.num_states; ++q) {
    os << "State: " << q;
    if (aut.marked[q]) os << (aut.kind == AutomatonKind::Buchi ? " {0}" : " {bad}");
    os << " \"" << aut.names[q] << "\"\n";
    for (auto ei : out[q]) os << "  [" << to_string(aut.edges[ei].label, aut.atoms) << "] " << aut.edges[ei].target << "\n";
  }
  os << "--END--\n";
  return os.str();
}

}  // namespace hyperfol
