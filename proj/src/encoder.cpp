#include "hyperfol/encoder.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hyperfol/error.hpp"

namespace hyperfol {

std::string to_string(EncodingKind k) {
  switch (k) {
    case EncodingKind::FuncSafety: return "func";
    case EncodingKind::PredSafety: return "pred";
    case EncodingKind::Lia: return "lia";
  }
  return "?";
}

std::string escape_ap(const std::string& ap) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : ap) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) {
      out += static_cast<char>(c);
    } else if (c == '_') {
      out += "__";
    } else {
      out += '_';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

std::string ap_predicate(const std::string& ap) { return "P_" + escape_ap(ap); }
std::string state_predicate(std::size_t q) { return "S_" + std::to_string(q); }

namespace {

using namespace fol;

const char* kTrace = "Trace";
const char* kTime = "Time";
const char* kInt = "Int";

struct Literal {
  AtomId atom;
  bool positive;
};

class Builder {
 public:
  Builder(const HyperFormula& phi, const SymbolicAutomaton& aut, const EncodeOptions& opts, EncodingKind kind)
      : phi_(phi), aut_(aut), opts_(opts), kind_(kind) {
    validate(phi);
    std::set<std::string> aps = phi.aps();
    for (const auto& a : aut.atoms) {
      if (phi.index_of(a.var) < 0) throw UnboundVariable(a.var);
      aps.insert(a.ap);
    }
    aps_.assign(aps.begin(), aps.end());
    vars_ = phi.variables();
    time_ = kind == EncodingKind::Lia ? kInt : kTime;
    for (std::size_t j = 0; j < vars_.size(); ++j) xs_.push_back(var("x" + std::to_string(j + 1)));
    if (opts.explicit_alphabet) {
      for (const auto& v : vars_)
        for (const auto& a : aps_) full_.push_back({a, v});
      std::sort(full_.begin(), full_.end());
      if (full_.size() > kMaxExplicitAtoms)
        throw Error("explicit alphabet needs " + std::to_string(full_.size()) + " atoms (limit " +
                    std::to_string(kMaxExplicitAtoms) + ")");
    }
  }

  EncodedProblem problem() {
    classify_states();
    EncodedProblem p;
    p.kind = kind_;
    auto& sig = p.signature;
    sig.sorts.push_back({kTrace, false});
    sig.sorts.push_back(kind_ == EncodingKind::Lia ? Sort{kInt, true} : Sort{kTime, false});
    p.provenance[kTrace] = "sort of traces";
    p.provenance[time_] = "sort of time points";
    if (kind_ != EncodingKind::Lia) {
      sig.functions.push_back({"i0", {}, kTime});
      p.provenance["i0"] = "initial time point";
    }
    sig.functions.push_back({"t0", {}, kTrace});
    p.provenance["t0"] = "witness that the trace sort is nonempty";
    if (kind_ == EncodingKind::FuncSafety) {
      sig.functions.push_back({"succ", {kTime}, kTime});
      p.provenance["succ"] = "successor function on time";
    }
    if (kind_ == EncodingKind::PredSafety) {
      sig.predicates.push_back({"Succ", {kTime, kTime}});
      p.provenance["Succ"] = "successor relation on time";
    }
    for (const auto& ap : aps_) {
      sig.predicates.push_back({ap_predicate(ap), {kTrace, time_}});
      p.provenance[ap_predicate(ap)] = "ap " + ap;
    }
    std::vector<std::string> state_args(vars_.size(), kTrace);
    state_args.push_back(time_);
    for (std::size_t q = 0; q < aut_.num_states; ++q) {
      if (role_[q] != Role::Kept) continue;
      sig.predicates.push_back({state_predicate(q), state_args});
      p.provenance[state_predicate(q)] = "state " + std::to_string(q) + ": " + aut_.names[q];
    }

    std::vector<Formula> matrix;
    // Initial states.
    Term start = kind_ == EncodingKind::Lia ? int_const(0) : app("i0");
    std::vector<Formula> init;
    for (auto q : aut_.initial) {
      switch (role_[q]) {
        case Role::Top: init.push_back(land({})); break;
        case Role::Bad: break;
        case Role::Inlined: init.push_back(step(q, start)); break;
        case Role::Kept: init.push_back(state(q, start)); break;
      }
    }
    matrix.push_back(lor(std::move(init)));

    // Transitions.
    Term i = var("i");
    std::vector<Formula> steps;
    for (std::size_t q = 0; q < aut_.num_states; ++q) {
      if (role_[q] != Role::Kept) continue;
      Formula s = step(q, i);
      if (opts_.simplify && is_true(s)) continue;
      steps.push_back(implies(state(q, i), s));
    }
    if (!steps.empty() || !opts_.simplify) matrix.push_back(forall("i", time_, land(std::move(steps))));

    if (kind_ == EncodingKind::Lia) {
      std::vector<Formula> avoid;
      avoid.push_back(int_less(var("i"), var("j")));
      for (std::size_t q = 0; q < aut_.num_states; ++q)
        if (!aut_.is_accepting(q) && role_[q] == Role::Kept) avoid.push_back(lnot(state(q, var("j"))));
      matrix.push_back(forall("i", kInt, exists("j", kInt, land(std::move(avoid)))));
    } else {
      std::vector<Formula> never;
      for (auto b : aut_.bad_states())
        if (role_[b] == Role::Kept) never.push_back(lnot(state(b, i)));
      if (!never.empty()) matrix.push_back(forall("i", time_, land(std::move(never))));
    }
    if (opts_.simplify) std::erase_if(matrix, is_true);
    Formula body = land(std::move(matrix));
    for (std::size_t j = vars_.size(); j-- > 0;) {
      std::string name = "x" + std::to_string(j + 1);
      body = phi_.prefix[j].quantifier == Quantifier::Forall ? forall(name, kTrace, body)
                                                             : exists(name, kTrace, body);
    }
    if (kind_ == EncodingKind::PredSafety) {
      Formula serial = forall("i", kTime, exists("j", kTime, pred("Succ", {var("i"), var("j")})));
      Formula functional = forall(
          "i", kTime,
          forall("j", kTime,
                 forall("k", kTime,
                        implies(land({pred("Succ", {var("i"), var("j")}), pred("Succ", {var("i"), var("k")})}),
                                equal(var("j"), var("k"))))));
      body = land({serial, functional, body});
    }
    p.formula = body;
    return p;
  }

 private:
  // Kept states get a predicate. With simplification, a non-bad state with an
  // unconditional self-loop (accepting, for Buchi) is true everywhere, a bad
  // state is false everywhere, and a safety initial state without incoming
  // edges only matters at the first time point, so its step is inlined there.
  enum class Role { Kept, Top, Bad, Inlined };

  void classify_states() {
    role_.assign(aut_.num_states, Role::Kept);
    if (!opts_.simplify) return;
    const bool safety = kind_ != EncodingKind::Lia;
    std::vector<bool> entered(aut_.num_states, false);
    for (const auto& e : aut_.edges) entered[e.target] = true;
    for (std::size_t q = 0; q < aut_.num_states; ++q) {
      if (safety && aut_.is_bad(q)) {
        role_[q] = Role::Bad;
        continue;
      }
      bool loop = std::any_of(aut_.edges.begin(), aut_.edges.end(), [&](const Edge& e) {
        return e.source == q && e.target == q && e.label.empty();
      });
      if (loop && (safety || aut_.is_accepting(q))) role_[q] = Role::Top;
    }
    if (safety)
      for (auto q : aut_.initial)
        if (role_[q] == Role::Kept && !entered[q]) role_[q] = Role::Inlined;
  }

  static bool is_true(const Formula& f) { return f->kind == fol::Kind::And && f->children.empty(); }
  static bool is_false(const Formula& f) { return f->kind == fol::Kind::Or && f->children.empty(); }

  // Disjunction over the targets of q: labels at time t and the target at
  // the next time point.
  Formula step(std::size_t q, const Term& t) const {
    // Edges to the same target share one successor atom.
    std::map<std::size_t, std::vector<Formula>> by_target;
    std::map<std::size_t, std::size_t> cube_size;
    for (const auto& e : aut_.edges) {
      if (e.source != q) continue;
      for (const auto& lits : expand(e.label)) {
        std::vector<Formula> parts;
        for (const auto& l : lits) parts.push_back(literal(l.atom, l.positive, t));
        cube_size[e.target] += parts.size() + 1;
        by_target[e.target].push_back(land(std::move(parts)));
      }
    }
    // A guard replaces the cubes when it is smaller.
    if (!opts_.explicit_alphabet)
      for (const auto& g : aut_.guards) {
        if (g.source != q) continue;
        std::size_t limit = cube_size.count(g.target) ? cube_size[g.target] : SIZE_MAX;
        if (guard_size(g.formula, limit) < limit) by_target[g.target] = {guard(g.formula, t)};
      }
    std::vector<Formula> choices;
    for (auto& [target, labels] : by_target) {
      Formula next = successor(target, t);
      if (is_false(next)) continue;
      bool any = std::any_of(labels.begin(), labels.end(), [](const Formula& f) { return is_true(f); });
      if (any) {
        if (is_true(next)) return land({});
        choices.push_back(next);
        continue;
      }
      Formula label = labels.size() == 1 ? labels[0] : lor(std::move(labels));
      std::vector<Formula> parts;
      if (label->kind == fol::Kind::And) parts = label->children;
      else parts.push_back(label);
      if (!is_true(next)) parts.push_back(next);
      choices.push_back(parts.size() == 1 ? parts[0] : land(std::move(parts)));
    }
    return lor(std::move(choices));
  }

  Formula successor(std::size_t q, const Term& t) const {
    switch (role_[q]) {
      case Role::Top: return land({});
      case Role::Bad: return lor({});
      default: return successor_state(q, t);
    }
  }

  Term x(const std::string& v) const { return xs_[static_cast<std::size_t>(phi_.index_of(v))]; }

  Formula literal(const AtomId& a, bool positive, const Term& i) const {
    Formula p = pred(ap_predicate(a.ap), {x(a.var), i});
    return positive ? p : lnot(p);
  }

  Formula guard(const Ltl& f, const Term& i) const {
    switch (f->op) {
      case Op::True: return land({});
      case Op::False: return lor({});
      case Op::Atom: return literal(f->atom, true, i);
      case Op::Not: return literal(f->lhs->atom, false, i);
      case Op::And:
      case Op::Or: {
        // Flatten chains of the same connective.
        std::vector<Formula> parts;
        std::vector<Ltl> todo = {f};
        while (!todo.empty()) {
          Ltl g = todo.back();
          todo.pop_back();
          if (g->op == f->op) {
            todo.push_back(g->rhs);
            todo.push_back(g->lhs);
          } else {
            parts.push_back(guard(g, i));
          }
        }
        return f->op == Op::And ? land(std::move(parts)) : lor(std::move(parts));
      }
      default:
        throw std::logic_error("guard is not propositional");
    }
  }

  // Node count of a guard, giving up once it reaches `limit`.
  static std::size_t guard_size(const Ltl& f, std::size_t limit) {
    std::size_t n = 0;
    std::vector<const LtlNode*> todo = {f.get()};
    while (!todo.empty() && n < limit) {
      const LtlNode* g = todo.back();
      todo.pop_back();
      ++n;
      if (g->op == Op::And || g->op == Op::Or) {
        todo.push_back(g->lhs.get());
        todo.push_back(g->rhs.get());
      }
    }
    return n;
  }

  Formula state(std::size_t q, Term t) const {
    std::vector<Term> args = xs_;
    args.push_back(std::move(t));
    return pred(state_predicate(q), std::move(args));
  }

  Formula successor_state(std::size_t q, const Term& i) const {
    switch (kind_) {
      case EncodingKind::FuncSafety: return state(q, app("succ", {i}));
      case EncodingKind::Lia: return state(q, int_add(i, int_const(1)));
      case EncodingKind::PredSafety:
        return exists("j", kTime, land({pred("Succ", {i, var("j")}), state(q, var("j"))}));
    }
    return nullptr;
  }

  // The literal conjunctions a label stands for: the cube itself, or every
  // full letter it covers in explicit mode.
  std::vector<std::vector<Literal>> expand(const Cube& c) const {
    std::vector<Literal> cube;
    for (std::size_t k = 0; k < aut_.atoms.size(); ++k) {
      Letter bit = Letter{1} << k;
      if (c.pos & bit) cube.push_back({aut_.atoms[k], true});
      if (c.neg & bit) cube.push_back({aut_.atoms[k], false});
    }
    if (!opts_.explicit_alphabet) return {cube};
    std::vector<std::vector<Literal>> out;
    for (Letter l = 0; l < (Letter{1} << full_.size()); ++l) {
      bool fits = std::all_of(cube.begin(), cube.end(), [&](const Literal& lit) {
        auto k = std::find(full_.begin(), full_.end(), lit.atom) - full_.begin();
        return ((l >> k) & 1) == static_cast<Letter>(lit.positive);
      });
      if (!fits) continue;
      std::vector<Literal> letter;
      for (std::size_t k = 0; k < full_.size(); ++k) letter.push_back({full_[k], ((l >> k) & 1) != 0});
      out.push_back(std::move(letter));
    }
    return out;
  }

  const HyperFormula& phi_;
  const SymbolicAutomaton& aut_;
  EncodeOptions opts_;
  EncodingKind kind_;
  std::vector<std::string> aps_;
  std::vector<std::string> vars_;
  std::string time_;
  std::vector<Term> xs_;
  std::vector<AtomId> full_;
  std::vector<Role> role_;
};

void require_safety(const SymbolicAutomaton& aut) {
  if (aut.kind != AutomatonKind::Safety)
    throw KindMismatch("this encoding needs a safety automaton; use the integer encoding for Buchi automata");
}

}  // namespace

EncodedProblem encode_func(const HyperFormula& phi, const SymbolicAutomaton& nsa, const EncodeOptions& opts) {
  require_safety(nsa);
  return Builder(phi, nsa, opts, EncodingKind::FuncSafety).problem();
}

EncodedProblem encode_pred(const HyperFormula& phi, const SymbolicAutomaton& nsa, const EncodeOptions& opts) {
  require_safety(nsa);
  return Builder(phi, nsa, opts, EncodingKind::PredSafety).problem();
}

EncodedProblem encode_lia(const HyperFormula& phi, const SymbolicAutomaton& aut, const EncodeOptions& opts) {
  if (aut.kind == AutomatonKind::Safety) {
    auto nba = safety_to_buchi(aut);
    return Builder(phi, nba, opts, EncodingKind::Lia).problem();
  }
  return Builder(phi, aut, opts, EncodingKind::Lia).problem();
}

fol::FiniteInterpretation build_finite_interpretation(const HyperFormula& phi, const SymbolicAutomaton& nsa,
                                                      const LassoTraceSet& T, EncodingKind kind) {
  require_safety(nsa);
  if (kind == EncodingKind::Lia) throw KindMismatch("integer time has no finite interpretation");
  if (!eval_hyperltl(phi, T)) throw NotAModel();

  auto aligned = align(T.traces);
  const std::size_t m_stem = std::max<std::size_t>(1, aligned.front().stem.size());
  const std::size_t m_loop = aligned.front().loop.size();
  if (m_stem + 2 * m_loop > kMaxAlignedPositions) throw LcmOverflow();
  const std::size_t horizon = m_stem + m_loop;
  auto cyclic = [&](std::size_t k) { return k < horizon ? k : m_stem + (k - m_stem) % m_loop; };

  EncodedProblem shape = kind == EncodingKind::PredSafety ? encode_pred(phi, nsa) : encode_func(phi, nsa);
  fol::FiniteInterpretation I;
  I.signature = shape.signature;
  I.domain[kTrace] = T.traces.size();
  I.domain[kTime] = horizon;
  I.functions["i0"] = {0};
  I.functions["t0"] = {0};
  std::vector<std::size_t> succ(horizon);
  for (std::size_t n = 0; n < horizon; ++n) succ[n] = n + 1 < horizon ? n + 1 : m_stem;
  if (kind == EncodingKind::FuncSafety) I.functions["succ"] = succ;
  if (kind == EncodingKind::PredSafety) {
    std::vector<bool> rel(horizon * horizon, false);
    for (std::size_t n = 0; n < horizon; ++n) rel[n * horizon + succ[n]] = true;
    I.predicates["Succ"] = std::move(rel);
  }

  for (const auto& pd : I.signature.predicates) {
    if (pd.name.starts_with("P_")) I.predicates[pd.name].assign(I.table_size(pd.args), false);
  }
  for (std::size_t a = 0; a < T.ap_universe.size(); ++a) {
    auto it = I.predicates.find(ap_predicate(T.ap_universe[a]));
    if (it == I.predicates.end()) continue;
    for (std::size_t t = 0; t < T.traces.size(); ++t)
      for (std::size_t n = 0; n < horizon; ++n)
        it->second[t * horizon + n] = ((T.traces[t].at(n) >> a) & 1) != 0;
  }

  // One accepting run per satisfying tuple, folded onto cyclic time.
  const auto vars = phi.variables();
  const std::size_t n_vars = vars.size();
  std::vector<std::vector<bool>*> states;
  std::vector<std::string> state_args(n_vars, kTrace);
  state_args.push_back(kTime);
  for (std::size_t q = 0; q < nsa.num_states; ++q) {
    auto& table = I.predicates[state_predicate(q)];
    table.assign(I.table_size(state_args), false);
    states.push_back(&table);
  }
  std::vector<std::size_t> tuple(n_vars, 0);
  for (;;) {
    LassoWord word = combined_word(T, tuple, vars, nsa.atoms);
    LassoWord timed;
    for (std::size_t n = 0; n < m_stem; ++n) timed.stem.push_back(word.at(n));
    for (std::size_t n = 0; n < m_loop; ++n) timed.loop.push_back(word.at(m_stem + n));
    if (auto run = find_accepting_run(nsa, timed)) {
      std::size_t span = std::max(run->stem.size(), m_stem) + run->loop.size() + m_loop;
      for (std::size_t k = 0; k < span; ++k) {
        std::vector<std::size_t> args = tuple;
        args.push_back(cyclic(k));
        (*states[run->at(k)])[I.index(state_args, args)] = true;
      }
    }
    std::size_t j = n_vars;
    while (j > 0 && ++tuple[j - 1] == T.traces.size()) tuple[--j] = 0;
    if (j == 0) break;
  }
  return I;
}

}  // namespace hyperfol
