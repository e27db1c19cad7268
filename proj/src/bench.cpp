#include "hyperfol/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hyperfol/error.hpp"

namespace hyperfol {

using namespace ltl;

std::string to_string(Expected e) {
  switch (e) {
    case Expected::Sat: return "SAT";
    case Expected::Unsat: return "UNSAT";
    default: return "UNKNOWN";
  }
}

namespace {

Ltl rename_atoms(const Ltl& f, const std::map<std::string, std::string>& ren) {
  if (f->op == Op::Atom) {
    auto it = ren.find(f->atom.var);
    return it == ren.end() ? f : atom(f->atom.ap, it->second);
  }
  if (!f->lhs) return f;
  Ltl l = rename_atoms(f->lhs, ren);
  Ltl r = f->rhs ? rename_atoms(f->rhs, ren) : nullptr;
  if (l == f->lhs && r == f->rhs) return f;
  return std::make_shared<const LtlNode>(LtlNode{f->op, {}, l, r});
}

std::string var(unsigned k) { return "p" + std::to_string(k); }
Ltl at(const std::string& ap, unsigned k) { return atom(ap, var(k)); }

std::vector<QuantifiedVar> prefix_of(Quantifier q, unsigned from, unsigned to) {
  std::vector<QuantifiedVar> out;
  for (unsigned k = from; k <= to; ++k) out.push_back({q, var(k)});
  return out;
}

Expected parse_expected(const std::string& s) {
  if (s == "sat" || s == "SAT") return Expected::Sat;
  if (s == "unsat" || s == "UNSAT") return Expected::Unsat;
  if (s == "unknown" || s == "UNKNOWN") return Expected::Unknown;
  throw std::invalid_argument("bad expectation '" + s + "'");
}

std::string case_id(const std::string& name, std::initializer_list<unsigned> args) {
  std::string out = name + "(";
  bool first = true;
  for (unsigned a : args) {
    out += (first ? "" : ",") + std::to_string(a);
    first = false;
  }
  return out + ")";
}

}  // namespace

HyperFormula negate(const HyperFormula& phi) {
  HyperFormula out;
  for (const auto& q : phi.prefix)
    out.prefix.push_back({q.quantifier == Quantifier::Forall ? Quantifier::Exists : Quantifier::Forall, q.var});
  out.body = lnot(phi.body);
  return out;
}

// Greedy prenexing: existentials go first whenever either side offers one;
// between two universals we take the side whose next existential is closer,
// so existentials end up as far left as the prefixes allow.
HyperFormula conjoin(const HyperFormula& a, const HyperFormula& b) {
  std::set<std::string> used;
  for (const auto& q : a.prefix) used.insert(q.var);
  std::map<std::string, std::string> ren;
  std::vector<QuantifiedVar> bp = b.prefix;
  for (auto& q : bp) {
    if (!used.count(q.var)) {
      used.insert(q.var);
      continue;
    }
    std::string fresh;
    for (unsigned k = 1;; ++k) {
      fresh = q.var + "_" + std::to_string(k);
      if (!used.count(fresh)) break;
    }
    used.insert(fresh);
    ren[q.var] = fresh;
    q.var = fresh;
  }
  auto next_exists = [](const std::vector<QuantifiedVar>& p, std::size_t i) {
    while (i < p.size() && p[i].quantifier != Quantifier::Exists) ++i;
    return i;
  };
  HyperFormula out;
  std::size_t i = 0, j = 0;
  while (i < a.prefix.size() || j < bp.size()) {
    bool take_a;
    if (i == a.prefix.size()) take_a = false;
    else if (j == bp.size()) take_a = true;
    else if (a.prefix[i].quantifier == Quantifier::Exists) take_a = true;
    else if (bp[j].quantifier == Quantifier::Exists) take_a = false;
    else take_a = next_exists(a.prefix, i) - i <= next_exists(bp, j) - j;
    out.prefix.push_back(take_a ? a.prefix[i++] : bp[j++]);
  }
  out.body = land(a.body, rename_atoms(b.body, ren));
  return out;
}

HyperFormula implication_query(const HyperFormula& a, const HyperFormula& b) { return conjoin(a, negate(b)); }

HyperFormula gen_qn(unsigned c, const std::vector<std::string>& in, const std::vector<std::string>& out) {
  if (c == 0) throw std::invalid_argument("QN needs c >= 1");
  if (in.empty() || out.empty()) throw std::invalid_argument("QN needs nonempty input and output sets");
  std::vector<Ltl> same_in, outputs_differ;
  for (unsigned i = 1; i <= c; ++i)
    for (const auto& a : in) same_in.push_back(iff(at(a, i), at(a, 0)));
  // i and j range over 0..c: c+1 pairwise different outputs are ruled out,
  // so at most c remain.
  for (unsigned i = 0; i <= c; ++i)
    for (unsigned j = 0; j <= c; ++j) {
      if (i == j) continue;
      std::vector<Ltl> d;
      for (const auto& a : out) d.push_back(xor_(at(a, i), at(a, j)));
      outputs_differ.push_back(disj(d));
    }
  HyperFormula phi;
  phi.prefix = prefix_of(Quantifier::Forall, 0, c);
  phi.body = lnot(land(conj(same_in), conj(outputs_differ)));
  return phi;
}

HyperFormula gen_enforce_model(unsigned n, unsigned b) {
  if (n == 0 || b == 0) throw std::invalid_argument("enforceModel needs n, b >= 1");
  std::vector<Ltl> parts;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j)
      if (i != j) parts.push_back(bounded_eventually(b, xor_(at("a", i), at("a", j))));
  HyperFormula phi;
  phi.prefix = prefix_of(Quantifier::Exists, 1, n);
  phi.body = conj(parts);
  return phi;
}

HyperFormula gen_unsat(unsigned n) {
  HyperFormula phi;
  phi.prefix = {{Quantifier::Forall, var(1)}, {Quantifier::Exists, var(2)}, {Quantifier::Exists, var(3)}};
  phi.body = conj({at("a", 3), globally(implies(at("a", 1), next(at("a", 2)))),
                   next_n(n, globally(lnot(at("a", 1))))});
  return phi;
}

namespace {

using GFun = Ltl (*)(unsigned, Ltl);

Ltl unbounded_g(unsigned, Ltl f) { return globally(std::move(f)); }

HyperFormula gni_with(GFun g, unsigned b) {
  HyperFormula phi;
  phi.prefix = {{Quantifier::Forall, var(1)}, {Quantifier::Forall, var(2)}, {Quantifier::Exists, var(3)}};
  phi.body = land(g(b, land(iff(at("l", 1), at("l", 3)), iff(at("o", 1), at("o", 3)))),
                  g(b, iff(at("h", 2), at("h", 3))));
  return phi;
}

HyperFormula ni_with(GFun g, unsigned b) {
  HyperFormula phi;
  phi.prefix = {{Quantifier::Forall, var(1)}, {Quantifier::Exists, var(2)}};
  phi.body = land(g(b, land(iff(at("l", 1), at("l", 2)), iff(at("o", 1), at("o", 2)))), g(b, lnot(at("h", 2))));
  return phi;
}

// forall p. G(h_p <-> o_p): the output reveals the secret.
HyperFormula leak() {
  HyperFormula phi;
  phi.prefix = {{Quantifier::Forall, var(1)}};
  phi.body = globally(iff(at("h", 1), at("o", 1)));
  return phi;
}

// exists p1 p2. F<=b (h_p1 <-/-> h_p2)
HyperFormula two_secrets(unsigned b) {
  HyperFormula phi;
  phi.prefix = prefix_of(Quantifier::Exists, 1, 2);
  phi.body = bounded_eventually(b, xor_(at("h", 1), at("h", 2)));
  return phi;
}

// forall p0 exists p1 p2. G(low obs of p1, p2 equal p0) & F<=b(h_p1 <-/-> h_p2)
HyperFormula two_anonymity(unsigned b) {
  HyperFormula phi;
  phi.prefix = {{Quantifier::Forall, var(0)}, {Quantifier::Exists, var(1)}, {Quantifier::Exists, var(2)}};
  std::vector<Ltl> low;
  for (unsigned k : {1u, 2u})
    for (const char* ap : {"l", "o"}) low.push_back(iff(at(ap, 0), at(ap, k)));
  phi.body = land(globally(conj(low)), bounded_eventually(b, xor_(at("h", 1), at("h", 2))));
  return phi;
}

// forall p1 p2. G<=b(l equal) -> G<=b(o equal & h equal)
HyperFormula observational_determinism(unsigned b) {
  HyperFormula phi;
  phi.prefix = prefix_of(Quantifier::Forall, 1, 2);
  phi.body = implies(bounded_globally(b, iff(at("l", 1), at("l", 2))),
                     bounded_globally(b, land(iff(at("o", 1), at("o", 2)), iff(at("h", 1), at("h", 2)))));
  return phi;
}

}  // namespace

GniNi gen_gni_ni(unsigned b) {
  if (b == 0) throw std::invalid_argument("bound must be >= 1");
  GniNi out;
  out.gni = gni_with(bounded_globally, b);
  out.ni = ni_with(bounded_globally, b);
  out.gni_implies_ni = implication_query(out.gni, out.ni);
  out.ni_implies_gni = implication_query(out.ni, out.gni);
  return out;
}

HyperFormula gni_formula() { return gni_with(unbounded_g, 0); }
HyperFormula ni_formula() { return ni_with(unbounded_g, 0); }

std::vector<BenchCase> gen_handcrafted(unsigned b) {
  if (b == 0) throw std::invalid_argument("bound must be >= 1");
  HyperFormula gni = gni_formula();
  HyperFormula ni = ni_formula();
  HyperFormula no_secret;
  no_secret.prefix = {{Quantifier::Exists, var(1)}};
  no_secret.body = globally(lnot(at("h", 1)));
  const std::string reconstructed = "reconstructed from a prose description";

  std::vector<BenchCase> out;
  out.push_back({"GniNiPlus", "handcrafted",
                 conjoin(conjoin(gni, no_secret), negate(ni_with(bounded_globally, b))), Expected::Unsat,
                 reconstructed + "; negated NI bounded by G<=" + std::to_string(b)});
  HyperFormula gni_leak = conjoin(gni, leak());
  out.push_back({"GniLeak", "handcrafted", gni_leak, Expected::Sat, reconstructed});
  out.push_back({"GniLeak2", "handcrafted", conjoin(gni_leak, two_secrets(b)), Expected::Unsat,
                 reconstructed + "; distinct secrets as exists p p'. F<=" + std::to_string(b) + "(h_p <-/-> h_p')"});
  out.push_back({"NiLeak2", "handcrafted", conjoin(conjoin(ni, leak()), two_secrets(b)), Expected::Unsat,
                 reconstructed});
  out.push_back({"AnonOd", "handcrafted", conjoin(two_anonymity(b), observational_determinism(b)),
                 Expected::Unsat, reconstructed + "; determinism of o and h given equal l"});
  out.push_back({"AnonLeak", "handcrafted", conjoin(two_anonymity(b), leak()), Expected::Unsat, reconstructed});
  return out;
}

namespace {

class RandomBody {
 public:
  RandomBody(unsigned atom_count, std::vector<std::string> vars, bool safe_only, std::uint64_t seed)
      : atom_count_(atom_count), vars_(std::move(vars)), safe_only_(safe_only), rng_(seed) {}

  Ltl body(unsigned size) {
    if (size <= 1) return literal();
    // Unary: X G (F); binary: & | W R (U).
    static const Op unary_safe[] = {Op::Next, Op::Globally};
    static const Op unary_all[] = {Op::Next, Op::Globally, Op::Eventually};
    static const Op binary_safe[] = {Op::And, Op::Or, Op::WeakUntil, Op::Release};
    static const Op binary_all[] = {Op::And, Op::Or, Op::WeakUntil, Op::Release, Op::Until};
    bool binary = size >= 3 && pick(3) != 0;
    if (!binary) {
      Op op = safe_only_ ? unary_safe[pick(2)] : unary_all[pick(3)];
      Ltl c = body(size - 1);
      return op == Op::Next ? next(c) : op == Op::Globally ? globally(c) : eventually(c);
    }
    Op op = safe_only_ ? binary_safe[pick(4)] : binary_all[pick(5)];
    unsigned left = 1 + pick(size - 2);
    Ltl l = body(left), r = body(size - 1 - left);
    switch (op) {
      case Op::And: return land(l, r);
      case Op::Or: return lor(l, r);
      case Op::WeakUntil: return weak_until(l, r);
      case Op::Release: return release(l, r);
      default: return until(l, r);
    }
  }

 private:
  unsigned pick(unsigned n) { return static_cast<unsigned>(rng_() % n); }

  Ltl literal() {
    std::string ap(1, static_cast<char>('a' + pick(atom_count_)));
    Ltl a = atom(ap, vars_[pick(static_cast<unsigned>(vars_.size()))]);
    return pick(2) ? a : lnot(a);
  }

  unsigned atom_count_;
  std::vector<std::string> vars_;
  bool safe_only_;
  std::mt19937_64 rng_;
};

}  // namespace

HyperFormula gen_random(const std::vector<Quantifier>& prefix, unsigned body_size, unsigned atom_count,
                        bool safe_only, std::uint64_t seed) {
  if (body_size == 0) throw std::invalid_argument("body size must be >= 1");
  if (prefix.empty()) throw std::invalid_argument("prefix must be nonempty");
  if (atom_count == 0 || atom_count > 26) throw std::invalid_argument("atom count must be in 1..26");
  HyperFormula phi;
  std::vector<std::string> vars;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    vars.push_back(var(static_cast<unsigned>(k + 1)));
    phi.prefix.push_back({prefix[k], vars.back()});
  }
  phi.body = RandomBody(atom_count, vars, safe_only, seed).body(body_size);
  return phi;
}

std::vector<BenchCase> suite_enforce_model() {
  std::vector<BenchCase> out;
  for (unsigned b = 1; b <= 2; ++b)
    for (unsigned n = 1; n <= 5; ++n)
      out.push_back({case_id("enforceModel", {n, b}), "enforce_model", gen_enforce_model(n, b),
                     n <= (1u << b) ? Expected::Sat : Expected::Unsat, "known: SAT iff n <= 2^b"});
  return out;
}

std::vector<BenchCase> suite_unsat() {
  std::vector<BenchCase> out;
  for (unsigned n = 0; n <= 5; ++n)
    out.push_back({case_id("unsat", {n}), "unsat", gen_unsat(n), Expected::Unsat, "known: unsatisfiable for every n"});
  return out;
}

std::vector<BenchCase> suite_gni_ni() {
  std::vector<BenchCase> out;
  for (unsigned b = 1; b <= 3; ++b) {
    auto g = gen_gni_ni(b);
    const char* why = "known: neither policy implies the other";
    out.push_back({case_id("GNI->NI", {b}), "gni_ni", g.gni_implies_ni, Expected::Sat, why});
    out.push_back({case_id("NI->GNI", {b}), "gni_ni", g.ni_implies_gni, Expected::Sat, why});
  }
  return out;
}

std::vector<BenchCase> suite_qn() {
  std::vector<BenchCase> out;
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned m = 1; m <= 4; ++m)
      out.push_back({case_id("QN->QN", {n, m}), "qn", implication_query(gen_qn(n), gen_qn(m)),
                     n <= m ? Expected::Unsat : Expected::Sat, "derived: QN(n) implies QN(m) iff n <= m"});
  return out;
}

std::vector<BenchCase> suite_random_safe(unsigned count, std::uint64_t seed, unsigned max_exists) {
  if (max_exists == 0) throw std::invalid_argument("max_exists must be >= 1");
  std::vector<BenchCase> out;
  for (unsigned k = 0; k < count; ++k) {
    unsigned m = 1 + k % max_exists;
    std::vector<Quantifier> prefix = {Quantifier::Forall};
    prefix.insert(prefix.end(), m, Quantifier::Exists);
    std::uint64_t s = seed * 1000003u + k;
    out.push_back({"random_safe_" + std::to_string(k), "random_safe", gen_random(prefix, 8, 2, true, s),
                   Expected::Unknown, "random, seed " + std::to_string(s)});
  }
  return out;
}

namespace {

std::vector<Quantifier> parse_shape(const std::string& s) {
  std::vector<Quantifier> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "forall" || item == "A") out.push_back(Quantifier::Forall);
    else if (item == "exists" || item == "E") out.push_back(Quantifier::Exists);
    else throw std::invalid_argument("bad quantifier '" + item + "'");
  }
  return out;
}

std::uint64_t to_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

unsigned to_unsigned(const std::string& s) {
  std::uint64_t v = to_u64(s);
  if (v > 1000000) throw std::invalid_argument("number out of range '" + s + "'");
  return static_cast<unsigned>(v);
}

std::vector<BenchCase> suite_by_name(const std::string& name) {
  if (name == "qn") return suite_qn();
  if (name == "enforce_model") return suite_enforce_model();
  if (name == "unsat") return suite_unsat();
  if (name == "gni_ni") return suite_gni_ni();
  if (name == "handcrafted") return gen_handcrafted();
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace

std::vector<BenchCase> parse_manifest(const std::string& text) {
  std::vector<BenchCase> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> w;
    for (std::string t; ls >> t;) w.push_back(t);
    if (w.empty()) continue;
    auto need = [&](std::size_t n) {
      if (w.size() != n) throw Error("manifest line " + std::to_string(lineno) + ": expected " +
                                                     std::to_string(n - 1) + " arguments to " + w[0]);
    };
    try {
      const std::string& g = w[0];
      if (g == "unsat") {
        need(2);
        unsigned n = to_unsigned(w[1]);
        out.push_back({case_id("unsat", {n}), "unsat", gen_unsat(n), Expected::Unsat, "known: unsatisfiable for every n"});
      } else if (g == "enforce_model") {
        need(3);
        unsigned n = to_unsigned(w[1]), b = to_unsigned(w[2]);
        out.push_back({case_id("enforceModel", {n, b}), "enforce_model", gen_enforce_model(n, b),
                       n <= (1u << std::min(b, 31u)) ? Expected::Sat : Expected::Unsat, "known: SAT iff n <= 2^b"});
      } else if (g == "qn") {
        need(2);
        unsigned c = to_unsigned(w[1]);
        out.push_back({case_id("QN", {c}), "qn", gen_qn(c), Expected::Sat, "derived: any single trace"});
      } else if (g == "gni" || g == "ni") {
        need(2);
        unsigned b = to_unsigned(w[1]);
        auto q = gen_gni_ni(b);
        out.push_back({case_id(g == "gni" ? "GNI" : "NI", {b}), "gni_ni", g == "gni" ? q.gni : q.ni, Expected::Sat,
                       "derived: one trace with h false everywhere"});
      } else if (g == "qn_implies") {
        need(3);
        unsigned n = to_unsigned(w[1]), m = to_unsigned(w[2]);
        out.push_back({case_id("QN->QN", {n, m}), "qn", implication_query(gen_qn(n), gen_qn(m)),
                       n <= m ? Expected::Unsat : Expected::Sat, "derived"});
      } else if (g == "gni_implies_ni" || g == "ni_implies_gni") {
        need(2);
        unsigned b = to_unsigned(w[1]);
        auto q = gen_gni_ni(b);
        bool gni_first = g == "gni_implies_ni";
        out.push_back({case_id(gni_first ? "GNI->NI" : "NI->GNI", {b}), "gni_ni",
                       gni_first ? q.gni_implies_ni : q.ni_implies_gni, Expected::Sat,
                       "known: neither policy implies the other"});
      } else if (g == "handcrafted") {
        if (w.size() > 2) need(2);
        auto cases = gen_handcrafted(w.size() == 2 ? to_unsigned(w[1]) : 2);
        out.insert(out.end(), cases.begin(), cases.end());
      } else if (g == "random") {
        need(6);
        bool safe = w[4] == "safe";
        if (!safe && w[4] != "any") throw std::invalid_argument("expected 'safe' or 'any'");
        std::uint64_t seed = to_u64(w[5]);
        out.push_back({"random_" + w[1] + "_" + w[2] + "_" + w[3] + "_" + w[4] + "_" + w[5], "random",
                       gen_random(parse_shape(w[1]), to_unsigned(w[2]), to_unsigned(w[3]), safe, seed),
                       Expected::Unknown, "random"});
      } else if (g == "suite") {
        need(2);
        auto cases = suite_by_name(w[1]);
        out.insert(out.end(), cases.begin(), cases.end());
      } else if (g == "formula") {
        if (w.size() < 4) need(4);
        // The text is everything after the third word.
        std::istringstream again(line);
        std::string skip;
        again >> skip >> skip >> skip;
        std::string rest;
        std::getline(again, rest);
        out.push_back({w[1], "formula", parse(rest), parse_expected(w[2]), "manifest"});
      } else {
        throw std::invalid_argument("unknown generator '" + g + "'");
      }
    } catch (const std::exception& e) {
      std::string msg = e.what();
      if (msg.rfind("manifest line", 0) == 0) throw;
      throw Error("manifest line " + std::to_string(lineno) + ": " + msg);
    }
  }
  return out;
}

namespace {

BenchRow run_case(const BenchCase& c, const std::vector<SolverConfig>& solvers, const CheckOptions& opts) {
  BenchRow row;
  row.id = c.id;
  row.family = c.family;
  row.expected = c.expected;
  try {
    auto r = check(c.formula, solvers, opts);
    row.verdict = r.verdict.result;
    row.solver = r.verdict.solver;
    row.encoding = to_string(r.encoding);
    row.time_sec = r.verdict.elapsed;
    if (row.verdict == Result::Unknown) {
      row.status = "unknown";
    } else {
      bool agrees = c.expected == Expected::Unknown ||
                    (c.expected == Expected::Sat) == (row.verdict == Result::Sat);
      row.status = agrees ? "ok" : "mismatch";
    }
  } catch (const SolverNotFound&) {
    row.status = "skipped";
  } catch (const std::exception&) {
    row.status = "error";
  }
  return row;
}

}  // namespace

std::vector<BenchRow> run_table(const std::vector<BenchCase>& cases, const std::vector<SolverConfig>& solvers,
                                const BenchOptions& opts) {
  std::vector<BenchRow> rows(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < cases.size();) rows[k] = run_case(cases[k], solvers, opts.check);
  };
  unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(cases.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "id,family,expected,verdict,solver,encoding,time_sec,status\n";
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (const auto& r : rows) {
    char t[32];
    std::snprintf(t, sizeof t, "%.3f", r.time_sec);
    os << field(r.id) << ',' << field(r.family) << ',' << to_string(r.expected) << ','
       << (r.status == "skipped" || r.status == "error" ? std::string("") : to_string(r.verdict)) << ','
       << field(r.solver) << ',' << field(r.encoding) << ',' << t << ',' << r.status << '\n';
  }
  return os.str();
}

bool has_mismatch(const std::vector<BenchRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.status == "mismatch"; });
}

}  // namespace hyperfol
