#include "hyperfol/emit.hpp"

#include <cctype>
#include <sstream>

namespace hyperfol {

std::string to_string(OutputFormat f) { return f == OutputFormat::Smtlib2 ? "smtlib" : "tptp"; }
std::string extension(OutputFormat f) { return f == OutputFormat::Smtlib2 ? ".smt2" : ".p"; }

std::string emit(const EncodedProblem& p, OutputFormat f) {
  return f == OutputFormat::Smtlib2 ? emit_smtlib(p) : emit_tptp(p);
}

namespace {

using namespace fol;

bool uses_integers(const Signature& sig) { return !sig.integer_sort().empty(); }

// ---- SMT-LIB ----

class SmtPrinter {
 public:
  explicit SmtPrinter(std::ostream& os) : os_(os) {}

  void term(const Term& t) {
    switch (t->kind) {
      case TermKind::Var:
        os_ << t->name;
        break;
      case TermKind::App:
        apply(t->name, t->args);
        break;
      case TermKind::IntConst:
        if (t->value < 0) os_ << "(- " << -t->value << ")";
        else os_ << t->value;
        break;
      case TermKind::IntAdd:
        os_ << "(+ ";
        term(t->args[0]);
        os_ << ' ';
        term(t->args[1]);
        os_ << ')';
        break;
    }
  }

  void formula(const Formula& f) {
    switch (f->kind) {
      case Kind::True: os_ << "true"; return;
      case Kind::False: os_ << "false"; return;
      case Kind::Not:
        os_ << "(not ";
        formula(f->children[0]);
        os_ << ')';
        return;
      case Kind::And:
      case Kind::Or:
        if (f->children.empty()) {
          os_ << (f->kind == Kind::And ? "true" : "false");
        } else if (f->children.size() == 1) {
          formula(f->children[0]);
        } else {
          os_ << (f->kind == Kind::And ? "(and" : "(or");
          for (const auto& c : f->children) {
            os_ << ' ';
            formula(c);
          }
          os_ << ')';
        }
        return;
      case Kind::Implies:
        os_ << "(=> ";
        formula(f->children[0]);
        os_ << ' ';
        formula(f->children[1]);
        os_ << ')';
        return;
      case Kind::Forall:
      case Kind::Exists:
        os_ << (f->kind == Kind::Forall ? "(forall ((" : "(exists ((") << f->name << ' ' << f->sort << ")) ";
        formula(f->children[0]);
        os_ << ')';
        return;
      case Kind::Pred:
        apply(f->name, f->terms);
        return;
      case Kind::Equal:
      case Kind::IntLess:
        os_ << (f->kind == Kind::Equal ? "(= " : "(< ");
        term(f->terms[0]);
        os_ << ' ';
        term(f->terms[1]);
        os_ << ')';
        return;
    }
  }

 private:
  void apply(const std::string& name, const std::vector<Term>& args) {
    if (args.empty()) {
      os_ << name;
      return;
    }
    os_ << '(' << name;
    for (const auto& a : args) {
      os_ << ' ';
      term(a);
    }
    os_ << ')';
  }

  std::ostream& os_;
};

// ---- TPTP ----

class TptpPrinter {
 public:
  TptpPrinter(std::ostream& os, const Signature& sig) : os_(os), sig_(sig) {}

  std::string sort(const std::string& s) const {
    const Sort* decl = sig_.find_sort(s);
    if (decl && decl->integer) return "$int";
    return tptp_symbol(s);
  }

  void term(const Term& t) {
    switch (t->kind) {
      case TermKind::Var:
        os_ << tptp_variable(t->name);
        break;
      case TermKind::App:
        apply(t->name, t->args);
        break;
      case TermKind::IntConst:
        os_ << t->value;
        break;
      case TermKind::IntAdd:
        os_ << "$sum(";
        term(t->args[0]);
        os_ << ',';
        term(t->args[1]);
        os_ << ')';
        break;
    }
  }

  void formula(const Formula& f) {
    switch (f->kind) {
      case Kind::True: os_ << "$true"; return;
      case Kind::False: os_ << "$false"; return;
      case Kind::Not:
        os_ << "~ ";
        unit(f->children[0]);
        return;
      case Kind::And:
      case Kind::Or:
        if (f->children.empty()) {
          os_ << (f->kind == Kind::And ? "$true" : "$false");
        } else if (f->children.size() == 1) {
          formula(f->children[0]);
        } else {
          os_ << '(';
          for (std::size_t k = 0; k < f->children.size(); ++k) {
            if (k) os_ << (f->kind == Kind::And ? " & " : " | ");
            unit(f->children[k]);
          }
          os_ << ')';
        }
        return;
      case Kind::Implies:
        os_ << '(';
        unit(f->children[0]);
        os_ << " => ";
        unit(f->children[1]);
        os_ << ')';
        return;
      case Kind::Forall:
      case Kind::Exists:
        os_ << (f->kind == Kind::Forall ? "! [" : "? [") << tptp_variable(f->name) << ": " << sort(f->sort)
            << "] : ";
        unit(f->children[0]);
        return;
      case Kind::Pred:
        apply(f->name, f->terms);
        return;
      case Kind::Equal:
        os_ << '(';
        term(f->terms[0]);
        os_ << " = ";
        term(f->terms[1]);
        os_ << ')';
        return;
      case Kind::IntLess:
        os_ << "$less(";
        term(f->terms[0]);
        os_ << ',';
        term(f->terms[1]);
        os_ << ')';
        return;
    }
  }

 private:
  // Operands of connectives and quantifiers must be unitary; every binary
  // form already prints its own parentheses.
  void unit(const Formula& f) {
    const FormulaNode* g = f.get();
    while ((g->kind == Kind::And || g->kind == Kind::Or) && g->children.size() == 1) g = g->children[0].get();
    bool wrap = g->kind == Kind::Forall || g->kind == Kind::Exists;
    if (wrap) os_ << '(';
    formula(f);
    if (wrap) os_ << ')';
  }

  void apply(const std::string& name, const std::vector<Term>& args) {
    os_ << tptp_symbol(name);
    if (args.empty()) return;
    os_ << '(';
    for (std::size_t k = 0; k < args.size(); ++k) {
      if (k) os_ << ',';
      term(args[k]);
    }
    os_ << ')';
  }

  std::ostream& os_;
  const Signature& sig_;
};

std::string type_signature(const TptpPrinter& pr, const std::vector<std::string>& args, const std::string& result) {
  std::string out;
  if (args.size() == 1) out = pr.sort(args[0]) + " > ";
  if (args.size() > 1) {
    out = "(";
    for (std::size_t k = 0; k < args.size(); ++k) out += (k ? " * " : "") + pr.sort(args[k]);
    out += ") > ";
  }
  return out + result;
}

}  // namespace

std::string tptp_symbol(const std::string& name) {
  std::string out = name;
  if (!out.empty()) out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
  return out;
}

std::string tptp_variable(const std::string& name) {
  std::string out = name;
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string emit_smtlib(const EncodedProblem& p) {
  std::ostringstream os;
  const auto& sig = p.signature;
  os << "(set-logic " << (uses_integers(sig) ? "UFLIA" : "UF") << ")\n";
  for (const auto& s : sig.sorts)
    if (!s.integer) os << "(declare-sort " << s.name << " 0)\n";
  auto sort_name = [&](const std::string& s) {
    const Sort* d = sig.find_sort(s);
    return d && d->integer ? std::string("Int") : s;
  };
  auto declare = [&](const std::string& name, const std::vector<std::string>& args, const std::string& result) {
    os << "(declare-fun " << name << " (";
    for (std::size_t k = 0; k < args.size(); ++k) os << (k ? " " : "") << sort_name(args[k]);
    os << ") " << result << ")\n";
  };
  for (const auto& f : sig.functions) declare(f.name, f.args, sort_name(f.result));
  for (const auto& pd : sig.predicates) declare(pd.name, pd.args, "Bool");
  os << "(assert ";
  SmtPrinter(os).formula(p.formula);
  os << ")\n(check-sat)\n";
  return os.str();
}

std::string emit_tptp(const EncodedProblem& p) {
  std::ostringstream os;
  const auto& sig = p.signature;
  TptpPrinter pr(os, sig);
  for (const auto& s : sig.sorts)
    if (!s.integer) os << "tff(" << tptp_symbol(s.name) << "_type, type, " << tptp_symbol(s.name) << ": $tType).\n";
  for (const auto& f : sig.functions)
    os << "tff(" << tptp_symbol(f.name) << "_decl, type, " << tptp_symbol(f.name) << ": "
       << type_signature(pr, f.args, pr.sort(f.result)) << ").\n";
  for (const auto& pd : sig.predicates)
    os << "tff(" << tptp_symbol(pd.name) << "_decl, type, " << tptp_symbol(pd.name) << ": "
       << type_signature(pr, pd.args, "$o") << ").\n";
  os << "tff(theta, axiom, ";
  pr.formula(p.formula);
  os << ").\n";
  return os.str();
}

}  // namespace hyperfol
