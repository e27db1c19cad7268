// Recursive-descent parser for the quoted-atom HyperLTL syntax:
//
//   formula := quant+ body
//   quant   := ("forall" | "exists") IDENT "."
//   body    := iff-level, with precedence (loosest first)
//                -> <->   (right assoc)
//                |
//                &
//                U W R    (right assoc)
//                ! X G F  (prefix)
//   atom    := '"' APNAME '"' "_" IDENT

#include <cctype>
#include <optional>

#include "hyperfol/error.hpp"
#include "hyperfol/formula.hpp"

namespace hyperfol {

namespace {

enum class Tok {
  End,
  Word,    // identifier-like word (keywords, temporal letters, variable names)
  Atom,    // "ap"_var
  Dot,
  LParen,
  RParen,
  Not,
  And,
  Or,
  Implies,
  Iff,
  One,
  Zero,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // word text, or AP name for atoms
  std::string var;   // atom variable
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.offset = pos_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (c == '"') {
        lex_atom(t);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          ++pos_;
        t.kind = Tok::Word;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (c == '.') {
        ++pos_;
        t.kind = Tok::Dot;
      } else if (c == '(') {
        ++pos_;
        t.kind = Tok::LParen;
      } else if (c == ')') {
        ++pos_;
        t.kind = Tok::RParen;
      } else if (c == '!') {
        ++pos_;
        t.kind = Tok::Not;
      } else if (c == '&') {
        pos_ += starts_with("&&") ? 2 : 1;
        t.kind = Tok::And;
      } else if (c == '|') {
        pos_ += starts_with("||") ? 2 : 1;
        t.kind = Tok::Or;
      } else if (starts_with("->")) {
        pos_ += 2;
        t.kind = Tok::Implies;
      } else if (starts_with("<->")) {
        pos_ += 3;
        t.kind = Tok::Iff;
      } else if (c == '1' && !followed_by_digit()) {
        ++pos_;
        t.kind = Tok::One;
      } else if (c == '0' && !followed_by_digit()) {
        ++pos_;
        t.kind = Tok::Zero;
      } else {
        fail(pos_, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

  [[noreturn]] void fail(std::size_t offset, const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(offset, line, col, msg);
  }

 private:
  bool starts_with(std::string_view s) const { return src_.substr(pos_).starts_with(s); }
  bool followed_by_digit() const {
    return pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]));
  }

  void skip_space() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (starts_with("//")) {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        continue;
      }
      return;
    }
  }

  void lex_atom(Token& t) {
    std::size_t start = pos_++;
    std::string ap;
    for (;;) {
      if (pos_ >= src_.size()) fail(start, "unterminated atomic proposition");
      char c = src_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= src_.size()) fail(start, "unterminated atomic proposition");
        c = src_[pos_++];
      }
      ap += c;
    }
    if (ap.empty()) fail(start, "empty atomic proposition name");
    if (pos_ >= src_.size() || src_[pos_] != '_')
      fail(pos_, "expected '_' followed by a trace variable after atomic proposition");
    ++pos_;
    std::size_t vstart = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string var(src_.substr(vstart, pos_ - vstart));
    if (!is_valid_identifier(var)) fail(vstart, "expected trace variable name");
    t.kind = Tok::Atom;
    t.text = std::move(ap);
    t.var = std::move(var);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

bool is_temporal_word(const std::string& w) {
  if (w.empty()) return false;
  for (char c : w)
    if (c != 'X' && c != 'G' && c != 'F') return false;
  return true;
}

class Parser {
 public:
  Parser(std::string_view src) : lexer_(src), toks_(lexer_.run()) {}

  HyperFormula formula() {
    HyperFormula phi;
    while (peek().kind == Tok::Word && (peek().text == "forall" || peek().text == "exists")) {
      Quantifier q = peek().text == "forall" ? Quantifier::Forall : Quantifier::Exists;
      ++i_;
      if (peek().kind != Tok::Word || !is_valid_identifier(peek().text))
        fail("expected trace variable after quantifier");
      std::string var = peek().text;
      ++i_;
      expect(Tok::Dot, "expected '.' after quantified variable");
      phi.prefix.push_back({q, std::move(var)});
    }
    if (phi.prefix.empty()) fail("expected at least one quantifier ('forall' or 'exists')");
    phi.body = body();
    expect(Tok::End, "unexpected trailing input");
    validate(phi);
    return phi;
  }

  Ltl body_only() {
    Ltl b = body();
    expect(Tok::End, "unexpected trailing input");
    return b;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  [[noreturn]] void fail(const std::string& msg) const { lexer_.fail(peek().offset, msg); }
  void expect(Tok k, const char* msg) {
    if (peek().kind != k) fail(msg);
    ++i_;
  }
  bool is_word(const char* w) const { return peek().kind == Tok::Word && peek().text == w; }

  Ltl body() { return implication(); }

  Ltl implication() {
    Ltl lhs = disjunction();
    if (peek().kind == Tok::Implies) {
      ++i_;
      return ltl::implies(lhs, implication());
    }
    if (peek().kind == Tok::Iff) {
      ++i_;
      return ltl::iff(lhs, implication());
    }
    return lhs;
  }

  Ltl disjunction() {
    Ltl lhs = conjunction();
    while (peek().kind == Tok::Or) {
      ++i_;
      lhs = ltl::lor(lhs, conjunction());
    }
    return lhs;
  }

  Ltl conjunction() {
    Ltl lhs = temporal();
    while (peek().kind == Tok::And) {
      ++i_;
      lhs = ltl::land(lhs, temporal());
    }
    return lhs;
  }

  Ltl temporal() {
    Ltl lhs = unary();
    if (is_word("U")) {
      ++i_;
      return ltl::until(lhs, temporal());
    }
    if (is_word("W")) {
      ++i_;
      return ltl::weak_until(lhs, temporal());
    }
    if (is_word("R")) {
      ++i_;
      return ltl::release(lhs, temporal());
    }
    return lhs;
  }

  Ltl unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        ++i_;
        return ltl::lnot(unary());
      case Tok::One:
        ++i_;
        return ltl::tt();
      case Tok::Zero:
        ++i_;
        return ltl::ff();
      case Tok::Atom: {
        ++i_;
        return ltl::atom(t.text, t.var);
      }
      case Tok::LParen: {
        ++i_;
        Ltl inner = body();
        expect(Tok::RParen, "expected ')'");
        return inner;
      }
      case Tok::Word: {
        if (t.text == "true") {
          ++i_;
          return ltl::tt();
        }
        if (t.text == "false") {
          ++i_;
          return ltl::ff();
        }
        if (is_temporal_word(t.text)) {
          // "GF" is read as G F.
          std::string ops = t.text;
          ++i_;
          Ltl inner = unary();
          for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
            if (*it == 'X') inner = ltl::next(inner);
            else if (*it == 'G') inner = ltl::globally(inner);
            else inner = ltl::eventually(inner);
          }
          return inner;
        }
        fail("unexpected word '" + t.text + "' (atomic propositions must be quoted, e.g. \"a\"_p)");
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("expected a formula");
    }
  }

  Lexer lexer_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

HyperFormula parse(std::string_view text) { return Parser(text).formula(); }

Ltl parse_body(std::string_view text) { return Parser(text).body_only(); }

}  // namespace hyperfol
