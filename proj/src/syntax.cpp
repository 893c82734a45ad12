#include "amlkit/syntax.hpp"

#include <cctype>
#include <vector>

namespace aml {

namespace {

enum class Tok {
  Ident,
  Tilde,      // ~
  PartArrow,  // ~>
  Box,        // []
  SqBox,      // [u]
  Diamond,    // <>
  Bicont,     // <u>
  Arrow,      // ->
  Implies,    // =>
  Amp,        // &
  LParen,
  RParen,
  Question,   // ?
  Star,       // *
  End,
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s, const ParseOptions& opt) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (ident_start(c) || (c == '$' && opt.allow_metavariables)) {
      std::size_t j = i + 1;
      if (c == '$' && (j >= s.size() || !ident_start(s[j])))
        throw ParseError(at, "metavariable needs a name");
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::Ident, at, std::string(s.substr(i, j - i))});
      i = j;
      continue;
    }
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    static constexpr Sym syms[] = {
        {"~>", Tok::PartArrow}, {"~", Tok::Tilde},     {"[]", Tok::Box},    {"[u]", Tok::SqBox},
        {"<>", Tok::Diamond},   {"<u>", Tok::Bicont},  {"->", Tok::Arrow},  {"=>", Tok::Implies},
        {"&", Tok::Amp},        {"(", Tok::LParen},    {")", Tok::RParen},  {"?", Tok::Question},
        {"*", Tok::Star},
    };
    bool matched = false;
    for (const auto& sym : syms) {
      if (starts(sym.text)) {
        out.push_back({sym.kind, at, std::string(sym.text)});
        i += sym.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(at, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Term whole_term() {
    Term t = term();
    expect_end();
    return t;
  }

  Formula whole_formula() {
    Formula f = formula();
    expect_end();
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }

  void expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    advance();
  }

  void expect_end() {
    if (!at(Tok::End)) fail("unexpected trailing input '" + peek().text + "'");
  }

  Term term() {
    switch (peek().kind) {
      case Tok::Tilde: advance(); return Term::comp(term());
      case Tok::Box: advance(); return Term::box(term());
      case Tok::SqBox: advance(); return Term::sqbox(term());
      case Tok::Diamond: advance(); return Term::diamond(term());
      case Tok::Bicont: advance(); return Term::bicontingent(term());
      case Tok::Ident: {
        Term t = Term::atom(peek().text);
        advance();
        return t;
      }
      case Tok::LParen: {
        advance();
        Term t = term();
        expect(Tok::RParen, "')'");
        return t;
      }
      default: fail("expected a term");
    }
  }

  Formula atomic() {
    if (at(Tok::Star)) {
      advance();
      return Formula::star(term());
    }
    Term s = term();
    if (at(Tok::Arrow)) {
      advance();
      return Formula::univ(std::move(s), term());
    }
    if (at(Tok::PartArrow)) {
      advance();
      return Formula::part(std::move(s), term());
    }
    fail("expected '->' or '~>'");
  }

  Formula unit() {
    if (at(Tok::Question)) {
      std::size_t qpos = peek().pos;
      advance();
      expect(Tok::LParen, "'(' after '?'");
      std::size_t save = pos_;
      try {
        Formula inner = atomic();
        expect(Tok::RParen, "')'");
        return Formula::bl(std::move(inner));
      } catch (const ParseError&) {
        std::size_t failed_at = pos_;
        pos_ = save;
        bool compound = false;
        try {
          formula();
          compound = at(Tok::RParen);
        } catch (const ParseError&) {
        }
        if (compound) throw ParseError(qpos, "'?' applies only to atomic formulas");
        pos_ = failed_at;
        throw;
      }
    }
    if (at(Tok::LParen)) {
      std::size_t save = pos_;
      try {
        return atomic();
      } catch (const ParseError&) {
        pos_ = save;
      }
      advance();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    return atomic();
  }

  Formula conjunction() {
    Formula left = unit();
    if (at(Tok::Amp)) {
      advance();
      return Formula::conj(std::move(left), conjunction());
    }
    return left;
  }

  Formula formula() {
    Formula left = conjunction();
    if (at(Tok::Implies)) {
      advance();
      return Formula::implies(std::move(left), formula());
    }
    return left;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void render_into(const Term& t, std::string& out) {
  const Term* cur = &t;
  while (true) {
    switch (cur->kind()) {
      case TermKind::Atom: out += cur->name(); return;
      case TermKind::Box: out += "[]"; cur = &cur->inner(); break;
      case TermKind::SqBox: out += "[u]"; cur = &cur->inner(); break;
      case TermKind::Comp: {
        const Term& x = cur->inner();
        if (x.is_box() && x.inner().is_comp()) {
          out += "<>";
          cur = &x.inner().inner();
        } else if (x.is_sqbox()) {
          out += "<u>";
          cur = &x.inner();
        } else {
          out += "~";
          cur = &x;
        }
        break;
      }
    }
  }
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Univ:
      render_into(f.subject(), out);
      out += " -> ";
      render_into(f.predicate(), out);
      return;
    case FormulaKind::Part:
      if (f.subject() == f.predicate()) {
        out += "*";
        render_into(f.subject(), out);
        return;
      }
      render_into(f.subject(), out);
      out += " ~> ";
      render_into(f.predicate(), out);
      return;
    case FormulaKind::Bl:
      out += "?(";
      render_into(f.inner(), out);
      out += ")";
      return;
    case FormulaKind::And: {
      bool lp = f.left().is_and() || f.left().is_implies();
      bool rp = f.right().is_implies();
      if (lp) out += "(";
      render_into(f.left(), out);
      if (lp) out += ")";
      out += " & ";
      if (rp) out += "(";
      render_into(f.right(), out);
      if (rp) out += ")";
      return;
    }
    case FormulaKind::Implies: {
      bool lp = f.left().is_implies();
      if (lp) out += "(";
      render_into(f.left(), out);
      if (lp) out += ")";
      out += " => ";
      render_into(f.right(), out);
      return;
    }
  }
}

}  // namespace

Term parse_term(std::string_view text, const ParseOptions& options) {
  return Parser(lex(text, options)).whole_term();
}

Formula parse_formula(std::string_view text, const ParseOptions& options) {
  return Parser(lex(text, options)).whole_formula();
}

std::variant<Term, Formula> parse(std::string_view text, SyntaxKind kind,
                                  const ParseOptions& options) {
  if (kind == SyntaxKind::Term) return parse_term(text, options);
  return parse_formula(text, options);
}

std::string render(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

std::string_view grammar_help() {
  return R"HELP(Formula grammar:
  term    := prefix* (atom | "(" term ")")     prefix: ~  []  [u]  <>  <u>
  atom    := [A-Za-z_][A-Za-z0-9_]*
  afor    := term "->" term | term "~>" term | "*" term
  formula := afor | "?(" afor ")" | formula "&" formula | formula "=>" formula | "(" formula ")"
  "&" binds tighter than "=>"; both associate to the right.
Proof line:
  N. <formula> by HYP | RULE n... | AX_S | AX_T | AX_4 | AX_S5 | LEMMA(name) n...  [discharge n...]  [# comment]
Model file (.model.json):
  {"individuals": ["a", ...], "valuations": [{"Atom": ["a", ...], ...}, ...]}
)HELP";
}

}  // namespace aml
