#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "succinct/ctl.hpp"
#include "succinct/error.hpp"

namespace succinct::ctl {

namespace {

enum class Tok {
  Ident,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semi,
  Bang,
  Amp,
  Bar,
  Arrow,
  DArrow,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

const std::set<std::string>& reserved() {
  static const std::set<std::string> words = {
      "inputs", "outputs", "init", "true", "false", "A",  "E",  "U",
      "R",      "AX",      "EX",   "AG",   "EG",    "AF", "EF"};
  return words;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (src.substr(i, 3) == "<->") {
      out.push_back({Tok::DArrow, "<->", l, cl});
      advance(3);
      continue;
    }
    if (src.substr(i, 2) == "->") {
      out.push_back({Tok::Arrow, "->", l, cl});
      advance(2);
      continue;
    }
    Tok t;
    switch (c) {
      case '{': t = Tok::LBrace; break;
      case '}': t = Tok::RBrace; break;
      case '(': t = Tok::LParen; break;
      case ')': t = Tok::RParen; break;
      case ',': t = Tok::Comma; break;
      case ';': t = Tok::Semi; break;
      case '!': t = Tok::Bang; break;
      case '&': t = Tok::Amp; break;
      case '|': t = Tok::Bar; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({t, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::End, "end of input", line, col});
  return out;
}

struct NameRef {
  std::string name;
  std::size_t line;
  std::size_t col;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Spec spec() {
    Spec s;
    bool have_inputs = false, have_outputs = false, have_init = false;
    std::vector<NameRef> init_names;
    while (peek().kind == Tok::Ident &&
           (peek().text == "inputs" || peek().text == "outputs" || peek().text == "init")) {
      const Token head = next();
      if (head.text == "init") {
        if (have_init) throw ParseError("duplicate 'init' declaration", head.line, head.col);
        have_init = true;
        expect(Tok::LBrace, "'{'");
        if (peek().kind != Tok::RBrace) init_names = name_list();
        expect(Tok::RBrace, "'}'");
      } else {
        auto& seen = head.text == "inputs" ? have_inputs : have_outputs;
        if (seen) throw ParseError("duplicate '" + head.text + "' declaration", head.line, head.col);
        seen = true;
        std::vector<NameRef> names;
        if (peek().kind != Tok::Semi) names = name_list();
        auto& dest = head.text == "inputs" ? s.inputs : s.outputs;
        for (auto& n : names) {
          if (std::find(dest.begin(), dest.end(), n.name) != dest.end())
            throw ParseError("duplicate proposition '" + n.name + "'", n.line, n.col);
          dest.push_back(n.name);
        }
      }
      expect(Tok::Semi, "';'");
    }
    if (!have_inputs) throw ParseError("missing 'inputs' declaration", peek().line, peek().col);
    if (!have_outputs) throw ParseError("missing 'outputs' declaration", peek().line, peek().col);
    for (const auto& p : s.outputs) {
      if (std::find(s.inputs.begin(), s.inputs.end(), p) != s.inputs.end())
        throw ValidationError("input/output overlap: proposition '" + p + "' declared in both sets");
    }
    for (const auto& n : init_names) {
      auto idx = index_of(s.inputs, n.name);
      if (!idx)
        throw ParseError("init refers to '" + n.name + "', which is not an input", n.line, n.col);
      s.initial_input |= Letter{1} << *idx;
    }
    decls_ = &s;
    s.formula = formula();
    if (peek().kind == Tok::Semi) next();
    if (peek().kind != Tok::End)
      throw ParseError("unexpected '" + peek().text + "' after formula", peek().line, peek().col);
    validate(s);
    return s;
  }

  Formula bare(const Spec& decls) {
    decls_ = &decls;
    Formula f = formula();
    if (peek().kind == Tok::Semi) next();
    if (peek().kind != Tok::End)
      throw ParseError("unexpected '" + peek().text + "' after formula", peek().line, peek().col);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool is_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  void expect(Tok t, const char* what) {
    if (peek().kind != t)
      throw ParseError(std::string("expected ") + what + ", found '" + peek().text + "'", peek().line,
                       peek().col);
    next();
  }

  void expect_word(const char* w) {
    if (!is_word(w))
      throw ParseError(std::string("expected '") + w + "', found '" + peek().text + "'", peek().line,
                       peek().col);
    next();
  }

  std::vector<NameRef> name_list() {
    std::vector<NameRef> out;
    for (;;) {
      const Token t = next();
      if (t.kind != Tok::Ident) throw ParseError("expected proposition name, found '" + t.text + "'", t.line, t.col);
      if (reserved().count(t.text)) throw ParseError("'" + t.text + "' is a reserved word", t.line, t.col);
      out.push_back({t.text, t.line, t.col});
      if (peek().kind != Tok::Comma) break;
      next();
    }
    return out;
  }

  Formula formula() { return iff(); }

  Formula iff() {
    Formula f = imp();
    while (peek().kind == Tok::DArrow) {
      next();
      f = Formula::iff(f, imp());
    }
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (peek().kind == Tok::Arrow) {
      next();
      return Formula::implies(f, imp());
    }
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (peek().kind == Tok::Bar) {
      next();
      f = Formula::disj(f, conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (peek().kind == Tok::Amp) {
      next();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    if (peek().kind == Tok::Bang) {
      next();
      return Formula::neg(unary());
    }
    if (peek().kind == Tok::Ident) {
      const std::string& w = peek().text;
      if (w == "AX") return next(), Formula::ax(unary());
      if (w == "EX") return next(), Formula::ex(unary());
      if (w == "AG") return next(), Formula::ag(unary());
      if (w == "EG") return next(), Formula::eg(unary());
      if (w == "AF") return next(), Formula::af(unary());
      if (w == "EF") return next(), Formula::ef(unary());
    }
    return primary();
  }

  Formula primary() {
    const Token t = next();
    if (t.kind == Tok::LParen) {
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) throw ParseError("expected formula, found '" + t.text + "'", t.line, t.col);
    if (t.text == "true") return Formula::top();
    if (t.text == "false") return Formula::bottom();
    if (t.text == "A" || t.text == "E") {
      expect(Tok::LParen, "'(' after path quantifier");
      Formula a = formula();
      const bool until = is_word("U");
      if (!until && !is_word("R"))
        throw ParseError("expected 'U' or 'R', found '" + peek().text + "'", peek().line, peek().col);
      next();
      Formula b = formula();
      expect(Tok::RParen, "')'");
      const bool all = t.text == "A";
      if (until) return all ? Formula::au(a, b) : Formula::eu(a, b);
      return all ? Formula::ar(a, b) : Formula::er(a, b);
    }
    if (reserved().count(t.text)) throw ParseError("unexpected keyword '" + t.text + "'", t.line, t.col);
    const bool declared = index_of(decls_->inputs, t.text) || index_of(decls_->outputs, t.text);
    if (!declared) throw ParseError("undeclared proposition '" + t.text + "'", t.line, t.col);
    return Formula::atom(t.text);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Spec* decls_ = nullptr;
};

}  // namespace

Spec parse_spec(std::string_view text) { return Parser(text).spec(); }

Formula parse_formula(std::string_view text, const Spec& decls) { return Parser(text).bare(decls); }

}  // namespace succinct::ctl
