// Infix syntax:
//
//   file    := formula ((';' | newline) formula)*     (conjunction)
//   formula := conj ('or' conj)*
//   conj    := unary ('&' unary)*
//   unary   := '!' unary | '(' formula ')' | atom | 'true' | 'false'
//   atom    := term op term | term '%=' term 'mod' term
//   op      := '<=' | '<' | '>=' | '>' | '=' | '!=' | '|'
//
// Terms are linear: integers, identifiers, '+', '-', '*' with at least one
// constant operand, and juxtaposition such as 3x. A parenthesis at the start of
// a unary is ambiguous between a subformula and a subterm, so it is tried as a
// subformula first and reparsed as an atom on failure.

#include <cctype>

#include "sla/epad.hpp"

namespace sla::epad {

namespace {

struct Token {
  enum class K { Int, Ident, Op, Sep, End };
  K k;
  std::string text;
  Int value = 0;
  int line = 1, col = 1;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1, depth = 0;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    int l = line, co = col;
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n' || c == ';') {
      if (depth == 0 || c == ';') out.push_back({Token::K::Sep, std::string(1, c), 0, l, co});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      Int v = 0;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        try {
          v = arith::add(arith::mul(v, 10), s[j] - '0');
        } catch (const OverflowError&) {
          throw ParseError("integer literal out of range", l, co);
        }
        ++j;
      }
      out.push_back({Token::K::Int, std::string(s.substr(i, j - i)), v, l, co});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Token::K::Ident, std::string(s.substr(i, j - i)), 0, l, co});
      advance(j - i);
      continue;
    }
    static const char* two[] = {"<=", ">=", "!=", "%=", "&&", "||"};
    std::string op;
    for (const char* t : two)
      if (s.substr(i, 2) == t) op = t;
    if (op.empty()) {
      if (std::string("<>=|&!()+-*").find(c) == std::string::npos)
        throw ParseError(std::string("unexpected character '") + c + "'", l, co);
      op = std::string(1, c);
    }
    if (op == "&&") op = "&";
    if (op == "||") op = "or";
    if (op == "(") ++depth;
    if (op == ")") --depth;
    out.push_back({Token::K::Op, op, 0, l, co});
    advance(op == "or" ? 2 : op.size());
  }
  out.push_back({Token::K::End, "", 0, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula file() {
    std::vector<Formula> parts;
    skip_seps();
    while (peek().k != Token::K::End) {
      parts.push_back(formula());
      if (peek().k != Token::K::Sep && peek().k != Token::K::End) fail("expected ';', newline, or end of input");
      skip_seps();
    }
    return Formula::conj(std::move(parts));
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool is_op(const char* op) const { return peek().k == Token::K::Op && peek().text == op; }
  bool is_word(const char* w) const { return peek().k == Token::K::Ident && peek().text == w; }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(what + (t.k == Token::K::End ? " at end of input" : " near '" + t.text + "'"), t.line, t.col);
  }
  void expect(const char* op) {
    if (!is_op(op)) fail(std::string("expected '") + op + "'");
    ++pos_;
  }
  void skip_seps() {
    while (peek().k == Token::K::Sep) ++pos_;
  }

  Formula formula() {
    std::vector<Formula> parts{conj()};
    while (is_word("or") || is_op("or")) {
      ++pos_;
      parts.push_back(conj());
    }
    return Formula::disj(std::move(parts));
  }

  Formula conj() {
    std::vector<Formula> parts{unary()};
    while (is_op("&") || is_word("and")) {
      ++pos_;
      parts.push_back(unary());
    }
    return Formula::conj(std::move(parts));
  }

  Formula unary() {
    if (is_op("!") || is_word("not")) {
      ++pos_;
      return Formula::negate(unary());
    }
    if (is_word("true")) {
      ++pos_;
      return Formula::truth(true);
    }
    if (is_word("false")) {
      ++pos_;
      return Formula::truth(false);
    }
    if (is_op("(")) {
      std::size_t save = pos_;
      try {
        ++pos_;
        Formula f = formula();
        expect(")");
        if (!starts_relation()) return f;
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    return atom();
  }

  bool starts_relation() const {
    if (peek().k != Token::K::Op) return false;
    const std::string& t = peek().text;
    return t == "<=" || t == "<" || t == ">=" || t == ">" || t == "=" || t == "!=" || t == "|" || t == "%=" ||
           t == "+" || t == "-" || t == "*";
  }

  Formula atom() {
    LinearTerm lhs = term();
    if (peek().k != Token::K::Op) fail("expected a relation");
    std::string op = peek().text;
    ++pos_;
    LinearTerm rhs = term();
    if (op == "<=") return Formula::le(lhs, rhs);
    if (op == "<") return Formula::lt(lhs, rhs);
    if (op == ">=") return Formula::ge(lhs, rhs);
    if (op == ">") return Formula::gt(lhs, rhs);
    if (op == "=") return Formula::eq(lhs, rhs);
    if (op == "!=") return Formula::ne(lhs, rhs);
    if (op == "|") return Formula::divides(lhs, rhs);
    if (op == "%=") {
      if (!is_word("mod")) fail("expected 'mod'");
      ++pos_;
      return Formula::congruent(lhs, rhs, term());
    }
    --pos_;
    fail("expected a relation");
  }

  LinearTerm term() {
    LinearTerm t;
    bool neg = false;
    if (is_op("-")) {
      neg = true;
      ++pos_;
    } else if (is_op("+")) {
      ++pos_;
    }
    t = product();
    if (neg) t = -t;
    while (is_op("+") || is_op("-")) {
      bool minus = is_op("-");
      ++pos_;
      LinearTerm p = product();
      t = minus ? t - p : t + p;
    }
    return t;
  }

  LinearTerm product() {
    LinearTerm acc = factor();
    while (true) {
      bool explicit_mul = is_op("*");
      bool implicit_mul = !explicit_mul && acc.is_constant() && (peek().k == Token::K::Ident && !is_keyword());
      bool implicit_paren = !explicit_mul && acc.is_constant() && is_op("(") && pos_ > 0 && toks_[pos_ - 1].k == Token::K::Int;
      if (!explicit_mul && !implicit_mul && !implicit_paren) break;
      if (explicit_mul) ++pos_;
      LinearTerm f = factor();
      if (!acc.is_constant() && !f.is_constant()) fail("nonlinear product");
      acc = acc.is_constant() ? f * acc.constant() : acc * f.constant();
    }
    return acc;
  }

  bool is_keyword() const { return is_word("or") || is_word("and") || is_word("mod") || is_word("not"); }

  LinearTerm factor() {
    const Token& t = peek();
    if (t.k == Token::K::Int) {
      ++pos_;
      return LinearTerm(t.value);
    }
    if (t.k == Token::K::Ident && !is_keyword()) {
      ++pos_;
      return LinearTerm::var(t.text);
    }
    if (is_op("-")) {
      ++pos_;
      return -factor();
    }
    if (is_op("(")) {
      ++pos_;
      LinearTerm inner = term();
      expect(")");
      return inner;
    }
    fail("expected a term");
  }
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).file(); }

}  // namespace sla::epad
