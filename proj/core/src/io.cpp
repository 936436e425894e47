#include "sla/io.hpp"

#include <cctype>
#include <sstream>

namespace sla {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }
  [[noreturn]] void fail_at(const std::string& what, int line, int col) const { throw ParseError(what, line, col); }
  int line() const { return line_; }
  int col() const { return col_; }

  /// Skips blanks and comments; newlines too when `lines` is set.
  void skip(bool lines) {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '\n' ? lines : std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip(true);
    return pos_ >= text_.size();
  }

  /// True when only blanks or a comment remain on the current line.
  bool at_line_end() {
    skip(false);
    return pos_ >= text_.size() || text_[pos_] == '\n';
  }

  char peek() {
    skip(false);
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c, bool lines = false) {
    skip(lines);
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c, bool lines = false) {
    if (!accept(c, lines)) fail(std::string("expected '") + c + "'");
  }

  void expect_text(std::string_view s) {
    skip(false);
    if (text_.substr(pos_, s.size()) != s) fail("expected '" + std::string(s) + "'");
    for (std::size_t i = 0; i < s.size(); ++i) advance();
  }

  static bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\''; }

  std::string word(const char* what = "a name") {
    skip(false);
    std::size_t start = pos_;
    while (pos_ < text_.size() && word_char(text_[pos_])) advance();
    if (start == pos_) fail(std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  void keyword(std::string_view kw) {
    skip(false);
    const int l = line_, c = col_;
    if (word() != kw) fail_at("expected '" + std::string(kw) + "'", l, c);
  }

  Int integer() {
    skip(false);
    int l = line_, c = col_;
    std::string s;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      s += text_[pos_];
      advance();
    }
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      s += text_[pos_];
      advance();
    }
    try {
      std::size_t used = 0;
      Int v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::out_of_range&) {
      fail_at("integer out of range", l, c);
    } catch (const std::exception&) {
    }
    fail_at("expected an integer", l, c);
  }

  bool next_is_digit() {
    skip(false);
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

struct Header {
  OrbitFiniteSet states, alphabet;
};

// The `t*C+O` value of a piece.
std::pair<Int, Int> affine_value(Cursor& in) {
  Int coeff = 0, offset = 0;
  bool first = true;
  while (true) {
    Int sign = 1;
    if (in.accept('+')) {
    } else if (in.accept('-')) {
      sign = -1;
    } else if (!first) {
      break;
    }
    if (in.peek() == 't') {
      in.expect('t');
      Int c = in.accept('*') ? in.integer() : 1;
      coeff = arith::add(coeff, arith::mul(sign, c));
    } else {
      Int v = in.integer();
      if (in.accept('*')) {
        in.expect('t');
        coeff = arith::add(coeff, arith::mul(sign, v));
      } else {
        offset = arith::add(offset, arith::mul(sign, v));
      }
    }
    first = false;
    char c = in.peek();
    if (c != '+' && c != '-') break;
  }
  return {coeff, offset};
}

AffinePiece piece(Cursor& in, const OrbitFiniteSet& states) {
  in.keyword("piece");
  in.keyword("base");
  in.expect('=');
  Int base = in.integer();
  in.keyword("step");
  in.expect('=');
  int sl = in.line(), sc = in.col();
  Int step = in.integer();
  if (step == 0) in.fail_at("step must be nonzero", sl, sc);
  in.keyword("count");
  in.expect('=');
  std::optional<Int> count;
  if (in.next_is_digit() || in.peek() == '-') {
    int l = in.line(), c = in.col();
    count = in.integer();
    if (*count < 1) in.fail_at("count must be positive", l, c);
  } else {
    in.keyword("inf");
  }
  in.expect_text("->");
  int tl = in.line(), tc = in.col();
  OrbitId target = in.word("a target orbit");
  if (!states.contains(target)) in.fail_at("unknown state orbit '" + target + "'", tl, tc);
  auto [coeff, offset] = affine_value(in);
  return {{base, step, count}, target, coeff, offset};
}

LinearSet linear(Cursor& in) {
  in.keyword("linear");
  auto vec = [&] {
    std::vector<Int> v;
    in.expect('(');
    do v.push_back(in.integer());
    while (in.accept(','));
    in.expect(')');
    return v;
  };
  LinearSet s;
  in.keyword("base");
  in.expect('=');
  s.base = vec();
  in.keyword("periods");
  in.expect('=');
  in.expect('[');
  if (!in.accept(']')) {
    do s.periods.push_back(vec());
    while (in.accept(','));
    in.expect(']');
  }
  return s;
}

// Shared statements; returns false when `kw` is not one of them.
bool declaration(Cursor& in, const std::string& kw, Header& h, int line, int col) {
  if (kw != "orbit" && kw != "letter") return false;
  OrbitId id = in.word("an orbit id");
  in.keyword("char");
  int l = in.line(), c = in.col();
  Int k = in.integer();
  if (k < 0) in.fail_at("characteristic must be nonnegative", l, c);
  auto& set = kw == "orbit" ? h.states : h.alphabet;
  if (set.contains(id)) in.fail_at("duplicate " + kw + " '" + id + "'", line, col);
  set.add({id, k});
  return true;
}

OrbitId known(Cursor& in, const OrbitFiniteSet& set, const char* what) {
  int l = in.line(), c = in.col();
  OrbitId id = in.word(what);
  if (!set.contains(id)) in.fail_at(std::string("unknown ") + what + " '" + id + "'", l, c);
  return id;
}

std::string first_statement(std::string_view text) {
  Cursor in(text);
  if (in.at_end()) return "";
  try {
    return in.word();
  } catch (const ParseError&) {
    return "";
  }
}

}  // namespace

bool is_nfa_text(std::string_view text) { return first_statement(text) == "nfa"; }

EquivariantDFA parse_automaton(std::string_view text) {
  Cursor in(text);
  Header h;
  EquivariantDFA d;
  bool have_initial = false, have_accepting = false, first = true;
  while (!in.at_end()) {
    int line = in.line(), col = in.col();
    std::string kw = in.word("a statement");
    if (first && kw == "dfa") {
      first = false;
      continue;
    }
    if (first && kw == "nfa") in.fail_at("this is an NFA file", line, col);
    first = false;
    if (declaration(in, kw, h, line, col)) {
    } else if (kw == "initial") {
      if (have_initial) in.fail_at("duplicate initial statement", line, col);
      OrbitId o = known(in, h.states, "state orbit");
      d.initial = {o, in.integer()};
      have_initial = true;
    } else if (kw == "accepting") {
      if (have_accepting) in.fail_at("duplicate accepting statement", line, col);
      while (!in.at_line_end()) d.accepting.insert(known(in, h.states, "state orbit"));
      have_accepting = true;
    } else if (kw == "trans") {
      OrbitId q = known(in, h.states, "state orbit");
      in.keyword("on");
      OrbitId a = known(in, h.alphabet, "letter orbit");
      in.expect(':');
      if (d.transitions.count({q, a})) in.fail_at("duplicate transition block for ('" + q + "', '" + a + "')", line, col);
      PiecewiseAffineMap m{q, {}};
      in.skip(true);
      m.pieces.push_back(piece(in, h.states));
      while (in.accept(';')) {
        in.skip(true);
        m.pieces.push_back(piece(in, h.states));
      }
      d.transitions[{q, a}] = std::move(m);
    } else {
      in.fail_at("unknown statement '" + kw + "'", line, col);
    }
    if (!in.at_line_end()) in.fail("unexpected text after statement");
  }
  if (!have_initial) in.fail("missing initial statement");
  d.states = h.states;
  d.alphabet = h.alphabet;
  for (const auto& q : d.states.orbits())
    for (const auto& a : d.alphabet.orbits())
      if (!d.transitions.count({q.id, a.id}))
        in.fail("missing transition block for state orbit '" + q.id + "' and letter orbit '" + a.id + "'");
  return d;
}

EquivariantNFA parse_nfa(std::string_view text) {
  Cursor in(text);
  Header h;
  EquivariantNFA n;
  int line = in.line(), col = in.col();
  if (in.at_end() || in.word("'nfa'") != "nfa") in.fail_at("an NFA file starts with 'nfa'", line, col);
  while (!in.at_end()) {
    line = in.line();
    col = in.col();
    std::string kw = in.word("a statement");
    if (declaration(in, kw, h, line, col)) {
    } else if (kw == "initial" || kw == "accepting") {
      auto& target = kw == "initial" ? n.initial : n.accepting;
      while (!in.at_line_end()) target.insert(known(in, h.states, "state orbit"));
    } else if (kw == "rel") {
      OrbitId p = known(in, h.states, "state orbit");
      in.keyword("on");
      OrbitId a = known(in, h.alphabet, "letter orbit");
      in.expect_text("->");
      OrbitId q = known(in, h.states, "state orbit");
      in.expect(':');
      auto key = std::make_tuple(p, a, q);
      if (n.transitions.count(key)) in.fail_at("duplicate relation block", line, col);
      LinearSetUnion r;
      r.dimension = 2;
      auto component = [&] {
        in.skip(true);
        int l = in.line(), c = in.col();
        LinearSet s = linear(in);
        bool ok = s.base.size() == 2;
        for (const auto& v : s.periods) ok = ok && v.size() == 2;
        if (!ok) in.fail_at("relations are two-dimensional", l, c);
        r.components.push_back(std::move(s));
      };
      component();
      while (in.accept(';')) component();
      n.transitions[key] = std::move(r);
    } else {
      in.fail_at("unknown statement '" + kw + "'", line, col);
    }
    if (!in.at_line_end()) in.fail("unexpected text after statement");
  }
  n.states = h.states;
  n.alphabet = h.alphabet;
  return n;
}

namespace {

void render_orbits(std::ostream& os, const OrbitFiniteSet& states, const OrbitFiniteSet& alphabet) {
  for (const auto& o : states.orbits()) os << "orbit " << o.id << " char " << o.characteristic << "\n";
  for (const auto& o : alphabet.orbits()) os << "letter " << o.id << " char " << o.characteristic << "\n";
}

void render_list(std::ostream& os, const char* kw, const std::vector<Orbit>& order, const std::set<OrbitId>& members) {
  os << kw;
  for (const auto& o : order)
    if (members.count(o.id)) os << " " << o.id;
  os << "\n";
}

std::string render_piece(const AffinePiece& p) {
  std::ostringstream os;
  os << "piece base=" << p.domain.base << " step=" << p.domain.step << " count=";
  if (p.domain.count) os << *p.domain.count;
  else os << "inf";
  os << " -> " << p.target << " t*" << p.coeff << (p.offset < 0 ? "-" : "+") << arith::abs(p.offset);
  return os.str();
}

std::string render_vector(const std::vector<Int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

template <typename Item, typename Render>
void render_block(std::ostream& os, const std::vector<Item>& items, Render render) {
  if (items.size() == 1) {
    os << " " << render(items.front()) << "\n";
    return;
  }
  os << "\n";
  for (std::size_t i = 0; i < items.size(); ++i) os << "  " << render(items[i]) << (i + 1 < items.size() ? ";" : "") << "\n";
}

}  // namespace

std::string render_automaton(const EquivariantDFA& d) {
  std::ostringstream os;
  os << "dfa\n";
  render_orbits(os, d.states, d.alphabet);
  os << "initial " << d.initial.orbit << " " << d.initial.value << "\n";
  render_list(os, "accepting", d.states.orbits(), d.accepting);
  for (const auto& q : d.states.orbits())
    for (const auto& a : d.alphabet.orbits()) {
      auto it = d.transitions.find({q.id, a.id});
      if (it == d.transitions.end()) continue;
      os << "trans " << q.id << " on " << a.id << ":";
      render_block(os, it->second.pieces, render_piece);
    }
  return os.str();
}

std::string render_nfa(const EquivariantNFA& n) {
  std::ostringstream os;
  os << "nfa\n";
  render_orbits(os, n.states, n.alphabet);
  render_list(os, "initial", n.states.orbits(), n.initial);
  render_list(os, "accepting", n.states.orbits(), n.accepting);
  for (const auto& [key, rel] : n.transitions) {
    if (rel.components.empty()) continue;
    const auto& [p, a, q] = key;
    os << "rel " << p << " on " << a << " -> " << q << ":";
    render_block(os, rel.components, [](const LinearSet& s) {
      std::string out = "linear base=" + render_vector(s.base) + " periods=[";
      for (std::size_t i = 0; i < s.periods.size(); ++i) out += (i ? "," : "") + render_vector(s.periods[i]);
      return out + "]";
    });
  }
  return os.str();
}

Word parse_word(std::string_view text) {
  Cursor in(text);
  Word w;
  while (!in.at_end()) {
    Letter a;
    a.orbit = in.word("a letter orbit");
    in.expect(':');
    a.value = in.integer();
    w.push_back(std::move(a));
  }
  return w;
}

}  // namespace sla
