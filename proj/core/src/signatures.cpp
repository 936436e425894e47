#include "sla/signatures.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

#include "pair_analysis.hpp"

namespace sla {

using namespace arith;

std::size_t EquivalenceType::class_of(const OrbitId& id) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (std::find(classes[i].begin(), classes[i].end(), id) != classes[i].end()) return i;
  throw Error("orbit '" + id + "' belongs to no class");
}

bool EquivalenceType::related(const OrbitId& a, const OrbitId& b) const { return class_of(a) == class_of(b); }

const OrbitId& EquivalenceType::representative(std::size_t cls) const {
  const auto& c = classes.at(cls);
  if (c.empty()) throw Error("empty class");
  return *std::min_element(c.begin(), c.end());
}

namespace {

// Offsets of every orbit of a class relative to its representative, solved
// from the stored diffs. `conflict` receives the first inconsistency.
struct Potentials {
  std::map<OrbitId, Int> value;
  std::optional<std::string> conflict;
};

Potentials potentials(const EquivalenceSignature& phi, std::size_t cls) {
  const Int ch = phi.chars.at(cls);
  const auto& members = phi.sim.classes.at(cls);
  std::map<OrbitId, std::vector<std::pair<OrbitId, Int>>> edges;
  for (const auto& [key, v] : phi.diffs) {
    const auto& [a, b] = key;
    bool ina = std::find(members.begin(), members.end(), a) != members.end();
    bool inb = std::find(members.begin(), members.end(), b) != members.end();
    if (!ina || !inb) continue;
    edges[a].push_back({b, v});
    edges[b].push_back({a, sub(0, v)});
  }
  Potentials out;
  const OrbitId& rep = phi.sim.representative(cls);
  out.value[rep] = 0;
  std::deque<OrbitId> work{rep};
  while (!work.empty()) {
    OrbitId a = work.front();
    work.pop_front();
    for (const auto& [b, v] : edges[a]) {
      Int want = mod0(add(out.value[a], v), ch);
      auto it = out.value.find(b);
      if (it == out.value.end()) {
        out.value[b] = want;
        work.push_back(b);
      } else if (!out.conflict && !divides(ch, sub(it->second, want))) {
        out.conflict = "diffs around '" + a + "' and '" + b + "' disagree modulo " + std::to_string(ch);
      }
    }
  }
  return out;
}

}  // namespace

Int EquivalenceSignature::diff(const OrbitId& a, const OrbitId& b) const {
  const std::size_t cls = sim.class_of(a);
  if (sim.class_of(b) != cls) throw Error("orbits '" + a + "' and '" + b + "' are not related");
  const Int ch = chars.at(cls);
  if (a == b) return 0;
  if (auto it = diffs.find({a, b}); it != diffs.end()) return mod0(it->second, ch);
  if (auto it = diffs.find({b, a}); it != diffs.end()) return mod0(sub(0, it->second), ch);
  Potentials p = potentials(*this, cls);
  if (!p.value.count(a) || !p.value.count(b)) throw Error("no diff determines ('" + a + "', '" + b + "')");
  return mod0(sub(p.value[b], p.value[a]), ch);
}

EquivalenceSignature identity_signature(const OrbitFiniteSet& states) {
  EquivalenceSignature phi;
  for (const auto& o : states.orbits()) {
    phi.sim.classes.push_back({o.id});
    phi.chars.push_back(o.characteristic);
  }
  return phi;
}

EquivalenceSignature acceptance_signature(const EquivariantDFA& d) {
  EquivalenceSignature phi;
  std::vector<OrbitId> acc, rej;
  for (const auto& o : d.states.orbits()) (d.accepting.count(o.id) ? acc : rej).push_back(o.id);
  for (auto* group : {&acc, &rej}) {
    if (group->empty()) continue;
    const OrbitId& rep = *std::min_element(group->begin(), group->end());
    for (const auto& id : *group)
      if (id != rep) phi.diffs[{rep, id}] = 0;
    phi.sim.classes.push_back(*group);
    phi.chars.push_back(1);
  }
  return phi;
}

std::vector<std::string> check_signature(const EquivalenceSignature& phi, const OrbitFiniteSet& states) {
  std::vector<std::string> diags;
  if (phi.chars.size() != phi.sim.classes.size())
    diags.push_back(std::to_string(phi.sim.classes.size()) + " classes but " + std::to_string(phi.chars.size()) +
                    " characteristics");
  std::map<OrbitId, int> seen;
  for (const auto& cls : phi.sim.classes) {
    if (cls.empty()) diags.push_back("empty class");
    for (const auto& id : cls) {
      if (!states.contains(id)) diags.push_back("unknown orbit '" + id + "' in a class");
      ++seen[id];
    }
  }
  for (const auto& o : states.orbits()) {
    if (!seen.count(o.id)) diags.push_back("orbit '" + o.id + "' belongs to no class");
    else if (seen[o.id] > 1) diags.push_back("orbit '" + o.id + "' belongs to several classes");
  }
  if (!diags.empty()) return diags;

  for (std::size_t i = 0; i < phi.sim.classes.size(); ++i) {
    const Int ch = phi.chars[i];
    if (ch < 0) {
      diags.push_back("negative characteristic " + std::to_string(ch));
      continue;
    }
    for (const auto& id : phi.sim.classes[i]) {
      Int k = states.characteristic(id);
      if (!divides(ch, k))
        diags.push_back("characteristic " + std::to_string(ch) + " of the class of '" + id + "' does not divide " +
                        std::to_string(k));
    }
  }
  for (const auto& [key, v] : phi.diffs) {
    const auto& [a, b] = key;
    if (!states.contains(a) || !states.contains(b)) {
      diags.push_back("diff for unknown pair ('" + a + "', '" + b + "')");
    } else if (!phi.sim.related(a, b)) {
      diags.push_back("diff for unrelated pair ('" + a + "', '" + b + "')");
    } else if (a == b && !divides(phi.char_of(a), v)) {
      diags.push_back("diff('" + a + "', '" + a + "') is not 0");
    }
  }
  if (!diags.empty()) return diags;

  for (std::size_t i = 0; i < phi.sim.classes.size(); ++i) {
    Potentials p = potentials(phi, i);
    if (p.conflict) diags.push_back(*p.conflict);
    for (const auto& id : phi.sim.classes[i])
      if (!p.value.count(id)) diags.push_back("no diff connects '" + id + "' to the rest of its class");
  }
  return diags;
}

bool equiv(const EquivalenceSignature& phi, const Element& e1, const Element& e2) {
  if (!phi.sim.related(e1.orbit, e2.orbit)) return false;
  return divides(phi.char_of(e1.orbit), sub(sub(e2.value, e1.value), phi.diff(e1.orbit, e2.orbit)));
}

namespace {

struct PairContext {
  bool related = false;
  Int ch = 0, dd = 0;
};

PairContext context(const EquivalenceSignature& phi, const LiftedPiece& x, const LiftedPiece& y) {
  PairContext c;
  c.related = phi.sim.related(x.target, y.target);
  if (c.related) {
    c.ch = phi.char_of(x.target);
    c.dd = phi.diff(x.target, y.target);
  }
  return c;
}

}  // namespace

PeriodicSet1D shift_set(const PiecewiseAffineMap& f, const PiecewiseAffineMap& g, const EquivalenceSignature& phi,
                        const OrbitFiniteSet& states) {
  const auto lf = lift(f, states), lg = lift(g, states);
  PeriodicSet1D out = PeriodicSet1D::all();
  for (const auto& x : lf) {
    for (const auto& y : lg) {
      const PairContext ctx = context(phi, x, y);
      const Int L = lcm(x.step, y.step);
      PeriodicSet1D pair;
      for (Int d0 = 0; d0 < L; ++d0) {
        auto geo = detail::pair_geometry(x, y, d0);
        PeriodicSet1D ms = geo ? detail::pair_solutions(*geo, ctx.related, ctx.ch, ctx.dd) : PeriodicSet1D::all();
        pair = pair.unite(ms.scale(d0, L));
      }
      out = out.intersect(pair);
      if (out.is_empty()) return out;
    }
  }
  return out;
}

bool in_shift_set(const PiecewiseAffineMap& f, const PiecewiseAffineMap& g, const EquivalenceSignature& phi,
                  const OrbitFiniteSet& states, Int delta) {
  const auto lf = lift(f, states), lg = lift(g, states);
  for (const auto& x : lf) {
    for (const auto& y : lg) {
      const Int L = lcm(x.step, y.step);
      auto geo = detail::pair_geometry(x, y, mod(delta, L));
      if (!geo) continue;
      const PairContext ctx = context(phi, x, y);
      if (!detail::pair_holds(*geo, floor_div(delta, L), ctx.related, ctx.ch, ctx.dd)) return false;
    }
  }
  return true;
}

namespace {

void require_valid(const EquivalenceSignature& phi, const OrbitFiniteSet& states) {
  auto diags = check_signature(phi, states);
  if (!diags.empty()) throw Error("invalid signature: " + diags.front());
}

}  // namespace

bool is_congruence(const EquivariantDFA& d, const EquivalenceSignature& phi) {
  require_valid(phi, d.states);
  const auto& orbits = d.states.orbits();
  for (const auto& alpha : d.alphabet.orbits()) {
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      const auto& tau = orbits[i].id;
      const auto& m = d.map(tau, alpha.id);
      const Int ch = phi.char_of(tau);
      if (ch != 0 && !in_shift_set(m, m, phi, d.states, ch)) return false;
      for (std::size_t j = i + 1; j < orbits.size(); ++j) {
        const auto& sigma = orbits[j].id;
        if (!phi.sim.related(tau, sigma)) continue;
        if (!in_shift_set(m, d.map(sigma, alpha.id), phi, d.states, phi.diff(tau, sigma))) return false;
      }
    }
  }
  return true;
}

bool is_nontrivial(const EquivalenceSignature& phi, const OrbitFiniteSet& states) {
  for (std::size_t i = 0; i < phi.sim.classes.size(); ++i) {
    const auto& cls = phi.sim.classes[i];
    if (cls.size() >= 2) return true;
    for (const auto& id : cls)
      if (phi.chars.at(i) != states.characteristic(id)) return true;
  }
  return false;
}

bool respects_accepting(const EquivalenceSignature& phi, const EquivariantDFA& d) {
  for (const auto& cls : phi.sim.classes) {
    std::size_t acc = 0;
    for (const auto& id : cls) acc += d.accepting.count(id);
    if (acc != 0 && acc != cls.size()) return false;
  }
  return true;
}

Element Quotient::project(const Element& e) const {
  auto it = projection.find(e.orbit);
  if (it == projection.end()) throw Error("unknown orbit '" + e.orbit + "'");
  return canonicalize({it->second.first, sub(e.value, it->second.second)}, automaton.states);
}

Quotient quotient(const EquivariantDFA& d, const EquivalenceSignature& phi) {
  require_valid(phi, d.states);
  if (!respects_accepting(phi, d)) throw Error("signature mixes accepting and rejecting orbits");
  if (!is_congruence(d, phi)) throw Error("signature is not a congruence");

  Quotient q;
  EquivariantDFA& out = q.automaton;
  out.alphabet = d.alphabet;
  for (const auto& o : d.states.orbits()) {
    const std::size_t cls = phi.sim.class_of(o.id);
    const OrbitId& rep = phi.sim.representative(cls);
    if (rep == o.id) out.states.add({rep, phi.chars[cls]});
    // (tau, x) == (rep, x - diff(rep, tau)).
    q.projection[o.id] = {rep, phi.diff(rep, o.id)};
  }
  for (const auto& o : d.accepting) out.accepting.insert(q.projection.at(o).first);
  out.initial = q.project(d.initial);

  for (const auto& sigma : out.states.orbits()) {
    const Int ch = sigma.characteristic;
    for (const auto& alpha : d.alphabet.orbits()) {
      const auto& m = d.map(sigma.id, alpha.id);
      PiecewiseAffineMap qm{sigma.id, {}};
      if (ch >= 1) {
        for (Int y = 0; y < ch; ++y) {
          Element e = q.project(pw_eval(m, y, d.states));
          qm.pieces.push_back({{y, 1, 1}, e.orbit, 0, e.value});
        }
      } else {
        for (const auto& p : m.pieces) {
          const auto& [target, shift] = q.projection.at(p.target);
          const Int tc = out.states.characteristic(target);
          qm.pieces.push_back({p.domain, target, mod0(p.coeff, tc), mod0(sub(p.offset, shift), tc)});
        }
      }
      out.transitions[{sigma.id, alpha.id}] = std::move(qm);
    }
  }
  return q;
}

EquivalenceSignature refine(const EquivariantDFA& d, const EquivalenceSignature& phi) {
  require_valid(phi, d.states);
  const auto& alphabet = d.alphabet.orbits();
  auto common = [&](const OrbitId& a, const OrbitId& b) {
    PeriodicSet1D s = PeriodicSet1D::all();
    for (const auto& alpha : alphabet) {
      s = s.intersect(shift_set(d.map(a, alpha.id), d.map(b, alpha.id), phi, d.states));
      if (s.is_empty()) break;
    }
    return s;
  };

  std::map<OrbitId, Int> chars;
  for (const auto& o : d.states.orbits()) {
    PeriodicSet1D own = common(o.id, o.id);
    if (!own.contains(0) || (o.characteristic != 0 && !own.contains(o.characteristic)))
      throw Error("internal error: self shifts of '" + o.id + "' do not form a subgroup");
    chars[o.id] = own.min_positive().value_or(0);
  }

  // Each class grows around its first orbit; offsets are relative to it.
  struct Group {
    std::vector<OrbitId> members;
    std::map<OrbitId, Int> offset;
  };
  std::vector<Group> groups;
  for (const auto& o : d.states.orbits()) {
    bool placed = false;
    for (auto& g : groups) {
      const OrbitId& anchor = g.members.front();
      if (!phi.sim.related(anchor, o.id) || d.accepting.count(anchor) != d.accepting.count(o.id)) continue;
      PeriodicSet1D e = common(anchor, o.id);
      auto shift = e.smallest_magnitude();
      if (!shift) continue;
      if (chars[anchor] != chars[o.id])
        throw Error("internal error: related orbits '" + anchor + "' and '" + o.id + "' differ in characteristic");
      g.members.push_back(o.id);
      g.offset[o.id] = *shift;
      placed = true;
      break;
    }
    if (!placed) groups.push_back({{o.id}, {{o.id, 0}}});
  }

  EquivalenceSignature next;
  for (const auto& g : groups) {
    const Int ch = chars[g.members.front()];
    const OrbitId& rep = *std::min_element(g.members.begin(), g.members.end());
    for (const auto& a : g.members) {
      for (const auto& b : g.members) {
        if (a >= b) continue;
        Int want = sub(g.offset.at(b), g.offset.at(a));
        if (!common(a, b).contains(want))
          throw Error("internal error: refined relation is not transitive on '" + a + "', '" + b + "'");
      }
      if (a != rep) next.diffs[{rep, a}] = mod0(sub(g.offset.at(a), g.offset.at(rep)), ch);
    }
    next.sim.classes.push_back(g.members);
    next.chars.push_back(ch);
  }
  return next;
}

std::string to_string(const EquivalenceSignature& phi) {
  std::ostringstream os;
  os << "sim={";
  for (std::size_t i = 0; i < phi.sim.classes.size(); ++i) {
    os << (i ? "," : "") << "[";
    for (std::size_t j = 0; j < phi.sim.classes[i].size(); ++j) os << (j ? "," : "") << phi.sim.classes[i][j];
    os << "]";
  }
  os << "}; char={";
  for (std::size_t i = 0; i < phi.chars.size(); ++i) os << (i ? "," : "") << phi.chars[i];
  os << "}; diff={";
  bool first = true;
  for (const auto& [key, v] : phi.diffs) {
    os << (first ? "" : ",") << "(" << key.first << "," << key.second << "):" << v;
    first = false;
  }
  os << "}";
  return os.str();
}

namespace {

class SignatureParser {
 public:
  explicit SignatureParser(std::string_view text) : text_(text) {}

  EquivalenceSignature parse() {
    EquivalenceSignature phi;
    keyword("sim");
    list('{', '}', [&] {
      std::vector<OrbitId> cls;
      list('[', ']', [&] { cls.push_back(ident()); });
      phi.sim.classes.push_back(std::move(cls));
    });
    expect(';');
    keyword("char");
    list('{', '}', [&] { phi.chars.push_back(integer()); });
    expect(';');
    keyword("diff");
    list('{', '}', [&] {
      expect('(');
      OrbitId a = ident();
      expect(',');
      OrbitId b = ident();
      expect(')');
      expect(':');
      phi.diffs[{a, b}] = integer();
    });
    skip();
    if (pos_ < text_.size() && text_[pos_] == ';') ++pos_;
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return phi;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'' || c == '-';
  }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected an orbit id");
    return std::string(text_.substr(start, pos_ - start));
  }

  Int integer() {
    std::string s = ident();
    try {
      std::size_t used = 0;
      Int v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail("expected an integer, got '" + s + "'");
  }

  void keyword(const char* word) {
    if (ident() != word) fail(std::string("expected '") + word + "'");
    expect('=');
  }

  template <typename Item>
  void list(char open, char close, Item item) {
    expect(open);
    if (accept(close)) return;
    do item();
    while (accept(','));
    expect(close);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

EquivalenceSignature parse_signature(std::string_view text) { return SignatureParser(text).parse(); }

}  // namespace sla
