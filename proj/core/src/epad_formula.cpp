#include <sstream>

#include "sla/epad.hpp"

namespace sla::epad {

// ---- LinearTerm ----

LinearTerm LinearTerm::var(const std::string& name, Int coeff) {
  LinearTerm t;
  if (coeff != 0) t.coeffs_[name] = coeff;
  return t;
}

Int LinearTerm::coefficient(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? 0 : it->second;
}

std::set<std::string> LinearTerm::variables() const {
  std::set<std::string> out;
  for (const auto& [v, _] : coeffs_) out.insert(v);
  return out;
}

Int LinearTerm::evaluate(const Valuation& v) const {
  Int acc = constant_;
  for (const auto& [name, c] : coeffs_) {
    auto it = v.find(name);
    if (it == v.end()) throw Error("unassigned variable '" + name + "'");
    acc = arith::add(acc, arith::mul(c, it->second));
  }
  return acc;
}

LinearTerm LinearTerm::substitute(const std::string& name, const LinearTerm& value) const {
  auto it = coeffs_.find(name);
  if (it == coeffs_.end()) return *this;
  Int c = it->second;
  LinearTerm out = *this;
  out.coeffs_.erase(name);
  out += value * c;
  return out;
}

LinearTerm LinearTerm::substitute(const Valuation& partial) const {
  LinearTerm out;
  out.constant_ = constant_;
  for (const auto& [name, c] : coeffs_) {
    auto it = partial.find(name);
    if (it == partial.end())
      out.coeffs_[name] = c;
    else
      out.constant_ = arith::add(out.constant_, arith::mul(c, it->second));
  }
  return out;
}

LinearTerm LinearTerm::operator-() const { return *this * -1; }

LinearTerm& LinearTerm::operator+=(const LinearTerm& o) {
  constant_ = arith::add(constant_, o.constant_);
  for (const auto& [name, c] : o.coeffs_) {
    Int v = arith::add(coefficient(name), c);
    if (v == 0)
      coeffs_.erase(name);
    else
      coeffs_[name] = v;
  }
  return *this;
}

LinearTerm& LinearTerm::operator-=(const LinearTerm& o) { return *this += -o; }

LinearTerm& LinearTerm::operator*=(Int k) {
  if (k == 0) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  constant_ = arith::mul(constant_, k);
  for (auto& [_, c] : coeffs_) c = arith::mul(c, k);
  return *this;
}

std::string LinearTerm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, c] : coeffs_) {
    if (first) {
      if (c == -1)
        os << "-";
      else if (c != 1)
        os << c << "*";
    } else {
      os << (c < 0 ? " - " : " + ");
      Int a = arith::abs(c);
      if (a != 1) os << a << "*";
    }
    os << name;
    first = false;
  }
  if (first)
    os << constant_;
  else if (constant_ != 0)
    os << (constant_ < 0 ? " - " : " + ") << arith::abs(constant_);
  return os.str();
}

// ---- Formula ----

struct Formula::Node {
  Kind kind;
  Atom atom;
  std::vector<Formula> kids;
};

namespace {
const Atom kNoAtom{Relation::Eq, {}, {}};
}

Formula::Formula() : node_(std::make_shared<const Node>(Node{Kind::True, kNoAtom, {}})) {}

Formula Formula::truth(bool value) {
  return Formula(std::make_shared<const Node>(Node{value ? Kind::True : Kind::False, kNoAtom, {}}));
}

Formula Formula::atom(Atom a) { return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}})); }

Formula Formula::ne(LinearTerm a, LinearTerm b) { return negate(eq(std::move(a), std::move(b))); }

Formula Formula::conj(std::vector<Formula> parts) {
  std::vector<Formula> kept;
  for (auto& p : parts) {
    if (p.kind() == Kind::True) continue;
    if (p.kind() == Kind::False) return truth(false);
    if (p.kind() == Kind::And) {
      for (const auto& k : p.children()) kept.push_back(k);
    } else {
      kept.push_back(std::move(p));
    }
  }
  if (kept.empty()) return truth(true);
  if (kept.size() == 1) return kept.front();
  return Formula(std::make_shared<const Node>(Node{Kind::And, kNoAtom, std::move(kept)}));
}

Formula Formula::disj(std::vector<Formula> parts) {
  std::vector<Formula> kept;
  for (auto& p : parts) {
    if (p.kind() == Kind::False) continue;
    if (p.kind() == Kind::True) return truth(true);
    if (p.kind() == Kind::Or) {
      for (const auto& k : p.children()) kept.push_back(k);
    } else {
      kept.push_back(std::move(p));
    }
  }
  if (kept.empty()) return truth(false);
  if (kept.size() == 1) return kept.front();
  return Formula(std::make_shared<const Node>(Node{Kind::Or, kNoAtom, std::move(kept)}));
}

Formula Formula::negate(Formula f) {
  switch (f.kind()) {
    case Kind::True:
      return truth(false);
    case Kind::False:
      return truth(true);
    case Kind::Not:
      return f.children().front();
    default:
      return Formula(std::make_shared<const Node>(Node{Kind::Not, kNoAtom, {std::move(f)}}));
  }
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Atom& Formula::as_atom() const { return node_->atom; }
const std::vector<Formula>& Formula::children() const { return node_->kids; }

std::set<std::string> Formula::variables() const {
  std::set<std::string> out;
  if (kind() == Kind::Atom) {
    out = as_atom().lhs.variables();
    auto r = as_atom().rhs.variables();
    out.insert(r.begin(), r.end());
  }
  for (const auto& k : children()) {
    auto s = k.variables();
    out.insert(s.begin(), s.end());
  }
  return out;
}

std::size_t Formula::node_count() const {
  std::size_t n = 1;
  for (const auto& k : children()) n += k.node_count();
  return n;
}

std::string Formula::to_string() const {
  switch (kind()) {
    case Kind::True:
      return "0 = 0";
    case Kind::False:
      return "0 = 1";
    case Kind::Atom: {
      const Atom& a = as_atom();
      const char* op = a.rel == Relation::Le ? " <= " : a.rel == Relation::Eq ? " = " : " | ";
      return "(" + a.lhs.to_string() + ")" + op + "(" + a.rhs.to_string() + ")";
    }
    case Kind::Not:
      return "!(" + children().front().to_string() + ")";
    case Kind::And:
    case Kind::Or: {
      std::string sep = kind() == Kind::And ? " & " : " or ";
      std::string out = "(";
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) out += sep;
        out += children()[i].to_string();
      }
      return out + ")";
    }
  }
  return {};
}

bool evaluate(const Formula& f, const Valuation& v) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom: {
      const Atom& a = f.as_atom();
      Int l = a.lhs.evaluate(v);
      Int r = a.rhs.evaluate(v);
      switch (a.rel) {
        case Relation::Le:
          return l <= r;
        case Relation::Eq:
          return l == r;
        case Relation::Divides:
          return arith::divides(l, r);
      }
      return false;
    }
    case K::Not:
      return !evaluate(f.children().front(), v);
    case K::And:
      for (const auto& k : f.children())
        if (!evaluate(k, v)) return false;
      return true;
    case K::Or:
      for (const auto& k : f.children())
        if (evaluate(k, v)) return true;
      return false;
  }
  return false;
}

namespace {

// Negation normal form on the public AST; negated divisibility stays as Not(atom).
Formula nnf(const Formula& f, bool negated) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::False:
      return negated ? Formula::negate(f) : f;
    case K::Atom: {
      if (!negated) return f;
      const Atom& a = f.as_atom();
      switch (a.rel) {
        case Relation::Le:  // not (l <= r)  <=>  r + 1 <= l
          return Formula::le(a.rhs + 1, a.lhs);
        case Relation::Eq:
          return Formula::disj({Formula::le(a.lhs + 1, a.rhs), Formula::le(a.rhs + 1, a.lhs)});
        case Relation::Divides:
          return Formula::negate(f);
      }
      return f;
    }
    case K::Not:
      return nnf(f.children().front(), !negated);
    case K::And:
    case K::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f.children()) kids.push_back(nnf(k, negated));
      bool is_and = (f.kind() == K::And) != negated;
      return is_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
  }
  return f;
}

std::vector<std::vector<Formula>> dnf_of_nnf(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return {{}};
    case K::False:
      return {};
    case K::Atom:
    case K::Not:
      return {{f}};
    case K::Or: {
      std::vector<std::vector<Formula>> out;
      for (const auto& k : f.children()) {
        auto d = dnf_of_nnf(k);
        out.insert(out.end(), d.begin(), d.end());
      }
      return out;
    }
    case K::And: {
      std::vector<std::vector<Formula>> acc{{}};
      for (const auto& k : f.children()) {
        auto d = dnf_of_nnf(k);
        std::vector<std::vector<Formula>> next;
        for (const auto& a : acc)
          for (const auto& b : d) {
            auto c = a;
            c.insert(c.end(), b.begin(), b.end());
            next.push_back(std::move(c));
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

std::vector<std::vector<Formula>> to_dnf(const Formula& f) { return dnf_of_nnf(nnf(f, false)); }

std::string to_string(SolveResult::Status s) {
  switch (s) {
    case SolveResult::Status::Sat:
      return "SAT";
    case SolveResult::Status::Unsat:
      return "UNSAT";
    case SolveResult::Status::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

}  // namespace sla::epad
