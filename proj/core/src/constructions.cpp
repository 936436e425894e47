#include "sla/constructions.hpp"

#include <sstream>

namespace sla {

namespace {

constexpr Int kInfinite = -1;

Progression prog(Int base, Int step, Int count = kInfinite) {
  return {base, step, count == kInfinite ? std::nullopt : std::optional<Int>(count)};
}

// Both rays of Z sent to a constant element of `target`.
std::vector<AffinePiece> constant_on_z(const OrbitId& target, Int value = 0) {
  return {{prog(0, 1), target, 0, value}, {prog(-1, -1), target, 0, value}};
}

PiecewiseAffineMap point_map(const OrbitId& source, const OrbitId& target, Int value = 0) {
  return {source, {{prog(0, 1, 1), target, 0, value}}};
}

}  // namespace

EquivariantDFA gen_diffk(const PeriodicSet1D& k) {
  EquivariantDFA d;
  d.states = OrbitFiniteSet({{"eps", 1}, {"int", 0}, {"bot", 1}});
  d.alphabet = OrbitFiniteSet({{"z", 0}});
  d.initial = {"eps", 0};
  d.accepting = {"eps", "int"};

  d.transitions[{"eps", "z"}] = point_map("eps", "int");
  d.transitions[{"bot", "z"}] = point_map("bot", "bot");

  // In state (int, x) reading v the map sees d = x - v and needs v - x = -d in K.
  PeriodicSet1D neg = PeriodicSet1D::from_predicate(arith::sub(1, k.hi()), arith::sub(1, k.lo()), k.right_period(),
                                                    k.left_period(), [&](Int x) { return k.contains(-x); });
  PiecewiseAffineMap m{"int", {}};
  for (const auto& p : neg.to_progressions()) m.pieces.push_back({p, "int", 0, 0});
  for (const auto& p : neg.complement().to_progressions()) m.pieces.push_back({p, "bot", 0, 0});
  d.transitions[{"int", "z"}] = std::move(m);
  return d;
}

EquivariantDFA gen_binprefix() {
  EquivariantDFA d;
  d.states = OrbitFiniteSet({{"eps", 1}, {"int", 0}, {"bot", 1}});
  d.alphabet = OrbitFiniteSet({{"start", 0}, {"zero", 0}, {"one", 0}});
  d.initial = {"eps", 0};
  d.accepting = {"int"};

  d.transitions[{"eps", "start"}] = point_map("eps", "int");
  d.transitions[{"eps", "zero"}] = point_map("eps", "bot");
  d.transitions[{"eps", "one"}] = point_map("eps", "bot");
  for (const char* a : {"start", "zero", "one"}) d.transitions[{"bot", a}] = point_map("bot", "bot");
  d.transitions[{"int", "start"}] = {"int", constant_on_z("bot")};

  // Bit s read relative to j from state i: (i - j - s)/2 + j when i - j - s is even.
  for (Int s : {0, 1}) {
    PiecewiseAffineMap m{"int", {}};
    m.pieces.push_back({prog(s, 2), "int", 1, 0});
    m.pieces.push_back({prog(s - 2, -2), "int", -1, -1});
    m.pieces.push_back({prog(1 - s, 2), "bot", 0, 0});
    m.pieces.push_back({prog(-1 - s, -2), "bot", 0, 0});
    d.transitions[{"int", s == 0 ? "zero" : "one"}] = std::move(m);
  }
  return d;
}

std::string to_string(const CmConfig& c) {
  return "(" + std::to_string(c.state) + ", " + std::to_string(c.c1) + ", " + std::to_string(c.c2) + ")";
}

CmConfig cm_step(const CounterMachine& m, const CmConfig& c) {
  if (c.state >= m.size()) throw Error("configuration state out of range");
  if (c.c1 < 0 || c.c2 < 0) throw Error("negative counter");
  const Instruction& ins = m.program[c.state];
  CmConfig out = c;
  Int& counter = ins.counter == 1 ? out.c1 : out.c2;
  switch (ins.op) {
    case Instruction::Op::Halt:
      return c;
    case Instruction::Op::Inc:
      counter = arith::add(counter, 1);
      out.state = ins.next;
      return out;
    case Instruction::Op::Dec:
      if (counter == 0) {
        out.state = ins.zero_next;
      } else {
        --counter;
        out.state = ins.next;
      }
      return out;
  }
  return out;
}

Int godel_encode(const CounterMachine& m, const CmConfig& c) {
  if (c.state >= m.size()) throw Error("configuration state out of range");
  if (c.c1 < 0 || c.c2 < 0) throw Error("negative counter");
  Int w = 1;
  for (Int j = 0; j < c.c1; ++j) w = arith::mul(w, 2);
  for (Int k = 0; k < c.c2; ++k) w = arith::mul(w, 3);
  return arith::add(arith::mul(static_cast<Int>(m.size()), w), static_cast<Int>(c.state));
}

CmConfig godel_decode(const CounterMachine& m, Int code) {
  const Int n = static_cast<Int>(m.size());
  if (n == 0) throw Error("empty machine");
  if (code < n) throw Error("code " + std::to_string(code) + " does not encode a configuration");
  CmConfig c;
  c.state = static_cast<std::size_t>(code % n);
  Int w = code / n;
  while (w % 2 == 0) {
    w /= 2;
    ++c.c1;
  }
  while (w % 3 == 0) {
    w /= 3;
    ++c.c2;
  }
  if (w != 1) throw Error("code " + std::to_string(code) + " does not encode a configuration");
  return c;
}

PiecewiseAffineMap gen_cm_successor_map(const CounterMachine& m) {
  const Int n = static_cast<Int>(m.size());
  if (n == 0) throw Error("empty machine");
  const Int period = arith::mul(6, n);
  PiecewiseAffineMap g{"int", {}};
  g.pieces.push_back({prog(n - 1, -1), "int", -1, n - 1});
  for (Int r = 0; r < period; ++r) {
    const Int base = r >= n ? r : r + period;  // least member >= n
    const Int i = r % n;
    const Int w = (base - i) / n;  // (x - i)/n = w + 6t on this class
    const Instruction& ins = m.program[static_cast<std::size_t>(i)];
    const Int next = static_cast<Int>(ins.next), zero = static_cast<Int>(ins.zero_next);
    Int coeff = period, offset = base;  // identity: x = base + 6n*t
    switch (ins.op) {
      case Instruction::Op::Halt:
        break;
      case Instruction::Op::Inc:
        coeff = ins.counter == 1 ? 12 * n : 18 * n;
        offset = (ins.counter == 1 ? 2 : 3) * (base - i) + next;
        break;
      case Instruction::Op::Dec: {
        const Int p = ins.counter == 1 ? 2 : 3;
        if (w % p == 0) {
          coeff = period / p;
          offset = (base - i) / p + next;
        } else {
          offset = base - i + zero;
        }
        break;
      }
    }
    g.pieces.push_back({prog(base, period), "int", coeff, offset});
  }
  return g;
}

EquivariantDFA gen_cm_constant_word_dfa(const CounterMachine& m, const CmConfig& x, const CmConfig& y) {
  const PiecewiseAffineMap g = gen_cm_successor_map(m);
  const Int fy = godel_encode(m, y);

  EquivariantDFA d;
  d.states = OrbitFiniteSet({{"eps", 1}, {"int", 0}, {"top", 1}, {"bot", 1}});
  d.alphabet = OrbitFiniteSet({{"z", 0}});
  d.initial = {"eps", 0};
  d.accepting = {"top"};

  // The first letter already performs one machine step from f(x).
  const Element first = pw_eval(g, godel_encode(m, x), OrbitFiniteSet({{"int", 0}}));
  d.transitions[{"eps", "z"}] = first.value == fy ? point_map("eps", "top") : point_map("eps", "int", first.value);
  d.transitions[{"top", "z"}] = point_map("top", "bot");
  d.transitions[{"bot", "z"}] = point_map("bot", "bot");

  // From (int, i) on letter j: top if g(i - j) = f(y), else j + g(i - j).
  PiecewiseAffineMap step{"int", {}};
  for (const auto& p : g.pieces) {
    const Progression& dom = p.domain;
    std::optional<Int> hit;  // parameter t with coeff*t + offset = f(y)
    if (p.coeff == 0) {
      if (p.offset == fy) {
        step.pieces.push_back({dom, "top", 0, 0});
        continue;
      }
    } else if ((fy - p.offset) % p.coeff == 0) {
      Int t = (fy - p.offset) / p.coeff;
      if (t >= 0 && (!dom.count || t < *dom.count)) hit = t;
    }
    if (!hit) {
      step.pieces.push_back(p);
      continue;
    }
    const Int t = *hit;
    if (t > 0) step.pieces.push_back({{dom.base, dom.step, t}, "int", p.coeff, p.offset});
    step.pieces.push_back({{dom.at(t), dom.step, 1}, "top", 0, 0});
    std::optional<Int> rest;
    if (dom.count) rest = *dom.count - t - 1;
    if (!rest || *rest > 0)
      step.pieces.push_back({{dom.at(t + 1), dom.step, rest}, "int", p.coeff, arith::add(p.offset, arith::mul(p.coeff, t + 1))});
  }
  d.transitions[{"int", "z"}] = std::move(step);
  return d;
}

CounterMachine parse_counter_machine(std::string_view text) {
  CounterMachine m;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::vector<int> lines;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> words;
    for (std::string w; ls >> w;) words.push_back(w);
    if (words.empty()) continue;
    auto number = [&](std::size_t idx) -> Int {
      try {
        std::size_t used = 0;
        Int v = std::stoll(words[idx], &used);
        if (used != words[idx].size() || v < 0) throw std::invalid_argument("");
        return v;
      } catch (const std::exception&) {
        throw ParseError("expected a nonnegative integer, got '" + words[idx] + "'", lineno, 1);
      }
    };
    Instruction ins;
    if (words[0] == "halt" && words.size() == 1) {
      ins.op = Instruction::Op::Halt;
    } else if (words[0] == "inc" && words.size() == 3) {
      ins.op = Instruction::Op::Inc;
      ins.counter = static_cast<int>(number(1));
      ins.next = static_cast<std::size_t>(number(2));
    } else if (words[0] == "dec" && words.size() == 4) {
      ins.op = Instruction::Op::Dec;
      ins.counter = static_cast<int>(number(1));
      ins.next = static_cast<std::size_t>(number(2));
      ins.zero_next = static_cast<std::size_t>(number(3));
    } else {
      throw ParseError("expected 'inc C NEXT', 'dec C NEXT ZERO_NEXT', or 'halt'", lineno, 1);
    }
    if (ins.counter != 1 && ins.counter != 2) throw ParseError("counter must be 1 or 2", lineno, 1);
    m.program.push_back(ins);
    lines.push_back(lineno);
  }
  if (m.program.empty()) throw ParseError("empty program", lineno + 1, 1);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& ins = m.program[i];
    if (ins.op != Instruction::Op::Halt && (ins.next >= m.size() || (ins.op == Instruction::Op::Dec && ins.zero_next >= m.size())))
      throw ParseError("jump target out of range", lines[i], 1);
  }
  return m;
}

std::string render_counter_machine(const CounterMachine& m) {
  std::ostringstream os;
  for (const auto& ins : m.program) {
    switch (ins.op) {
      case Instruction::Op::Halt:
        os << "halt\n";
        break;
      case Instruction::Op::Inc:
        os << "inc " << ins.counter << " " << ins.next << "\n";
        break;
      case Instruction::Op::Dec:
        os << "dec " << ins.counter << " " << ins.next << " " << ins.zero_next << "\n";
        break;
    }
  }
  return os.str();
}

}  // namespace sla
