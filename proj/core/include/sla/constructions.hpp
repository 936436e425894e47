#pragma once

// Generators for concrete automata: the difference language diff(K), the
// binary-prefix automaton whose refinement never stabilizes, and the
// two-counter-machine encodings behind the undecidability results.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sla/automata.hpp"
#include "sla/semilinear.hpp"

namespace sla {

/// Words x1 x2 ... over the letter orbit `z` whose consecutive differences
/// x_{i+1} - x_i all lie in K. States: eps (initial), int, bot.
EquivariantDFA gen_diffk(const PeriodicSet1D& k);

/// Letters start(i), zero(j), one(j); accepts start(i) followed by bits
/// (read relative to j) that form a prefix of the binary expansion of i,
/// least significant bit first. States: eps (initial), int, bot.
EquivariantDFA gen_binprefix();

struct Instruction {
  enum class Op { Inc, Dec, Halt };
  Op op = Op::Halt;
  int counter = 1;             // 1 or 2
  std::size_t next = 0;        // successor, or the nonzero branch of Dec
  std::size_t zero_next = 0;   // Dec only: successor when the counter is 0
  bool operator==(const Instruction&) const = default;
};

struct CounterMachine {
  std::vector<Instruction> program;  // state i runs program[i]
  std::size_t size() const { return program.size(); }
  bool operator==(const CounterMachine&) const = default;
};

struct CmConfig {
  std::size_t state = 0;
  Int c1 = 0, c2 = 0;
  bool operator==(const CmConfig&) const = default;
};

std::string to_string(const CmConfig& c);

/// Throws Error on an out-of-range state or negative counter.
CmConfig cm_step(const CounterMachine& m, const CmConfig& c);

/// n * 2^c1 * 3^c2 + state.
Int godel_encode(const CounterMachine& m, const CmConfig& c);
/// Throws Error when the code has no such form.
CmConfig godel_decode(const CounterMachine& m, Int code);

/// g with g(encode(c)) = encode(cm_step(c)), as a map on the orbit `int` of a
/// single Z orbit. Codes below n are fixed; larger codes follow the rule of
/// their residue class modulo 6n whether or not they encode a configuration.
PiecewiseAffineMap gen_cm_successor_map(const CounterMachine& m);

/// Accepts 0^m exactly when m >= 1 is the first step at which the machine,
/// started in x, is in configuration y. States: eps, int, top, bot.
EquivariantDFA gen_cm_constant_word_dfa(const CounterMachine& m, const CmConfig& x, const CmConfig& y);

/// One instruction per line: `inc C NEXT`, `dec C NEXT ZERO_NEXT`, `halt`.
/// Blank lines and `#` comments are ignored. Throws ParseError.
CounterMachine parse_counter_machine(std::string_view text);
std::string render_counter_machine(const CounterMachine& m);

}  // namespace sla
