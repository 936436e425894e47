#pragma once

// Plain-text automaton files and words.
//
//   dfa
//   orbit eps char 1
//   orbit int char 0
//   letter z char 0
//   initial eps 0
//   accepting eps int
//   trans eps on z: piece base=0 step=1 count=1 -> int t*0+0
//   trans int on z:
//     piece base=1 step=2 count=inf -> int t*0+0;
//     piece base=-1 step=-2 count=inf -> int t*0+0
//
// `#` starts a comment. Pieces of a block are separated by `;` and may span
// lines. An NFA file starts with `nfa`, lists initial orbits, and uses
//   rel p on a -> q: linear base=(0,1) periods=[(1,1)]; linear ...
// over the difference coordinates (value(p) - v, value(q) - v).

#include <string>
#include <string_view>

#include "sla/automata.hpp"

namespace sla {

/// Throws ParseError with the line and column of the problem. Structural
/// problems (missing or duplicate blocks, unknown orbits) are parse errors;
/// semantic ones are left to validate.
EquivariantDFA parse_automaton(std::string_view text);
EquivariantNFA parse_nfa(std::string_view text);
/// Whether the first statement is `nfa`.
bool is_nfa_text(std::string_view text);

std::string render_automaton(const EquivariantDFA& d);
std::string render_nfa(const EquivariantNFA& n);

/// Space-separated `orbit:value` tokens; the empty string is the empty word.
Word parse_word(std::string_view text);

}  // namespace sla
