#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "sla/constructions.hpp"
#include "sla/io.hpp"
#include "sla/signatures.hpp"

using namespace sla;

namespace {

int error_line(std::string_view text) {
  try {
    parse_automaton(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

const char* kSmall = R"(dfa
# one accepting point and a sink
orbit p char 1
orbit sink char 1   # trailing comment
letter a char 0
initial p 0
accepting p
trans p on a: piece base=0 step=1 count=1 -> sink t*0+0
trans sink on a:
  piece base=0 step=1 count=1 -> sink 0
)";

}  // namespace

TEST_CASE("automaton files round trip") {
  std::vector<EquivariantDFA> samples{gen_diffk(PeriodicSet1D::residue_class(1, 2)), gen_binprefix(),
                                      gen_diffk(PeriodicSet1D::interval(-2, 3))};
  for (const auto& mc : fixtures::machines()) {
    auto m = parse_counter_machine(mc.program);
    samples.push_back(gen_cm_constant_word_dfa(m, mc.x, mc.y));
  }
  auto dk = samples.front();
  auto phi = identity_signature(dk.states);
  phi.chars[1] = 2;
  samples.push_back(quotient(dk, phi).automaton);

  for (const auto& d : samples) {
    std::string text = render_automaton(d);
    EquivariantDFA back = parse_automaton(text);
    CHECK(back == d);
    CHECK(render_automaton(back) == text);
    CHECK_FALSE(is_nfa_text(text));
  }
}

TEST_CASE("automaton file syntax") {
  auto d = parse_automaton(kSmall);
  CHECK(validate(d).empty());
  CHECK(d.states.size() == 2);
  CHECK(accepts(d, {}));
  CHECK_FALSE(accepts(d, {{"a", 5}}));

  auto values = parse_automaton(R"(
orbit z char 0
letter a char 0
initial z 0
accepting z
trans z on a: piece base=0 step=1 count=inf -> z 2*t - 3 + t; piece base=-1 step=-1 count=inf -> z -t-4
)");
  const auto& pieces = values.map("z", "a").pieces;
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].coeff == 3);
  CHECK(pieces[0].offset == -3);
  CHECK(pieces[1].coeff == -1);
  CHECK(pieces[1].offset == -4);
}

TEST_CASE("automaton file errors") {
  std::string missing = kSmall;
  missing.erase(missing.find("trans sink"));
  try {
    parse_automaton(missing);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("'sink'") != std::string::npos);
    CHECK(std::string(e.what()).find("'a'") != std::string::npos);
  }
  CHECK(error_line("orbit p char 1\norbit p char 2\n") == 2);
  CHECK(error_line("orbit p char 1\nletter a char 0\ninitial q 0\n") == 3);
  CHECK(error_line("orbit p char 1\nfrobnicate\n") == 2);
  CHECK(error_line("orbit p char -1\n") == 1);
  CHECK(error_line("orbit p char 1\nletter a char 0\ninitial p 0\ntrans p on a:\n  piece base=0 step=0 count=1 -> p t*0+0\n") == 5);
  CHECK(error_line("orbit p char 1\nletter a char 0\ninitial p 0\ninitial p 0\n") == 4);
  CHECK(error_line("orbit p char 1 extra\n") == 1);
  CHECK(error_line("nfa\norbit p char 1\n") == 1);
  CHECK(error_line("orbit p char 1\nletter a char 0\n") != 0);  // no initial statement
}

TEST_CASE("nfa files round trip") {
  EquivariantNFA n;
  n.states = OrbitFiniteSet({{"p", 0}, {"q", 2}});
  n.alphabet = OrbitFiniteSet({{"a", 0}});
  n.initial = {"p"};
  n.accepting = {"q"};
  n.transitions[{"p", "a", "q"}] = {2, {{{0, 1}, {{1, 1}, {2, 0}}}, {{3, -1}, {}}}};
  n.transitions[{"q", "a", "q"}] = {2, {{{0, 0}, {{1, 1}}}}};
  std::string text = render_nfa(n);
  CHECK(is_nfa_text(text));
  CHECK(parse_nfa(text) == n);
  CHECK(validate(parse_nfa(text)).empty());
  CHECK_THROWS_AS(parse_nfa("nfa\norbit p char 0\nletter a char 0\nrel p on a -> p: linear base=(0) periods=[]\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_nfa("orbit p char 0\n"), ParseError);
}

TEST_CASE("words") {
  Word w = parse_word("z:0 z:1  z:-4");
  REQUIRE(w.size() == 3);
  CHECK(w[2] == Letter{"z", -4});
  CHECK(to_string(w) == "z:0 z:1 z:-4");
  CHECK(parse_word("").empty());
  CHECK(parse_word(to_string(w)) == w);
  CHECK_THROWS_AS(parse_word("z:"), ParseError);
  CHECK_THROWS_AS(parse_word("z 1"), ParseError);
}

TEST_CASE("corpus automata parse, validate, and round trip") {
  for (const char* name : {"diffk_odds.aut", "binprefix.aut", "empty_accepting.aut", "dup_z3.aut"}) {
    INFO(name);
    std::ifstream f(std::string(SLA_CORPUS_DIR) + "/" + name);
    REQUIRE(f);
    std::stringstream ss;
    ss << f.rdbuf();
    auto d = parse_automaton(ss.str());
    CHECK(validate(d).empty());
    CHECK(parse_automaton(render_automaton(d)) == d);
  }
}
