#include "doctest.h"
#include "sla/atoms.hpp"

using namespace sla;

TEST_CASE("translation acts modulo the characteristic") {
  OrbitFiniteSet u({{"z", 0}, {"z5", 5}, {"pt", 1}});
  CHECK(act({"z5", 3}, 4, u) == Element{"z5", 2});
  CHECK(act({"z", -7}, 10, u) == Element{"z", 3});
  CHECK(act({"pt", 0}, 12345, u) == Element{"pt", 0});
  CHECK(act({"z5", 1}, -3, u) == Element{"z5", 3});
}

TEST_CASE("action is a group action") {
  OrbitFiniteSet u({{"z", 0}, {"z6", 6}});
  for (Int a = -9; a <= 9; ++a)
    for (Int b = -9; b <= 9; ++b)
      for (const char* o : {"z", "z6"}) {
        Element e{o, 2};
        CHECK(act(act(e, a, u), b, u) == act(e, a + b, u));
      }
  CHECK(act({"z6", 4}, 0, u) == Element{"z6", 4});
}

TEST_CASE("canonical values") {
  OrbitFiniteSet u({{"z", 0}, {"z3", 3}});
  CHECK(canonicalize({"z3", -1}, u) == Element{"z3", 2});
  CHECK(canonicalize({"z", -1}, u) == Element{"z", -1});
  CHECK_THROWS_AS(canonicalize({"nope", 0}, u), Error);
}

TEST_CASE("set construction rejects bad orbits") {
  CHECK_THROWS_AS(OrbitFiniteSet({{"a", 0}, {"a", 2}}), Error);
  CHECK_THROWS_AS(OrbitFiniteSet({{"a", -1}}), Error);
  OrbitFiniteSet u({{"a", 0}, {"b", 4}});
  CHECK(u.size() == 2);
  CHECK(u.characteristic("b") == 4);
  CHECK(u.index_of("b") == 1);
}
