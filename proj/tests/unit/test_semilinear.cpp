#include <random>

#include "doctest.h"
#include "sla/semilinear.hpp"

using namespace sla;

namespace {

constexpr Int kInf = -1;

Progression prog(Int base, Int step, Int count = kInf) {
  return {base, step, count == kInf ? std::nullopt : std::optional<Int>(count)};
}

PeriodicSet1D random_set(std::mt19937& rng) {
  std::uniform_int_distribution<int> lo(-15, 10), width(0, 12), per(1, 6), coin(0, 2);
  Int a = lo(rng), b = a + width(rng);
  Int pl = per(rng), pr = per(rng);
  std::vector<bool> lb(static_cast<std::size_t>(pl)), rb(static_cast<std::size_t>(pr)), wb(static_cast<std::size_t>(b - a));
  for (auto&& x : lb) x = coin(rng) == 0;
  for (auto&& x : rb) x = coin(rng) == 0;
  for (auto&& x : wb) x = coin(rng) != 0;
  return PeriodicSet1D::from_predicate(a, b, pl, pr, [&](Int x) {
    if (x < a) return static_cast<bool>(lb[static_cast<std::size_t>(arith::mod(x, pl))]);
    if (x >= b) return static_cast<bool>(rb[static_cast<std::size_t>(arith::mod(x, pr))]);
    return static_cast<bool>(wb[static_cast<std::size_t>(x - a)]);
  });
}

}  // namespace

TEST_CASE("progression intersection examples") {
  CHECK(progression_intersect(prog(0, 2), prog(0, 3)) == prog(0, 6));
  CHECK_FALSE(progression_intersect(prog(0, 2), prog(1, 2)));
  CHECK(progression_intersect(prog(1, 4), prog(3, 6)) == prog(9, 12));
  CHECK(progression_intersect(prog(0, 1, 10), prog(20, -3)) == prog(2, 3, 3));
  CHECK(progression_intersect(prog(-1, -2), prog(0, -3)) == prog(-3, -6));
  CHECK_FALSE(progression_intersect(prog(0, 1, 5), prog(10, 1)));
}

TEST_CASE("progression intersection agrees with membership") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> base(-20, 20), step(-7, 7), count(0, 8);
  for (int round = 0; round < 2000; ++round) {
    Int s1 = step(rng), s2 = step(rng);
    if (s1 == 0) s1 = 1;
    if (s2 == 0) s2 = -1;
    Int c1 = count(rng), c2 = count(rng);
    Progression p = prog(base(rng), s1, c1 == 0 ? kInf : c1), q = prog(base(rng), s2, c2 == 0 ? kInf : c2);
    auto r = progression_intersect(p, q);
    Int window = 3 * arith::lcm(s1, s2) + 60;
    for (Int x = -window - 40; x <= window + 40; ++x) {
      bool both = p.contains(x) && q.contains(x);
      CHECK(both == (r && r->contains(x)));
    }
  }
}

TEST_CASE("first two elements") {
  CHECK(first_two(prog(5, 3)) == std::vector<Int>{5, 8});
  CHECK(first_two(prog(5, 3, 1)) == std::vector<Int>{5});
  CHECK(first_two(std::optional<Progression>{}).empty());
}

TEST_CASE("periodic set examples") {
  auto evens = PeriodicSet1D::residue_class(0, 2);
  CHECK(evens.contains(4));
  CHECK_FALSE(evens.contains(5));
  auto six = PeriodicSet1D::residue_class(0, 6), four = PeriodicSet1D::residue_class(0, 4);
  CHECK(six.intersect(four).min_positive() == 12);
  CHECK(PeriodicSet1D::all().complement().is_empty());
  CHECK(PeriodicSet1D::empty().complement() == PeriodicSet1D::all());
  CHECK(PeriodicSet1D::interval(3, 7).max_at_most(100) == 7);
  CHECK(PeriodicSet1D::interval(-3, 7).smallest_magnitude() == 0);
  CHECK(PeriodicSet1D::singleton(-2).unite(PeriodicSet1D::singleton(2)).smallest_magnitude() == 2);
}

TEST_CASE("periodic set boolean algebra laws") {
  std::mt19937 rng(99);
  for (int round = 0; round < 300; ++round) {
    auto a = random_set(rng), b = random_set(rng), c = random_set(rng);
    CHECK(a.unite(b).complement() == a.complement().intersect(b.complement()));
    CHECK(a.intersect(b.unite(c)) == a.intersect(b).unite(a.intersect(c)));
    CHECK(a.complement().complement() == a);
    for (Int x = -60; x <= 60; ++x) {
      CHECK(a.unite(b).contains(x) == (a.contains(x) || b.contains(x)));
      CHECK(a.intersect(b).contains(x) == (a.contains(x) && b.contains(x)));
      CHECK(a.shift(5).contains(x) == a.contains(x - 5));
      CHECK(a.scale(2, 3).contains(x) == (arith::mod(x - 2, 3) == 0 && a.contains(arith::floor_div(x - 2, 3))));
    }
  }
}

TEST_CASE("min positive is the least positive member") {
  std::mt19937 rng(3);
  for (int round = 0; round < 300; ++round) {
    auto a = random_set(rng);
    auto m = a.min_positive();
    std::optional<Int> expected;
    for (Int x = 1; x <= 200 && !expected; ++x)
      if (a.contains(x)) expected = x;
    CHECK(m == expected);
    auto at_most = a.max_at_most(3);
    std::optional<Int> lower;
    for (Int x = 3; x >= -200 && !lower; --x)
      if (a.contains(x)) lower = x;
    CHECK(at_most == lower);
  }
}

TEST_CASE("progression decomposition partitions the set") {
  std::mt19937 rng(5);
  for (int round = 0; round < 200; ++round) {
    auto a = random_set(rng);
    auto parts = a.to_progressions();
    for (Int x = -80; x <= 80; ++x) {
      int hits = 0;
      for (const auto& p : parts) hits += p.contains(x) ? 1 : 0;
      CHECK(hits == (a.contains(x) ? 1 : 0));
    }
  }
}

TEST_CASE("periodic set text form round-trips") {
  std::mt19937 rng(11);
  for (int round = 0; round < 100; ++round) {
    auto a = random_set(rng);
    CHECK(PeriodicSet1D::parse(a.to_string()) == a);
  }
  CHECK(PeriodicSet1D::parse("2:1") == PeriodicSet1D::residue_class(1, 2));
  CHECK(PeriodicSet1D::parse("6:0,3") == PeriodicSet1D::residue_class(0, 3));
  CHECK(PeriodicSet1D::parse("all") == PeriodicSet1D::all());
  CHECK(PeriodicSet1D::parse("none").is_empty());
  CHECK(PeriodicSet1D::parse("periodic(left=0@0, window=[0,3):{1,2}, right=0@3)") == PeriodicSet1D::interval(1, 2));
  CHECK_THROWS_AS(PeriodicSet1D::parse("periodic(left=1@0:{0}"), ParseError);
  CHECK_THROWS_AS(PeriodicSet1D::parse("0:1"), ParseError);
}

TEST_CASE("piecewise evaluation") {
  OrbitFiniteSet u({{"z", 0}, {"z4", 4}});
  PiecewiseAffineMap id{"z", {{prog(0, 1), "z", 1, 0}, {prog(-1, -1), "z", -1, -1}}};
  CHECK(pw_eval(id, 7, u) == Element{"z", 7});
  CHECK(pw_eval(id, -7, u) == Element{"z", -7});
  CHECK_FALSE(check_partition(id, u));

  PiecewiseAffineMap half{"z", {{prog(0, 2), "z", 1, 0}, {prog(-2, -2), "z", -1, -1}, {prog(1, 2), "z4", 0, 5}, {prog(-1, -2), "z4", 0, 1}}};
  CHECK(pw_eval(half, 10, u) == Element{"z", 5});
  CHECK(pw_eval(half, 6, u) == Element{"z", 3});
  CHECK(pw_eval(half, -6, u) == Element{"z", -3});
  CHECK(pw_eval(half, 3, u) == Element{"z4", 1});
  CHECK_FALSE(check_partition(half, u));

  PiecewiseAffineMap gap{"z", {{prog(0, 1), "z", 1, 0}}};
  CHECK(check_partition(gap, u));
  CHECK_THROWS_AS(pw_eval(gap, -1, u), Error);
  PiecewiseAffineMap overlap{"z", {{prog(0, 1), "z", 1, 0}, {prog(5, -1), "z", 1, 0}}};
  CHECK(check_partition(overlap, u));

  PiecewiseAffineMap fin{"z4", {{prog(0, 1, 4), "z4", 1, 1}}};
  CHECK(pw_eval(fin, 7, u) == Element{"z4", 0});
  CHECK_FALSE(check_partition(fin, u));
}

TEST_CASE("random piecewise maps agree with a naive piece scan") {
  std::mt19937 rng(17);
  OrbitFiniteSet u({{"z", 0}});
  std::uniform_int_distribution<int> modulus(1, 5), coef(-3, 3), split(-10, 10);
  for (int round = 0; round < 50; ++round) {
    Int m = modulus(rng), cut = split(rng);
    PiecewiseAffineMap f{"z", {}};
    for (Int r = 0; r < m; ++r) {
      Int up = cut + arith::mod(r - cut, m);
      f.pieces.push_back({prog(up, m), "z", coef(rng), coef(rng)});
      f.pieces.push_back({prog(up - m, -m), "z", coef(rng), coef(rng)});
    }
    REQUIRE_FALSE(check_partition(f, u));
    auto lifted = lift(f, u);
    std::uniform_int_distribution<Int> xs(-1000, 1000);
    for (int i = 0; i < 200; ++i) {
      Int x = xs(rng);
      Element naive{"", 0};
      for (const auto& p : f.pieces)
        if (p.domain.contains(x)) naive = {p.target, p.coeff * p.domain.parameter(x) + p.offset};
      CHECK(pw_eval(f, x, u) == naive);
      int hits = 0;
      for (const auto& l : lifted)
        if (l.contains(x)) {
          ++hits;
          CHECK(Element{l.target, l.value(x)} == naive);
        }
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("lifting a finite source merges equal residues") {
  OrbitFiniteSet u({{"z6", 6}, {"p", 1}});
  PiecewiseAffineMap f{"z6", {{prog(0, 1, 6), "p", 0, 0}}};
  auto l = lift(f, u);
  REQUIRE(l.size() == 1);
  CHECK(l[0].step == 1);
  PiecewiseAffineMap g{"z6", {{prog(0, 2, 3), "z6", 0, 0}, {prog(1, 2, 3), "z6", 0, 3}}};
  auto lg = lift(g, u);
  CHECK(lg.size() == 2);
  for (Int x = -20; x <= 20; ++x)
    for (const auto& p : lg)
      if (p.contains(x)) CHECK(Element{p.target, p.value(x)} == pw_eval(g, x, u));
}

TEST_CASE("linear set unions") {
  LinearSetUnion diag{2, {{{0, 0}, {{1, 1}}}}};
  CHECK(lsu_member(diag, {3, 3}));
  CHECK_FALSE(lsu_member(diag, {3, 4}));
  CHECK_FALSE(lsu_member(diag, {-1, -1}));
  LinearSetUnion a{2, {{{1, 0}, {{2, 0}}}}}, b{2, {{{0, 1}, {{0, 2}}}}};
  auto both = lsu_union(a, b);
  CHECK(lsu_member(both, {5, 0}));
  CHECK(lsu_member(both, {0, 3}));
  CHECK_FALSE(lsu_member(both, {4, 0}));
  CHECK(lsu_is_empty(LinearSetUnion{2, {}}));
  CHECK_THROWS_AS(lsu_member(diag, {1}), Error);
  CHECK_THROWS_AS(lsu_union(diag, LinearSetUnion{3, {}}), Error);
}
