#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vogan/chevalley.hpp"

using namespace vogan;

TEST_CASE("dimensions of the simply-laced algebras") {
  CHECK(chevalley_algebra({'A', 2}).dim == 8);
  CHECK(chevalley_algebra({'A', 3}).dim == 15);
  CHECK(chevalley_algebra({'D', 4}).dim == 28);
  CHECK(chevalley_algebra({'A', 5}).dim == 35);
  CHECK(chevalley_algebra({'D', 3}).dim == 15);
  CHECK(chevalley_algebra({'E', 6}).dim == 78);
  CHECK_THROWS_AS(chevalley_algebra({'B', 3}), UnsupportedType);
  CHECK_THROWS_AS(chevalley_algebra({'G', 2}), UnsupportedType);
}

TEST_CASE("Chevalley generator relations") {
  for (FiniteType t : {FiniteType{'A', 2}, FiniteType{'D', 4}, FiniteType{'A', 5}}) {
    CAPTURE(t.str());
    auto g = chevalley_algebra(t);
    for (int i = 0; i < g.rank; ++i)
      for (int j = 0; j < g.rank; ++j) {
        AlgVec b = g.bracket(g.e(i), g.f(j));
        if (i == j)
          CHECK(b == g.h(i));
        else
          CHECK(b.is_zero());
        CHECK(g.bracket(g.h(i), g.e(j)) == g.e(j) * Cyclo(g.cartan(i, j)));
        CHECK(g.bracket(g.h(i), g.f(j)) == g.f(j) * Cyclo(-g.cartan(i, j)));
      }
  }
}

TEST_CASE("invariant form") {
  auto g = chevalley_algebra({'A', 3});
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> pick(0, g.dim - 1);
  for (int it = 0; it < 400; ++it) {
    AlgVec x = AlgVec::unit(pick(rng)), y = AlgVec::unit(pick(rng)),
           z = AlgVec::unit(pick(rng));
    // invariance ([x,y],z) = (x,[y,z])
    CHECK(g.form(g.bracket(x, y), z) == g.form(x, g.bracket(y, z)));
    CHECK(g.form(x, y) == g.form(y, x));
  }
  // (alpha,alpha) = 2: (h_a, h_a) = 2 and (e_a, e_{-a}) = -1 pins the scale
  for (int r = 0; r < g.nroots; ++r) {
    AlgVec hv = g.coroot(g.roots[r]);
    CHECK(g.form(hv, hv) == Cyclo(2));
    int nr = g.root_index(negate(g.roots[r]));
    CHECK(g.form(AlgVec::unit(r), AlgVec::unit(nr)) == Cyclo(-1));
  }
}

TEST_CASE("omega0 is an involutive automorphism") {
  for (FiniteType t : {FiniteType{'A', 2}, FiniteType{'D', 4}}) {
    auto g = chevalley_algebra(t);
    for (int i = 0; i < g.dim; ++i) {
      CHECK(g.omega0(g.omega0(AlgVec::unit(i))) == AlgVec::unit(i));
      for (int j = 0; j < g.dim; ++j) {
        AlgVec lhs = g.omega0(g.bracket_basis(i, j));
        AlgVec rhs = g.bracket(g.omega0(AlgVec::unit(i)), g.omega0(AlgVec::unit(j)));
        CHECK(lhs == rhs);
      }
    }
    for (int i = 0; i < g.rank; ++i) {
      CHECK(g.omega0(g.e(i)) == -g.f(i));
      CHECK(g.omega0(g.h(i)) == -g.h(i));
    }
  }
}

TEST_CASE("bracket of opposite root vectors is minus the coroot") {
  auto g = chevalley_algebra({'A', 2});
  for (int r = 0; r < g.nroots; ++r) {
    int nr = g.root_index(negate(g.roots[r]));
    CHECK(g.bracket(AlgVec::unit(r), AlgVec::unit(nr)) == -g.coroot(g.roots[r]));
  }
}
