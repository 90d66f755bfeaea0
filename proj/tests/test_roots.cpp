#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vogan/roots.hpp"

using namespace vogan;

TEST_CASE("finite root systems of the fixed-point algebras") {
  auto a1 = finite_root_system(make_type(Family::A2_2));
  CHECK(a1.type == FiniteType{'A', 1});
  CHECK(a1.roots.size() == 2);

  auto f4 = finite_root_system(make_type(Family::E6_2));
  CHECK(f4.type == FiniteType{'F', 4});
  CHECK(f4.roots.size() == 48);
  CHECK(f4.count_short() == 24);
  CHECK(f4.count_long() == 24);

  auto b3 = finite_root_system(make_type(Family::Dlp1_2, 3));
  CHECK(b3.type == FiniteType{'B', 3});
  CHECK(b3.roots.size() == 18);
  CHECK(b3.count_short() == 6);
  CHECK(b3.count_long() == 12);

  auto c3 = finite_root_system(make_type(Family::A2lm1_2, 3));
  CHECK(c3.type == FiniteType{'C', 3});
  CHECK(c3.roots.size() == 18);
  CHECK(c3.count_short() == 12);
  CHECK(c3.count_long() == 6);

  auto g2 = finite_root_system(make_type(Family::D4_3));
  CHECK(g2.roots.size() == 12);
  CHECK(g2.count_short() == 6);

  // negation closure
  for (const auto& r : b3.roots) {
    RootVector n = negate(r);
    CHECK(std::find(b3.roots.begin(), b3.roots.end(), n) != b3.roots.end());
  }
}

TEST_CASE("affine reflections") {
  auto t = make_type(Family::A2_2);
  RootVector a0{1, 0}, a1{0, 1};
  CHECK(reflect(t, 1, a1) == RootVector{0, -1});
  CHECK(reflect(t, 0, a1) == RootVector{1, 1});
  // reflections fix delta and are involutive
  for (const auto& tt : desk_types()) {
    RootVector d = delta_root(tt);
    for (int i = 0; i < tt.vertices(); ++i) {
      CHECK(reflect(tt, i, d) == d);
      RootVector x = simple_root(tt.vertices(), (i + 1) % tt.vertices());
      CHECK(reflect(tt, i, reflect(tt, i, x)) == x);
    }
  }
}

TEST_CASE("real roots: BFS generation basics") {
  auto t = make_type(Family::A2_2);
  auto r0 = real_roots(t, 0);
  CHECK(r0 == std::set<RootVector>{{0, 1}, {0, -1}});
  auto r1 = real_roots(t, 1);
  CHECK(r1.size() == 10);
  CHECK(r1.count({1, 0}));   // alpha_0
  CHECK(r1.count({1, 4}));   // delta + 2 alpha_1
  CHECK(r1.count({1, 1}));
  CHECK(r1.count({1, 3}));

  for (const auto& tt : desk_types()) {
    CAPTURE(tt.str());
    auto rr = real_roots(tt, 2);
    for (int i = 0; i < tt.vertices(); ++i)
      CHECK(rr.count(simple_root(tt.vertices(), i)));
    for (const auto& r : rr) {
      CHECK(rr.count(negate(r)));
      bool nonneg = true, nonpos = true;
      for (int c : r) {
        nonneg = nonneg && c >= 0;
        nonpos = nonpos && c <= 0;
      }
      CHECK((nonneg || nonpos));
      // saturation: reflections stay inside or leave the degree window
      for (int i = 0; i < tt.vertices(); ++i) {
        RootVector s = reflect(tt, i, r);
        if (std::abs(degree(s)) <= 2) CHECK(rr.count(s));
      }
    }
  }
}

TEST_CASE("dual-method agreement at small degree bounds") {
  for (const auto& tt : desk_types()) {
    CAPTURE(tt.str());
    for (int N = 0; N <= 3; ++N) {
      auto bfs = real_roots(tt, N);
      auto cf = real_roots_closed_form(tt, N);
      CHECK(bfs == cf);
    }
  }
}

TEST_CASE("closed-form slice facts") {
  // C3 finite system embedded at degree 0
  auto t = make_type(Family::A2lm1_2, 3);
  auto cf = real_roots_closed_form(t, 0);
  CHECK(cf.size() == 18);
  for (const auto& r : cf) CHECK(degree(r) == 0);
}

TEST_CASE("non-integral conversions raise ConventionMismatch") {
  auto t = make_type(Family::A2_2);
  // a literal quarter-integral delta-multiple cannot be expressed over Pi
  CHECK_THROWS_AS(
      affine_root_from_finite(t, {Rational(1, 2)}, Rational(1, 4)),
      ConventionMismatch);
  CHECK_THROWS_AS(affine_root_from_finite(t, {Rational(1)}, Rational(1, 2)),
                  ConventionMismatch);
  CHECK(affine_root_from_finite(t, {Rational(2)}, Rational(1)) == RootVector{1, 4});
}

TEST_CASE("imaginary roots") {
  auto t = make_type(Family::E6_2);
  auto im = imaginary_roots(t, 2);
  CHECK(im.size() == 4);
  RootVector d = delta_root(t);
  CHECK(im.count(d));
  CHECK(im.count(negate(d)));
  CHECK(imaginary_roots(t, 0).empty());
  CHECK(delta_root(make_type(Family::A2_2)) == RootVector{1, 2});
  for (const auto& tt : desk_types())
    CHECK(imaginary_roots(tt, 5).size() == 10);
}

TEST_CASE("dual basis pairings") {
  for (const auto& tt : desk_types()) {
    CAPTURE(tt.str());
    const int n = tt.vertices();
    const DualBasis db = dual_basis(tt);
    const RootVector d = delta_root(tt);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(pairing(simple_root(n, j), db.p[i]) == (i == j ? 1 : 0));
    CHECK(pairing(d, db.p[0]) == 1);  // delta(d) = 1
    const std::vector<int> a = marks(tt);
    for (int i = 1; i < n; ++i) {
      CHECK(pairing(d, db.p_ring[i]) == 0);
      CHECK(pairing(simple_root(n, 0), db.p_ring[i]) == -a[i]);
      for (int j = 1; j < n; ++j)
        CHECK(pairing(simple_root(n, j), db.p_ring[i]) == (i == j ? 1 : 0));
    }
  }
  // spec example: p_ring_1 for A2_2 is (-2, 1)
  auto db = dual_basis(make_type(Family::A2_2));
  CHECK(db.p_ring[1] == PairingVector{-2, 1});
}

TEST_CASE("pairing is bilinear and odd under negation") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int iter = 0; iter < 50; ++iter) {
    RootVector r(5), s(5);
    PairingVector h(5);
    for (int i = 0; i < 5; ++i) {
      r[i] = coef(rng);
      s[i] = coef(rng);
      h[i] = coef(rng);
    }
    CHECK(pairing(negate(r), h) == -pairing(r, h));
    RootVector sum(5);
    for (int i = 0; i < 5; ++i) sum[i] = r[i] + s[i];
    CHECK(pairing(sum, h) == pairing(r, h) + pairing(s, h));
  }
}

TEST_CASE("text export is lexicographically sorted and stable") {
  auto t = make_type(Family::A2_2);
  std::string txt = roots_to_text(real_roots(t, 0));
  CHECK(txt == "0 -1\n0 1\n");
  auto r1 = roots_to_text(real_roots(t, 1));
  CHECK(roots_to_text(real_roots(t, 1)) == r1);
}
