#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "vogan/cyclotomic.hpp"
#include "vogan/errors.hpp"

namespace vogan {

// The six twisted affine families.  The rank parameter l counts simple
// roots of the underlying finite algebra; the affine diagram has l+1
// vertices enumerated 0..l.
enum class Family { A2_2, A2l_2, A2lm1_2, Dlp1_2, E6_2, D4_3 };

inline const char* family_token(Family f) {
  switch (f) {
    case Family::A2_2: return "A2_2";
    case Family::A2l_2: return "A2l_2";
    case Family::A2lm1_2: return "A2lm1_2";
    case Family::Dlp1_2: return "Dlp1_2";
    case Family::E6_2: return "E6_2";
    case Family::D4_3: return "D4_3";
  }
  return "?";
}

inline bool parse_family(const std::string& s, Family& out) {
  for (Family f : {Family::A2_2, Family::A2l_2, Family::A2lm1_2,
                   Family::Dlp1_2, Family::E6_2, Family::D4_3}) {
    if (s == family_token(f)) {
      out = f;
      return true;
    }
  }
  return false;
}

// Finite type tag: series letter A,B,C,D,E,F,G plus rank.
struct FiniteType {
  char series;
  int rank;
  bool operator==(const FiniteType&) const = default;
  std::string str() const { return std::string(1, series) + std::to_string(rank); }
};

struct AffineType {
  Family family;
  int l;

  int vertices() const { return l + 1; }
  bool operator==(const AffineType&) const = default;
  bool operator<(const AffineType& o) const {
    return std::pair(static_cast<int>(family), l) <
           std::pair(static_cast<int>(o.family), o.l);
  }

  // Twist order k of the family.
  int twist_order() const { return family == Family::D4_3 ? 3 : 2; }

  // Fixed-point subalgebra type of the twist.
  FiniteType g0_type() const {
    switch (family) {
      case Family::A2_2: return {'A', 1};
      case Family::A2l_2: return {'B', l};
      case Family::A2lm1_2: return {'C', l};
      case Family::Dlp1_2: return {'B', l};
      case Family::E6_2: return {'F', 4};
      case Family::D4_3: return {'G', 2};
    }
    throw UnsupportedType();
  }

  // Simply-laced parent algebra that gets twisted.
  FiniteType parent_type() const {
    switch (family) {
      case Family::A2_2: return {'A', 2};
      case Family::A2l_2: return {'A', 2 * l};
      case Family::A2lm1_2: return {'A', 2 * l - 1};
      case Family::Dlp1_2: return {'D', l + 1};
      case Family::E6_2: return {'E', 6};
      case Family::D4_3: return {'D', 4};
    }
    throw UnsupportedType();
  }

  std::string str() const {
    std::string s = family_token(family);
    switch (family) {
      case Family::A2l_2:
      case Family::A2lm1_2:
      case Family::Dlp1_2: return s + ":l=" + std::to_string(l);
      default: return s;
    }
  }
};

inline AffineType make_type(Family family, int l) {
  auto fail = [&](const std::string& why) {
    throw RankOutOfRange("make_type(" + std::string(family_token(family)) +
                         ", l=" + std::to_string(l) + "): " + why);
  };
  switch (family) {
    case Family::A2_2:
      if (l != 1) fail("fixed rank l=1");
      break;
    case Family::A2l_2:
      if (l < 2) fail("requires l >= 2");
      break;
    case Family::A2lm1_2:
      if (l < 3) fail("requires l >= 3");
      break;
    case Family::Dlp1_2:
      if (l < 2) fail("requires l >= 2");
      break;
    case Family::E6_2:
      if (l != 4) fail("fixed rank l=4");
      break;
    case Family::D4_3:
      if (l != 2) fail("fixed rank l=2");
      break;
  }
  return AffineType{family, l};
}

// Convenience for the fixed-rank families.
inline AffineType make_type(Family family) {
  switch (family) {
    case Family::A2_2: return make_type(family, 1);
    case Family::E6_2: return make_type(family, 4);
    case Family::D4_3: return make_type(family, 2);
    default:
      throw RankOutOfRange(std::string(family_token(family)) +
                           " needs an explicit rank parameter");
  }
}

using IntMatrix = std::vector<std::vector<int>>;

// Numerical labels of the affine diagram; these span the kernel of the GCM.
inline std::vector<int> marks(const AffineType& t) {
  const int n = t.vertices();
  std::vector<int> a(n, 1);
  switch (t.family) {
    case Family::A2_2:
      return {1, 2};
    case Family::A2l_2:
      for (int i = 1; i <= t.l; ++i) a[i] = 2;
      return a;
    case Family::A2lm1_2:
      for (int i = 2; i <= t.l - 1; ++i) a[i] = 2;
      return a;
    case Family::Dlp1_2:
      return a;
    case Family::E6_2:
      return {1, 2, 3, 2, 1};
    case Family::D4_3:
      return {1, 2, 1};
  }
  throw UnsupportedType();
}

struct GCM {
  int n = 0;
  IntMatrix a;

  const std::vector<int>& row(int i) const { return a[i]; }
  int operator()(int i, int j) const { return a[i][j]; }
};

// Generalized Cartan matrix of the affine diagram.  Bond multiplicities and
// orientations are pinned by the condition gcm * marks = 0, which is the
// unambiguous reading of the standard diagram glyphs.
inline GCM gcm(const AffineType& t) {
  const int n = t.vertices();
  IntMatrix a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto bond = [&](int i, int j, int aij, int aji) {
    a[i][j] = aij;
    a[j][i] = aji;
  };
  const int l = t.l;
  switch (t.family) {
    case Family::A2_2:
      bond(0, 1, -1, -4);
      break;
    case Family::A2l_2:
      bond(0, 1, -1, -2);
      for (int i = 1; i + 1 < l; ++i) bond(i, i + 1, -1, -1);
      bond(l - 1, l, -1, -2);
      break;
    case Family::A2lm1_2:
      bond(0, 2, -1, -1);
      bond(1, 2, -1, -1);
      for (int i = 2; i + 1 < l; ++i) bond(i, i + 1, -1, -1);
      bond(l - 1, l, -2, -1);
      break;
    case Family::Dlp1_2:
      bond(0, 1, -2, -1);
      for (int i = 1; i + 1 < l; ++i) bond(i, i + 1, -1, -1);
      bond(l - 1, l, -1, -2);
      break;
    case Family::E6_2:
      bond(0, 1, -1, -1);
      bond(1, 2, -1, -1);
      bond(2, 3, -2, -1);
      bond(3, 4, -1, -1);
      break;
    case Family::D4_3:
      bond(0, 1, -1, -1);
      bond(1, 2, -3, -1);
      break;
  }
  return GCM{n, std::move(a)};
}

// Vertex permutation of [0,l].  Used both for Aut(A) elements and for the
// involution rho of a Vogan diagram.
struct VertexPermutation {
  std::vector<int> perm;

  static VertexPermutation identity(int n) {
    VertexPermutation p;
    p.perm.resize(n);
    std::iota(p.perm.begin(), p.perm.end(), 0);
    return p;
  }

  int size() const { return static_cast<int>(perm.size()); }
  int operator()(int i) const { return perm[i]; }
  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (perm[i] != i) return false;
    return true;
  }

  VertexPermutation compose(const VertexPermutation& o) const {
    // (this o o)(i) = this(o(i))
    VertexPermutation r;
    r.perm.resize(perm.size());
    for (int i = 0; i < size(); ++i) r.perm[i] = perm[o.perm[i]];
    return r;
  }

  VertexPermutation inverse() const {
    VertexPermutation r;
    r.perm.resize(perm.size());
    for (int i = 0; i < size(); ++i) r.perm[perm[i]] = i;
    return r;
  }

  int order() const {
    VertexPermutation p = *this;
    int k = 1;
    while (!p.is_identity()) {
      p = p.compose(*this);
      ++k;
      if (k > size() * size()) throw Error("Internal", "permutation order overflow");
    }
    return k;
  }

  std::vector<int> fixed_vertices() const {
    std::vector<int> r;
    for (int i = 0; i < size(); ++i)
      if (perm[i] == i) r.push_back(i);
    return r;
  }

  bool operator==(const VertexPermutation&) const = default;
  bool operator<(const VertexPermutation& o) const { return perm < o.perm; }

  // Cycle notation, e.g. "(0 1)(3 4)"; identity prints as "()".
  std::string str() const {
    std::string s;
    std::vector<bool> seen(perm.size(), false);
    for (int i = 0; i < size(); ++i) {
      if (seen[i] || perm[i] == i) continue;
      s += "(";
      int j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = true;
        if (!first) s += " ";
        s += std::to_string(j);
        first = false;
        j = perm[j];
      }
      s += ")";
    }
    return s.empty() ? "()" : s;
  }
};

inline bool preserves_gcm(const GCM& m, const VertexPermutation& p) {
  if (p.size() != m.n) return false;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (m(p(i), p(j)) != m(i, j)) return false;
  return true;
}

// All permutations of [0,l] preserving the GCM, by backtracking with
// partial-consistency pruning.  Small diagrams only.
inline std::vector<VertexPermutation> diagram_automorphisms(const AffineType& t) {
  const GCM m = gcm(t);
  const std::vector<int> mk = marks(t);
  const int n = m.n;
  std::vector<VertexPermutation> result;
  std::vector<int> img(n, -1);
  std::vector<bool> used(n, false);

  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      VertexPermutation p;
      p.perm = img;
      result.push_back(p);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v] || mk[v] != mk[i] || m(v, v) != m(i, i)) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        ok = m(v, img[j]) == m(i, j) && m(img[j], v) == m(j, i);
      if (!ok) continue;
      img[i] = v;
      used[v] = true;
      self(self, i + 1);
      used[v] = false;
      img[i] = -1;
    }
  };
  rec(rec, 0);
  std::sort(result.begin(), result.end());
  return result;
}

// Positive rational diagonal d with d_i a_ij = d_j a_ji (exact).
inline std::vector<Rational> symmetrizer(const GCM& m) {
  const int n = m.n;
  std::vector<Rational> d(n, 0);
  // The diagrams here are connected; propagate from vertex 0.
  std::vector<int> todo{0};
  d[0] = 1;
  while (!todo.empty()) {
    int i = todo.back();
    todo.pop_back();
    for (int j = 0; j < n; ++j) {
      if (i == j || m(i, j) == 0) continue;
      Rational dj = d[i] * Rational(m(i, j)) / Rational(m(j, i));
      if (d[j] == 0) {
        d[j] = dj;
        todo.push_back(j);
      } else if (d[j] != dj) {
        throw Error("Internal", "GCM is not symmetrizable");
      }
    }
  }
  for (auto& v : d)
    if (v <= 0) throw Error("Internal", "symmetrizer not positive");
  return d;
}

// Finite type test: the symmetrization d*A must be positive definite
// (checked via leading principal minors, exact arithmetic).
inline bool is_finite_type(const GCM& m) {
  std::vector<Rational> d = symmetrizer(m);
  const int n = m.n;
  std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s[i][j] = d[i] * Rational(m(i, j));
  // Determinants of leading blocks via fraction-free-ish elimination.
  for (int k = 1; k <= n; ++k) {
    std::vector<std::vector<Rational>> b(k, std::vector<Rational>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) b[i][j] = s[i][j];
    Rational det = 1;
    for (int col = 0; col < k; ++col) {
      int piv = -1;
      for (int r = col; r < k; ++r)
        if (b[r][col] != 0) { piv = r; break; }
      if (piv < 0) return false;
      if (piv != col) {
        std::swap(b[piv], b[col]);
        det = -det;
      }
      det *= b[col][col];
      for (int r = col + 1; r < k; ++r) {
        Rational f = b[r][col] / b[col][col];
        for (int c = col; c < k; ++c) b[r][c] -= f * b[col][c];
      }
    }
    if (det <= 0) return false;
  }
  return true;
}

// Cartan matrix of the finite algebra obtained by deleting vertex 0.
inline GCM finite_part(const AffineType& t) {
  const GCM m = gcm(t);
  GCM r;
  r.n = m.n - 1;
  r.a.assign(r.n, std::vector<int>(r.n, 0));
  for (int i = 1; i < m.n; ++i)
    for (int j = 1; j < m.n; ++j) r.a[i - 1][j - 1] = m(i, j);
  return r;
}

inline std::vector<AffineType> desk_types() {
  return {
      make_type(Family::A2_2),      make_type(Family::A2l_2, 2),
      make_type(Family::A2l_2, 3),  make_type(Family::A2lm1_2, 3),
      make_type(Family::A2lm1_2, 4), make_type(Family::Dlp1_2, 2),
      make_type(Family::Dlp1_2, 3), make_type(Family::Dlp1_2, 4),
      make_type(Family::E6_2),      make_type(Family::D4_3),
  };
}

}  // namespace vogan
