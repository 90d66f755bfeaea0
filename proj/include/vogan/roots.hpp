#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vogan/cartan.hpp"
#include "vogan/errors.hpp"

namespace vogan {

// Integral coordinate vector over the affine base Pi = (alpha_0..alpha_l).
using RootVector = std::vector<int>;

// Values alpha_i(h) of a torus element h against the affine base.
using PairingVector = std::vector<int>;

inline int pairing(const RootVector& r, const PairingVector& h) {
  int s = 0;
  for (size_t i = 0; i < r.size() && i < h.size(); ++i) s += r[i] * h[i];
  return s;
}

inline RootVector negate(RootVector r) {
  for (auto& c : r) c = -c;
  return r;
}

inline RootVector simple_root(int n, int i) {
  RootVector r(n, 0);
  r[i] = 1;
  return r;
}

inline RootVector delta_root(const AffineType& t) {
  std::vector<int> a = marks(t);
  return RootVector(a.begin(), a.end());
}

// Affine simple reflection r_i over the GCM: r_i(b) = b - b(alpha_i^vee) alpha_i
// with b(alpha_i^vee) = sum_j c_j a[i][j].
inline RootVector reflect(const GCM& m, int i, const RootVector& r) {
  int v = 0;
  for (int j = 0; j < m.n; ++j) v += r[j] * m(i, j);
  RootVector out = r;
  out[i] -= v;
  return out;
}

inline RootVector reflect(const AffineType& t, int i, const RootVector& r) {
  return reflect(gcm(t), i, r);
}

// ---------------------------------------------------------------------------
// Finite root systems (for the fixed-point algebras of the twists and for
// the simply-laced parents).

struct FiniteRootSystem {
  FiniteType type;
  GCM cartan;                     // finite Cartan matrix
  std::vector<RootVector> roots;  // coordinates over the finite base
  std::vector<Rational> norm;     // (alpha,alpha) per root, symmetrizer scale
  Rational short_norm, long_norm;

  int rank() const { return cartan.n; }
  bool is_long(int idx) const { return norm[idx] == long_norm; }
  bool is_short(int idx) const { return norm[idx] == short_norm; }
  size_t count_long() const {
    size_t c = 0;
    for (size_t i = 0; i < roots.size(); ++i)
      if (is_long(i)) ++c;
    return c;
  }
  size_t count_short() const { return roots.size() - count_long(); }
  bool positive(int idx) const {
    for (int c : roots[idx])
      if (c != 0) return c > 0;
    return false;
  }
};

// Closure of the simple roots under simple reflections.
inline std::vector<RootVector> close_under_reflections(const GCM& m) {
  std::set<RootVector> seen;
  std::vector<RootVector> frontier;
  for (int i = 0; i < m.n; ++i) {
    RootVector a = simple_root(m.n, i);
    seen.insert(a);
    frontier.push_back(a);
  }
  while (!frontier.empty()) {
    std::vector<RootVector> next;
    for (const auto& r : frontier)
      for (int i = 0; i < m.n; ++i) {
        RootVector s = reflect(m, i, r);
        if (seen.insert(s).second) next.push_back(s);
      }
    frontier = std::move(next);
    if (seen.size() > 100000) throw TooLarge("root closure exploded; not finite type?");
  }
  return {seen.begin(), seen.end()};
}

inline FiniteRootSystem finite_system_of(const GCM& cm, FiniteType tag) {
  FiniteRootSystem fs;
  fs.type = tag;
  fs.cartan = cm;
  fs.roots = close_under_reflections(cm);
  std::vector<Rational> d = symmetrizer(cm);
  fs.norm.reserve(fs.roots.size());
  for (const auto& r : fs.roots) {
    Rational q = 0;
    for (int i = 0; i < cm.n; ++i)
      for (int j = 0; j < cm.n; ++j) q += Rational(r[i]) * Rational(r[j]) * d[i] * Rational(cm(i, j));
    fs.norm.push_back(q);
  }
  fs.short_norm = fs.long_norm = fs.norm.front();
  for (const auto& q : fs.norm) {
    if (q < fs.short_norm) fs.short_norm = q;
    if (q > fs.long_norm) fs.long_norm = q;
  }
  return fs;
}

// Root system of the fixed-point algebra: delete vertex 0 and close.
inline FiniteRootSystem finite_root_system(const AffineType& t) {
  return finite_system_of(finite_part(t), t.g0_type());
}

// ---------------------------------------------------------------------------
// Affine real and imaginary roots.

// Degree of a root = coefficient of alpha_0 (pairs to 1 against p_0 = d).
inline int degree(const RootVector& r) { return r[0]; }

// BFS closure of Pi under simple reflections, window N+1, trimmed to N.
inline std::set<RootVector> real_roots(const AffineType& t, int N) {
  if (N < 0) throw RankOutOfRange("real_roots: N must be >= 0");
  const GCM m = gcm(t);
  const int W = N + 1;
  std::set<RootVector> seen;
  std::vector<RootVector> frontier;
  for (int i = 0; i < m.n; ++i) {
    RootVector a = simple_root(m.n, i);
    seen.insert(a);
    frontier.push_back(a);
  }
  while (!frontier.empty()) {
    std::vector<RootVector> next;
    for (const auto& r : frontier)
      for (int i = 0; i < m.n; ++i) {
        RootVector s = reflect(m, i, r);
        if (std::abs(degree(s)) > W) continue;
        if (seen.insert(s).second) next.push_back(s);
      }
    frontier = std::move(next);
  }
  std::set<RootVector> out;
  for (const auto& r : seen)
    if (std::abs(degree(r)) <= N) out.insert(r);
  return out;
}

// Convert (finite part, delta-multiple) to Pi-coordinates.  Raises
// ConventionMismatch when the pair does not come out integral, which is the
// guard against a mis-pinned normalization of the closed forms.
inline RootVector affine_root_from_finite(const AffineType& t,
                                          const std::vector<Rational>& finite_coords,
                                          const Rational& n) {
  const std::vector<int> a = marks(t);
  const int nv = t.vertices();
  RootVector out(nv, 0);
  auto put = [&](int idx, const Rational& v) {
    Integer num = numerator(v), den = denominator(v);
    if (den != 1)
      throw ConventionMismatch("non-integral Pi-coordinate " + v.str() +
                               " at vertex " + std::to_string(idx) +
                               " for type " + t.str());
    if (num > 1000000 || num < -1000000)
      throw TooLarge("coordinate overflow");
    out[idx] = static_cast<int>(num);
  };
  put(0, n * a[0]);
  for (int i = 1; i < nv; ++i) put(i, finite_coords[i - 1] + n * a[i]);
  return out;
}

// Closed forms for the real roots.  For the families with twist k and
// g-ring not of type coming from A_{2l}: short finite roots at every
// delta-degree, long finite roots at degrees divisible by k.  For the
// A_{2l} family (reversed enumeration, g-ring = B_l) the three length
// families are: B_l-short at every degree, B_l-long at every degree, and
// doubled shorts at odd degrees.
inline std::set<RootVector> real_roots_closed_form(const AffineType& t, int N) {
  if (N < 0) throw RankOutOfRange("real_roots_closed_form: N must be >= 0");
  const FiniteRootSystem fs = finite_root_system(t);
  const int k = t.twist_order();
  std::set<RootVector> out;
  auto emit = [&](const RootVector& finite, int scale, int n) {
    std::vector<Rational> coords(finite.size());
    for (size_t i = 0; i < finite.size(); ++i) coords[i] = Rational(scale * finite[i]);
    out.insert(affine_root_from_finite(t, coords, Rational(n)));
  };
  const bool bc_family = t.family == Family::A2_2 || t.family == Family::A2l_2;
  for (size_t idx = 0; idx < fs.roots.size(); ++idx) {
    const RootVector& fr = fs.roots[idx];
    if (bc_family) {
      // rank-1 g-ring (A2_2) has a single length class, treated as short.
      bool is_short = fs.rank() == 1 || fs.is_short(idx);
      if (is_short) {
        for (int n = -N; n <= N; ++n) {
          emit(fr, 1, n);
          if (n % 2 != 0) emit(fr, 2, n);  // doubled shorts at odd degrees
        }
      } else {
        for (int n = -N; n <= N; ++n) emit(fr, 1, n);
      }
    } else {
      if (fs.is_short(idx)) {
        for (int n = -N; n <= N; ++n) emit(fr, 1, n);
      } else {
        for (int n = -N; n <= N; ++n)
          if (n % k == 0) emit(fr, 1, n);
      }
    }
  }
  return out;
}

inline std::set<RootVector> imaginary_roots(const AffineType& t, int N) {
  if (N < 0) throw RankOutOfRange("imaginary_roots: N must be >= 0");
  std::set<RootVector> out;
  RootVector d = delta_root(t);
  for (int mlt = 1; mlt <= N; ++mlt) {
    RootVector r = d;
    for (auto& c : r) c *= mlt;
    out.insert(r);
    out.insert(negate(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dual families p_i (affine) and the ring-decorated finite duals.

struct DualBasis {
  // p[i], i in [0,l]: alpha_j(p_i) = delta_ij.
  std::vector<PairingVector> p;
  // p_ring[i], i in [1,l]: alpha_j(p_ring_i) = delta_ij for j >= 1 and
  // alpha_0(p_ring_i) = -a_i; index 0 is unused.
  std::vector<PairingVector> p_ring;
};

inline DualBasis dual_basis(const AffineType& t) {
  const int n = t.vertices();
  const std::vector<int> a = marks(t);
  DualBasis db;
  db.p.resize(n);
  db.p_ring.resize(n);
  for (int i = 0; i < n; ++i) {
    db.p[i].assign(n, 0);
    db.p[i][i] = 1;
  }
  for (int i = 1; i < n; ++i) {
    db.p_ring[i].assign(n, 0);
    db.p_ring[i][i] = 1;
    db.p_ring[i][0] = -a[i];
  }
  return db;
}

// ---------------------------------------------------------------------------
// Exports: line-oriented text (lexicographically sorted) and JSON-ready rows.

inline std::string roots_to_text(const std::set<RootVector>& roots) {
  std::ostringstream os;
  for (const auto& r : roots) {
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) os << ' ';
      os << r[i];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace vogan
