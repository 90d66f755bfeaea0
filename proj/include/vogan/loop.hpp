#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vogan/cartan.hpp"
#include "vogan/chevalley.hpp"
#include "vogan/cyclotomic.hpp"
#include "vogan/errors.hpp"
#include "vogan/roots.hpp"

namespace vogan {

// ---------------------------------------------------------------------------
// Scalar-permutation maps of the parent algebra basis.  Every automorphism
// this module needs (torsion lifts, the Chevalley involution, their
// compositions) sends a basis vector to a scalar multiple of a basis vector.

struct BasisAutomorphism {
  std::vector<int> image;
  std::vector<Cyclo> scale;

  static BasisAutomorphism identity(int dim) {
    BasisAutomorphism a;
    a.image.resize(dim);
    std::iota(a.image.begin(), a.image.end(), 0);
    a.scale.assign(dim, Cyclo::one());
    return a;
  }

  int dim() const { return static_cast<int>(image.size()); }

  AlgVec apply(const AlgVec& x) const {
    AlgVec out;
    for (const auto& [b, c] : x.terms()) out.add_term(image[b], c * scale[b]);
    return out;
  }

  // this after o
  BasisAutomorphism compose(const BasisAutomorphism& o) const {
    BasisAutomorphism r;
    r.image.resize(dim());
    r.scale.resize(dim());
    for (int b = 0; b < dim(); ++b) {
      r.image[b] = image[o.image[b]];
      r.scale[b] = o.scale[b] * scale[o.image[b]];
    }
    return r;
  }

  bool is_identity() const {
    for (int b = 0; b < dim(); ++b)
      if (image[b] != b || scale[b] != Cyclo::one()) return false;
    return true;
  }

  int order(int bound = 24) const {
    BasisAutomorphism p = *this;
    for (int k = 1; k <= bound; ++k) {
      if (p.is_identity()) return k;
      p = p.compose(*this);
    }
    throw LiftFailed("automorphism order exceeds bound");
  }

  // Dimension of the fixed subalgebra: one per basis orbit whose closed
  // scalar product is 1.
  int fixed_dimension() const {
    std::vector<bool> seen(dim(), false);
    int fix = 0;
    for (int b = 0; b < dim(); ++b) {
      if (seen[b]) continue;
      Cyclo prod = Cyclo::one();
      int cur = b;
      do {
        seen[cur] = true;
        prod *= scale[cur];
        cur = image[cur];
      } while (cur != b);
      if (prod == Cyclo::one()) ++fix;
    }
    return fix;
  }
};

// Extend generator images e_i -> gen_scale[i] * e_{nu(i)} to the whole
// Chevalley basis (propagating through brackets for the higher roots).
inline BasisAutomorphism lift_from_generators(const SimpleLieAlgebra& g,
                                              const VertexPermutation& nu,
                                              const std::vector<Cyclo>& gen_scale) {
  BasisAutomorphism a = BasisAutomorphism::identity(g.dim);
  auto nu_root = [&](const RootVector& r) {
    RootVector out(g.rank);
    for (int i = 0; i < g.rank; ++i) out[nu(i)] = r[i];
    return out;
  };
  for (int i = 0; i < g.rank; ++i) a.image[g.coroot_index(i)] = g.coroot_index(nu(i));

  std::vector<int> order(g.nroots);
  std::iota(order.begin(), order.end(), 0);
  auto height = [&](int idx) {
    int h = 0;
    for (int c : g.roots[idx]) h += c;
    return h;
  };
  std::sort(order.begin(), order.end(), [&](int x, int y) { return height(x) < height(y); });

  std::vector<Cyclo> c(g.nroots, Cyclo::zero());
  for (int idx : order) {
    int h = height(idx);
    if (h < 0) continue;
    const RootVector& alpha = g.roots[idx];
    if (h == 1) {
      int i = 0;
      while (alpha[i] != 1) ++i;
      c[idx] = gen_scale[i];
    } else {
      int i = 0, bidx = -1;
      for (; i < g.rank; ++i) {
        if (alpha[i] <= 0) continue;
        RootVector beta = alpha;
        beta[i] -= 1;
        bidx = g.root_index(beta);
        if (bidx >= 0) break;
      }
      if (bidx < 0) throw LiftFailed("cannot peel a simple root from a positive root");
      const RootVector& beta = g.roots[bidx];
      RootVector ai = simple_root(g.rank, i);
      Cyclo ratio = Cyclo(g.eps(nu_root(beta), nu_root(ai))) * Cyclo(g.eps(beta, ai));
      c[idx] = c[bidx] * gen_scale[i] * ratio;  // eps signs are +-1, ratio = product
    }
    int nidx = g.root_index(negate(alpha));
    int inu = g.root_index(nu_root(alpha));
    int ninu = g.root_index(nu_root(negate(alpha)));
    a.image[idx] = inu;
    a.scale[idx] = c[idx];
    a.image[nidx] = ninu;
    a.scale[nidx] = c[idx].inverse();
  }
  return a;
}

inline bool is_algebra_automorphism(const SimpleLieAlgebra& g, const BasisAutomorphism& a,
                                    int sample = 0) {
  std::mt19937_64 rng(1234);
  auto check = [&](int i, int j) {
    AlgVec lhs = a.apply(g.bracket_basis(i, j));
    AlgVec rhs = g.bracket(a.apply(AlgVec::unit(i)), a.apply(AlgVec::unit(j)));
    return lhs == rhs;
  };
  if (sample <= 0) {
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j)
        if (!check(i, j)) return false;
    return true;
  }
  std::uniform_int_distribution<int> pick(0, g.dim - 1);
  for (int it = 0; it < sample; ++it)
    if (!check(pick(rng), pick(rng))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Square roots in Q(zeta_24): every value that appears when normalizing
// generators is (rational) * (root of unity), and those all have square
// roots in the field because 24 is even and Q(zeta_24) contains sqrt 2,
// sqrt 3.

inline std::optional<Cyclo> cyclo_sqrt(const Cyclo& x) {
  if (x.is_zero()) return Cyclo::zero();
  for (int m = 0; m < 24; ++m) {
    Cyclo q = x * Cyclo::zeta_pow(-m);
    if (!q.is_rational()) continue;
    Rational r = q.as_rational();
    if (r <= 0) continue;
    for (int f : {1, 2, 3, 6}) {
      Rational rf = r / f;
      Integer num = numerator(rf), den = denominator(rf);
      Integer sn = sqrt(num), sd = sqrt(den);
      if (sn * sn != num || sd * sd != den) continue;
      Cyclo root = Cyclo(Rational(sn, sd));
      if (f == 2) root *= Cyclo::sqrt2();
      if (f == 3) root *= Cyclo::sqrt3();
      if (f == 6) root *= Cyclo::sqrt2() * Cyclo::sqrt3();
      root *= Cyclo::zeta_pow(m % 2 == 0 ? m / 2 : (m + 24) / 2);
      if (root * root == x) return root;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Truncated twisted loop algebra elements.

struct LoopElement {
  std::map<int, AlgVec> comp;  // degree -> parent component
  Cyclo c, d;

  static LoopElement central() {
    LoopElement x;
    x.c = Cyclo::one();
    return x;
  }
  static LoopElement derivation() {
    LoopElement x;
    x.d = Cyclo::one();
    return x;
  }
  static LoopElement embed(const AlgVec& v, int degree) {
    LoopElement x;
    if (!v.is_zero()) x.comp[degree] = v;
    return x;
  }

  bool is_zero() const { return comp.empty() && c.is_zero() && d.is_zero(); }

  LoopElement& operator+=(const LoopElement& o) {
    for (const auto& [deg, v] : o.comp) {
      auto it = comp.find(deg);
      if (it == comp.end()) {
        comp[deg] = v;
      } else {
        it->second += v;
        if (it->second.is_zero()) comp.erase(it);
      }
    }
    c += o.c;
    d += o.d;
    return *this;
  }
  LoopElement& operator-=(const LoopElement& o) { return *this += o * Cyclo(-1); }
  friend LoopElement operator+(LoopElement a, const LoopElement& b) { return a += b; }
  friend LoopElement operator-(LoopElement a, const LoopElement& b) { return a -= b; }
  friend LoopElement operator*(const LoopElement& a, const Cyclo& s) {
    LoopElement r;
    if (s.is_zero()) return r;
    for (const auto& [deg, v] : a.comp) r.comp[deg] = v * s;
    r.c = a.c * s;
    r.d = a.d * s;
    return r;
  }
  bool operator==(const LoopElement& o) const {
    return comp == o.comp && c == o.c && d == o.d;
  }
};

// ---------------------------------------------------------------------------
// The twisted loop algebra l(g, mu, eps_k) over a lifted automorphism.

struct LoopAlgebra {
  SimpleLieAlgebra g;
  BasisAutomorphism mu;
  int k = 1;
  Cyclo eps_k;

  struct EigenVector {
    AlgVec v;
    bool cartan = false;
    std::vector<int> weight;  // collapsed finite weight (filled by realization)
  };
  std::vector<std::vector<EigenVector>> eigen;  // per residue class

  void build_eigenbasis() {
    eps_k = Cyclo::root_of_unity(k);
    eigen.assign(k, {});
    std::vector<bool> seen(g.dim, false);
    for (int b = 0; b < g.dim; ++b) {
      if (seen[b]) continue;
      int cur = b;
      do {
        seen[cur] = true;
        cur = mu.image[cur];
      } while (cur != b);
      for (int j = 0; j < k; ++j) {
        AlgVec v = project(j, AlgVec::unit(b));
        if (v.is_zero()) continue;
        EigenVector ev;
        ev.v = std::move(v);
        ev.cartan = !g.is_root_index(b);
        eigen[j].push_back(std::move(ev));
      }
    }
  }

  AlgVec project(int j, const AlgVec& x) const {
    AlgVec out;
    AlgVec cur = x;
    for (int a = 0; a < k; ++a) {
      out += cur * Cyclo::root_of_unity(k, -static_cast<long>(j) * a);
      cur = mu.apply(cur);
    }
    out *= Cyclo(Rational(1, k));
    return out;
  }

  bool in_component(int degree, const AlgVec& x) const {
    int j = ((degree % k) + k) % k;
    Cyclo w = Cyclo::root_of_unity(k, j);
    return mu.apply(x) == x * w;
  }

  // the defining bracket with central extension and derivation action
  LoopElement bracket(const LoopElement& x, const LoopElement& y, int window) const {
    LoopElement out;
    for (const auto& [m, xm] : x.comp)
      for (const auto& [n, yn] : y.comp) {
        AlgVec b = g.bracket(xm, yn);
        if (!b.is_zero()) {
          if (std::abs(m + n) > window)
            throw WindowOverflow("bracket degree " + std::to_string(m + n) +
                                 " exceeds window " + std::to_string(window));
          out += LoopElement::embed(b, m + n);
        }
        if (m == -n && m != 0) {
          Cyclo pairing = g.form(xm, yn) * Cyclo(m);
          LoopElement cc;
          cc.c = pairing;
          out += cc;
        }
      }
    if (!x.d.is_zero())
      for (const auto& [n, yn] : y.comp) out += LoopElement::embed(yn * (x.d * Cyclo(n)), n);
    if (!y.d.is_zero())
      for (const auto& [m, xm] : x.comp)
        out += LoopElement::embed(xm * (y.d * Cyclo(-m)), m);
    return out;
  }

  void validate(const LoopElement& x) const {
    for (const auto& [deg, v] : x.comp)
      if (!in_component(deg, v))
        throw NotRootHomogeneous("component at degree " + std::to_string(deg) +
                                 " is not in the matching eigenspace");
  }
};

// ---------------------------------------------------------------------------
// Full adapted realization of a twisted affine type: lifted automorphism,
// eigen data with collapsed weights, affine generators, and the parent
// Cartan involution arranged to interchange mu and mu^{-1} (needed so the
// compact involution flips loop degrees consistently when k = 3).

struct TwistedRealization {
  AffineType type;
  LoopAlgebra L;
  BasisAutomorphism sigma_tilde;  // identity when k = 2
  BasisAutomorphism omega_dot;    // omega0 composed with sigma_tilde
  std::vector<std::vector<int>> orbit_of;  // affine vertex i>=1 -> parent vertices (1-based)

  std::vector<LoopElement> e, f, h;  // affine generators, index 0..l
  AlgVec E0;                         // degree-1 part of e_0

  // collapsed finite weight of a parent basis vector (empty for Cartan)
  std::vector<std::vector<int>> weight_of_basis;

  int rank() const { return type.l; }

  std::vector<int> collapse(const RootVector& parent_coords) const {
    std::vector<int> w(type.l, 0);
    for (int i = 1; i <= type.l; ++i)
      for (int p : orbit_of[i]) w[i - 1] += parent_coords[p - 1];
    return w;
  }

  // Pi-coordinates of the affine root attached to (finite weight, degree)
  RootVector affine_root(const std::vector<int>& w, int degree) const {
    const std::vector<int> a = marks(type);
    RootVector r(type.vertices());
    r[0] = degree;
    for (int i = 1; i <= type.l; ++i) r[i] = w[i - 1] + degree * a[i];
    return r;
  }

  // Solve for x in the Cartan with <alpha_p, x> = targets[p] for every
  // parent simple root.
  AlgVec cartan_dual(const std::vector<Rational>& targets) const {
    const int n = L.g.rank;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (int p = 0; p < n; ++p) {
      for (int i = 0; i < n; ++i) m[p][i] = L.g.cartan(i, p);
      m[p][n] = targets[p];
    }
    for (int col = 0, row = 0; col < n; ++col, ++row) {
      int piv = -1;
      for (int r = row; r < n; ++r)
        if (m[r][col] != 0) { piv = r; break; }
      if (piv < 0) throw Error("Internal", "singular Cartan matrix");
      std::swap(m[piv], m[row]);
      Rational inv = m[row][col];
      for (int kk = col; kk <= n; ++kk) m[row][kk] /= inv;
      for (int r = 0; r < n; ++r) {
        if (r == row || m[r][col] == 0) continue;
        Rational fq = m[r][col];
        for (int kk = col; kk <= n; ++kk) m[r][kk] -= fq * m[row][kk];
      }
    }
    AlgVec out;
    for (int i = 0; i < n; ++i) out.add_term(L.g.coroot_index(i), Cyclo(m[i][n]));
    return out;
  }

  // p-ring_i as a parent Cartan element: pairs to delta_ij against the
  // collapsed finite simple roots.
  AlgVec p_ring(int i) const {
    std::vector<Rational> targets(L.g.rank, 0);
    for (int p : orbit_of[i]) targets[p - 1] = 1;
    return cartan_dual(targets);
  }
};

inline int finite_dimension(FiniteType t) {
  switch (t.series) {
    case 'A': return t.rank * (t.rank + 2);
    case 'B':
    case 'C': return t.rank * (2 * t.rank + 1);
    case 'D': return t.rank * (2 * t.rank - 1);
    case 'E': return t.rank == 6 ? 78 : (t.rank == 7 ? 133 : 248);
    case 'F': return 52;
    case 'G': return 14;
  }
  throw UnsupportedType();
}

namespace detail {

// Parent-diagram data per family: the twisting vertex permutation (1-based)
// and the orbit map from affine finite vertices to parent vertices.
struct TwistPlan {
  VertexPermutation nu;  // 0-based on parent simple roots
  std::vector<std::vector<int>> orbit_of;
};

inline TwistPlan twist_plan(const AffineType& t) {
  TwistPlan plan;
  const int l = t.l;
  const FiniteType parent = t.parent_type();
  const int n = parent.rank;
  plan.nu = VertexPermutation::identity(n);
  plan.orbit_of.assign(l + 1, {});
  auto set_swap = [&](int a, int b) {  // 1-based
    plan.nu.perm[a - 1] = b - 1;
    plan.nu.perm[b - 1] = a - 1;
  };
  switch (t.family) {
    case Family::A2_2:
      set_swap(1, 2);
      plan.orbit_of[1] = {1, 2};
      break;
    case Family::A2l_2:
      for (int i = 1; i <= l; ++i) {
        set_swap(i, 2 * l + 1 - i);
        plan.orbit_of[i] = {i, 2 * l + 1 - i};
      }
      break;
    case Family::A2lm1_2:
      for (int i = 1; i < l; ++i) {
        set_swap(i, 2 * l - i);
        plan.orbit_of[i] = {i, 2 * l - i};
      }
      plan.orbit_of[l] = {l};
      break;
    case Family::Dlp1_2:
      for (int i = 1; i < l; ++i) plan.orbit_of[i] = {i};
      set_swap(l, l + 1);
      plan.orbit_of[l] = {l, l + 1};
      break;
    case Family::E6_2:
      set_swap(1, 6);
      set_swap(3, 5);
      plan.orbit_of[1] = {1, 6};
      plan.orbit_of[2] = {3, 5};
      plan.orbit_of[3] = {4};
      plan.orbit_of[4] = {2};
      break;
    case Family::D4_3:
      plan.nu.perm = {2, 1, 3, 0};  // 1 -> 3 -> 4 -> 1, fixing 2 (0-based cycle)
      plan.orbit_of[1] = {1, 3, 4};
      plan.orbit_of[2] = {2};
      break;
  }
  return plan;
}

// Enumerate sign assignments compatible with order k: +1 on fixed vertices,
// a free sign per 2-orbit (same on both ends), two free signs per 3-orbit
// with product 1.
inline std::vector<std::vector<Cyclo>> sign_candidates(const VertexPermutation& nu) {
  const int n = nu.size();
  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<int> orb;
    int cur = i;
    do {
      seen[cur] = true;
      orb.push_back(cur);
      cur = nu(cur);
    } while (cur != i);
    orbits.push_back(orb);
  }
  std::vector<std::vector<Cyclo>> result{std::vector<Cyclo>(n, Cyclo::one())};
  for (const auto& orb : orbits) {
    if (orb.size() == 1) continue;
    std::vector<std::vector<Cyclo>> expanded;
    if (orb.size() == 2) {
      for (const auto& base : result)
        for (int s : {1, -1}) {
          auto v = base;
          v[orb[0]] = Cyclo(s);
          v[orb[1]] = Cyclo(s);
          expanded.push_back(v);
        }
    } else {  // 3-orbit
      for (const auto& base : result)
        for (int s0 : {1, -1})
          for (int s1 : {1, -1}) {
            auto v = base;
            v[orb[0]] = Cyclo(s0);
            v[orb[1]] = Cyclo(s1);
            v[orb[2]] = Cyclo(s0 * s1);
            expanded.push_back(v);
          }
    }
    result = std::move(expanded);
  }
  return result;
}

}  // namespace detail

inline TwistedRealization realize(const AffineType& t) {
  TwistedRealization R;
  R.type = t;
  R.L.g = chevalley_algebra(t.parent_type());
  R.L.k = t.twist_order();
  const detail::TwistPlan plan = detail::twist_plan(t);
  R.orbit_of = plan.orbit_of;

  // --- lift mu: search sign corrections until order and fixed type match
  const int want_fix = finite_dimension(t.g0_type());
  bool found = false;
  std::string tried;
  for (const auto& signs : detail::sign_candidates(plan.nu)) {
    BasisAutomorphism cand = lift_from_generators(R.L.g, plan.nu, signs);
    int ord = cand.order();
    int fix = cand.fixed_dimension();
    if (ord == R.L.k && fix == want_fix &&
        is_algebra_automorphism(R.L.g, cand, 400)) {
      R.L.mu = std::move(cand);
      found = true;
      break;
    }
    tried += "(order=" + std::to_string(ord) + ",fix=" + std::to_string(fix) + ") ";
  }
  if (!found)
    throw LiftFailed("no sign correction lifts the twist for " + t.str() +
                     "; tried " + tried);
  if (!is_algebra_automorphism(R.L.g, R.L.mu))
    throw LiftFailed("lift verification failed for " + t.str());
  R.L.build_eigenbasis();

  // --- sigma_tilde: for k=3 a lifted diagram transposition inverting the
  // triality, so that the Cartan involution can flip loop degrees
  if (R.L.k == 2) {
    R.sigma_tilde = BasisAutomorphism::identity(R.L.g.dim);
  } else {
    VertexPermutation tr = VertexPermutation::identity(R.L.g.rank);
    tr.perm = {0, 1, 3, 2};  // exchange the two moved prongs (0-based 2 <-> 3)
    bool ok = false;
    for (const auto& signs : detail::sign_candidates(tr)) {
      BasisAutomorphism cand = lift_from_generators(R.L.g, tr, signs);
      if (cand.order() != 2) continue;
      BasisAutomorphism conj_mu = cand.compose(R.L.mu).compose(cand);
      BasisAutomorphism mu2 = R.L.mu.compose(R.L.mu);
      bool inverts = true;
      for (int b = 0; b < R.L.g.dim && inverts; ++b)
        inverts = conj_mu.image[b] == mu2.image[b] && conj_mu.scale[b] == mu2.scale[b];
      if (!inverts) continue;
      R.sigma_tilde = std::move(cand);
      ok = true;
      break;
    }
    if (!ok) throw LiftFailed("no involutive lift inverting the triality");
  }
  {
    BasisAutomorphism omega0;
    omega0.image.resize(R.L.g.dim);
    omega0.scale.assign(R.L.g.dim, Cyclo::one());
    for (int b = 0; b < R.L.g.dim; ++b) {
      if (R.L.g.is_root_index(b)) {
        omega0.image[b] = R.L.g.root_index(negate(R.L.g.roots[b]));
      } else {
        omega0.image[b] = b;
        omega0.scale[b] = Cyclo(-1);
      }
    }
    R.omega_dot = omega0.compose(R.sigma_tilde);
  }

  // --- collapsed weights per basis vector
  R.weight_of_basis.assign(R.L.g.dim, {});
  for (int b = 0; b < R.L.g.dim; ++b)
    if (R.L.g.is_root_index(b)) R.weight_of_basis[b] = R.collapse(R.L.g.roots[b]);
  for (int j = 0; j < R.L.k; ++j)
    for (auto& ev : R.L.eigen[j]) {
      if (ev.cartan) {
        ev.weight.assign(t.l, 0);
      } else {
        ev.weight = R.weight_of_basis[ev.v.terms().front().first];
      }
    }

  // --- affine generators
  const int l = t.l;
  R.e.resize(l + 1);
  R.f.resize(l + 1);
  R.h.resize(l + 1);
  const bool bc = t.family == Family::A2_2 || t.family == Family::A2l_2;
  for (int i = 1; i <= l; ++i) {
    const int v = R.orbit_of[i].front();  // 1-based parent vertex
    const size_t ni = R.orbit_of[i].size();
    AlgVec ev = R.L.g.e(v - 1), fv = R.L.g.f(v - 1);
    AlgVec esum, fsum, cur_e = ev, cur_f = fv;
    for (size_t a = 0; a < ni; ++a) {
      esum += cur_e;
      fsum += cur_f;
      cur_e = R.L.mu.apply(cur_e);
      cur_f = R.L.mu.apply(cur_f);
    }
    if (bc && i == l) {
      esum *= Cyclo::sqrt2();
      fsum *= Cyclo::sqrt2();
    }
    if (!R.L.in_component(0, esum) || !R.L.in_component(0, fsum))
      throw LiftFailed("orbit-sum generator not fixed by the lift");
    R.e[i] = LoopElement::embed(esum, 0);
    R.f[i] = LoopElement::embed(fsum, 0);
    R.h[i] = LoopElement::embed(R.L.g.bracket(esum, fsum), 0);
  }

  // e_0 = E_0 (x) t with E_0 the lowest-weight vector of the degree-1
  // component; f_0 = -omega_dot(E_0) (x) t^{-1}, jointly normalized so that
  // [a0vee, e_0] = 2 e_0, omega(e_0) = -f_0 and sigma'_n(e_0) = e_0.
  {
    const int j1 = 1 % R.L.k;
    std::vector<AlgVec> lows;
    for (const auto& evec : R.L.eigen[j1]) {
      if (evec.cartan) continue;
      bool lowest = true;
      for (int i = 1; i <= l && lowest; ++i)
        lowest = R.L.g.bracket(R.f[i].comp.at(0), evec.v).is_zero();
      if (lowest) lows.push_back(evec.v);
    }
    if (lows.size() != 1)
      throw LiftFailed("degree-1 lowest weight space has dimension " +
                       std::to_string(lows.size()));
    AlgVec E = lows.front();

    // phase: make E fixed by conj . sigma_tilde
    {
      AlgVec sE = R.sigma_tilde.apply(E);
      AlgVec sEc;
      for (const auto& [b, cf] : sE.terms()) sEc.add_term(b, cf.conj());
      // sEc must be proportional to E
      const auto& [b0, c0] = E.terms().front();
      Cyclo u = sEc.coeff(b0) * c0.inverse();
      if (!(sEc == E * u)) throw LiftFailed("sigma'_n does not preserve the e_0 line");
      if (u != Cyclo::one()) {
        Cyclo tphase = Cyclo::one() + u;
        if (tphase.is_zero()) tphase = Cyclo::i();
        E = E * tphase;
      }
    }

    AlgVec F = -(R.omega_dot.apply(E));
    AlgVec h0 = R.L.g.bracket(E, F);
    AlgVec adE = R.L.g.bracket(h0, E);
    const auto& [eb, ec] = E.terms().front();
    Cyclo lambda = adE.coeff(eb) * ec.inverse();
    if (!(adE == E * lambda) || lambda.is_zero())
      throw LiftFailed("[h0, E0] is not a nonzero multiple of E0");
    auto tau = cyclo_sqrt(Cyclo(2) * lambda.inverse());
    if (!tau) throw LiftFailed("no square root for the e_0 normalization");
    // prefer the real square root so sigma'_n keeps fixing e_0
    Cyclo tv = *tau;
    if (tv.conj() != tv && (-tv).conj() == -tv) tv = -tv;
    E = E * tv;
    R.E0 = E;
    R.e[0] = LoopElement::embed(E, 1);
    R.f[0] = LoopElement::embed(-(R.omega_dot.apply(E)), -1);
    R.h[0] = R.L.bracket(R.e[0], R.f[0], 2);
  }
  return R;
}

// ---------------------------------------------------------------------------
// Operations on a realization.

inline GCM gcm_recovery(const TwistedRealization& R, int window = 3) {
  const int n = R.type.vertices();
  GCM out;
  out.n = n;
  out.a.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LoopElement b = R.L.bracket(R.h[i], R.e[j], window);
      // must be an integer multiple of e_j
      const LoopElement& ej = R.e[j];
      auto [deg, v] = *ej.comp.begin();
      const auto& [bidx, bc] = v.terms().front();
      auto it = b.comp.find(deg);
      Cyclo lam = it == b.comp.end() ? Cyclo::zero() : it->second.coeff(bidx) * bc.inverse();
      if (!(b == ej * lam) || !lam.is_rational() ||
          denominator(lam.as_rational()) != 1)
        throw EigenvalueMismatch("[h_" + std::to_string(i) + ", e_" + std::to_string(j) +
                                 "] is not an integer multiple of e_" + std::to_string(j));
      out.a[i][j] = static_cast<int>(numerator(lam.as_rational()));
    }
  return out;
}

struct Sl2Triple {
  LoopElement E, H, F;
};

// sl2 triple attached to the real root with the given collapsed finite
// weight and loop degree.
inline Sl2Triple sl2_triple(const TwistedRealization& R, const std::vector<int>& weight,
                            int degree, int window) {
  RootVector gamma = R.affine_root(weight, degree);
  auto rr = real_roots(R.type, std::abs(degree));
  if (!rr.count(gamma))
    throw NotARealRoot("(" + std::to_string(degree) + ", weight) is not a real root");
  const int k = R.L.k;
  int j = ((degree % k) + k) % k;
  int nj = ((-degree % k) + k) % k;
  std::vector<int> nweight(weight.size());
  for (size_t i = 0; i < weight.size(); ++i) nweight[i] = -weight[i];
  const AlgVec *ev = nullptr, *fv = nullptr;
  for (const auto& x : R.L.eigen[j])
    if (!x.cartan && x.weight == weight) ev = &x.v;
  for (const auto& x : R.L.eigen[nj])
    if (!x.cartan && x.weight == nweight) fv = &x.v;
  if (!ev || !fv) throw NotARealRoot("no root vector for the requested weight");
  LoopElement E = LoopElement::embed(*ev, degree);
  LoopElement F0 = LoopElement::embed(*fv, -degree);
  LoopElement H0 = R.L.bracket(E, F0, window);
  // [H0, E] = lambda E; rescale F so lambda becomes 2
  LoopElement adE = R.L.bracket(H0, E, window);
  const auto& [deg, v] = *E.comp.begin();
  const auto& [bidx, bc] = v.terms().front();
  auto it = adE.comp.find(deg);
  Cyclo lam = it == adE.comp.end() ? Cyclo::zero() : it->second.coeff(bidx) * bc.inverse();
  if (lam.is_zero() || !(adE == E * lam))
    throw NotARealRoot("candidate root vector is not an sl2 raising element");
  LoopElement F = F0 * (Cyclo(2) * lam.inverse());
  LoopElement H = R.L.bracket(E, F, window);
  Sl2Triple t{E, H, F};
  if (!(R.L.bracket(H, E, window) == E * Cyclo(2)) ||
      !(R.L.bracket(H, F, window) == F * Cyclo(-2)))
    throw EigenvalueMismatch("sl2 relations failed");
  return t;
}

// exp(i pi ad h) for an integral torus element h given by its pairings with
// the affine base: acts diagonally on root components by (-1)^{gamma(h)}.
inline LoopElement torus_sign_action(const TwistedRealization& R, const PairingVector& h,
                                     const LoopElement& x) {
  LoopElement out;
  out.c = x.c;
  out.d = x.d;
  for (const auto& [deg, v] : x.comp) {
    AlgVec nv;
    for (const auto& [b, coeff] : v.terms()) {
      if (!R.L.g.is_root_index(b)) {
        nv.add_term(b, coeff);
        continue;
      }
      RootVector gamma = R.affine_root(R.weight_of_basis[b], deg);
      int s = pairing(gamma, h);
      nv.add_term(b, (s % 2 == 0) ? coeff : -coeff);
    }
    if (!nv.is_zero()) out.comp[deg] = nv;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Semi-linear maps (compact involution, normal semi-involution, Cartan
// semi-involution) represented by a parent basis map plus flags.

struct SemiLinearMap {
  std::string name;
  bool conjugate_linear = false;
  bool flip_degree = false;
  int c_sign = 1;
  int d_sign = 1;
  BasisAutomorphism parent;

  LoopElement apply(const LoopElement& x) const {
    LoopElement out;
    for (const auto& [deg, v] : x.comp) {
      AlgVec pv = parent.apply(v);
      if (conjugate_linear) {
        AlgVec cv;
        for (const auto& [b, coeff] : pv.terms()) cv.add_term(b, coeff.conj());
        pv = std::move(cv);
      }
      if (!pv.is_zero()) out += LoopElement::embed(pv, flip_degree ? -deg : deg);
    }
    Cyclo cc = conjugate_linear ? x.c.conj() : x.c;
    Cyclo dd = conjugate_linear ? x.d.conj() : x.d;
    out.c = cc * Cyclo(c_sign);
    out.d = dd * Cyclo(d_sign);
    return out;
  }
};

struct StandardInvolutions {
  SemiLinearMap omega;        // linear compact involution
  SemiLinearMap sigma_n;      // conjugate-linear normal semi-involution
  SemiLinearMap omega_prime;  // conjugate-linear Cartan semi-involution
};

inline StandardInvolutions standard_involutions(const TwistedRealization& R) {
  StandardInvolutions s;
  s.omega = SemiLinearMap{"omega", false, true, -1, -1, R.omega_dot};
  s.sigma_n = SemiLinearMap{"sigma_n", true, false, 1, 1, R.sigma_tilde};
  s.omega_prime = SemiLinearMap{"omega_prime", true, true, -1, -1,
                                R.sigma_tilde.compose(R.omega_dot)};
  return s;
}

// ---------------------------------------------------------------------------
// Verification reports.

struct CheckReport {
  std::string check;
  std::string type;
  int window = 0;
  uint64_t seed = 0;
  int samples = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

namespace detail {

inline std::string describe(const LoopElement& x, const SimpleLieAlgebra& g) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [deg, v] : x.comp)
    for (const auto& [b, c] : v.terms()) {
      if (!first) os << " + ";
      os << "(" << c.str() << ")" << g.basis_name(b) << "@t^" << deg;
      first = false;
    }
  if (!x.c.is_zero()) {
    os << (first ? "" : " + ") << "(" << x.c.str() << ")c";
    first = false;
  }
  if (!x.d.is_zero()) {
    os << (first ? "" : " + ") << "(" << x.d.str() << ")d";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// deterministic pool of homogeneous loop elements within the window
inline std::vector<LoopElement> element_pool(const TwistedRealization& R, int window) {
  std::vector<LoopElement> pool;
  for (int deg = -window; deg <= window; ++deg) {
    int j = ((deg % R.L.k) + R.L.k) % R.L.k;
    for (const auto& ev : R.L.eigen[j]) pool.push_back(LoopElement::embed(ev.v, deg));
  }
  pool.push_back(LoopElement::central());
  pool.push_back(LoopElement::derivation());
  return pool;
}

}  // namespace detail

inline CheckReport check_jacobi(const TwistedRealization& R, int window, int triples,
                                uint64_t seed) {
  CheckReport rep{"jacobi", R.type.str(), window, seed, 0, {}};
  auto pool = detail::element_pool(R, window);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  auto max_degree = [](const LoopElement& x) {
    int m = 0;
    for (const auto& [deg, v] : x.comp) m = std::max(m, std::abs(deg));
    return m;
  };
  int attempts = 0;
  while (rep.samples < triples && attempts < triples * 200) {
    ++attempts;
    const LoopElement &x = pool[pick(rng)], &y = pool[pick(rng)], &z = pool[pick(rng)];
    if (max_degree(x) + max_degree(y) + max_degree(z) > window) continue;
    ++rep.samples;
    LoopElement xy = R.L.bracket(x, y, window);
    LoopElement yx = R.L.bracket(y, x, window);
    if (!(xy + yx).is_zero())
      rep.failures.push_back("antisymmetry failed on " + detail::describe(x, R.L.g) +
                             " , " + detail::describe(y, R.L.g));
    LoopElement jac = R.L.bracket(xy, z, window);
    jac += R.L.bracket(R.L.bracket(y, z, window), x, window);
    jac += R.L.bracket(R.L.bracket(z, x, window), y, window);
    if (!jac.is_zero())
      rep.failures.push_back("jacobi failed on (" + detail::describe(x, R.L.g) + ", " +
                             detail::describe(y, R.L.g) + ", " +
                             detail::describe(z, R.L.g) + ")");
  }
  // centrality and gradation on the whole pool
  for (const auto& x : pool) {
    if (!R.L.bracket(LoopElement::central(), x, window + 1).is_zero())
      rep.failures.push_back("central element acts on " + detail::describe(x, R.L.g));
    LoopElement dx = R.L.bracket(LoopElement::derivation(), x, window + 1);
    LoopElement expect;
    for (const auto& [deg, v] : x.comp) expect += LoopElement::embed(v, deg) * Cyclo(deg);
    if (!(dx == expect))
      rep.failures.push_back("d-gradation failed on " + detail::describe(x, R.L.g));
  }
  return rep;
}

inline CheckReport check_gcm(const TwistedRealization& R, int window = 3) {
  CheckReport rep{"gcm", R.type.str(), window, 0, 0, {}};
  const GCM expect = gcm(R.type);
  try {
    GCM got = gcm_recovery(R, window);
    rep.samples = expect.n * expect.n;
    for (int i = 0; i < expect.n; ++i)
      for (int j = 0; j < expect.n; ++j)
        if (got(i, j) != expect(i, j))
          rep.failures.push_back("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") = " + std::to_string(got(i, j)) + ", expected " +
                                 std::to_string(expect(i, j)));
  } catch (const Error& e) {
    rep.failures.push_back(e.what());
  }
  // cross-check [e_i, f_j] = delta_ij alpha_i^vee
  for (int i = 0; i <= R.type.l; ++i)
    for (int j = 0; j <= R.type.l; ++j) {
      LoopElement b = R.L.bracket(R.e[i], R.f[j], window);
      if (i == j ? !(b == R.h[i]) : !b.is_zero())
        rep.failures.push_back("[e_" + std::to_string(i) + ", f_" + std::to_string(j) +
                               "] has the wrong value");
    }
  return rep;
}

inline CheckReport check_sl2(const TwistedRealization& R, int maxdeg = 3) {
  CheckReport rep{"sl2", R.type.str(), maxdeg + 1, 0, 0, {}};
  const std::vector<int> a = marks(R.type);
  for (const RootVector& gamma : real_roots(R.type, maxdeg)) {
    int deg = gamma[0];
    std::vector<int> w(R.type.l);
    for (int i = 1; i <= R.type.l; ++i) w[i - 1] = gamma[i] - deg * a[i];
    ++rep.samples;
    try {
      sl2_triple(R, w, deg, maxdeg + 1);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "sl2 failed for root (";
      for (size_t i = 0; i < gamma.size(); ++i) os << (i ? "," : "") << gamma[i];
      os << "): " << e.what();
      rep.failures.push_back(os.str());
    }
  }
  return rep;
}

// The degree-doubling isomorphism onto the realization twisted by
// mu . exp((i pi /2) ad p-ring_1), checked as an exact homomorphism on a
// deterministic sample.
inline CheckReport check_psi(int l, int window, uint64_t seed = 20240601) {
  AffineType t = make_type(Family::A2lm1_2, l);
  TwistedRealization R = realize(t);
  CheckReport rep{"psi", t.str(), window, seed, 0, {}};

  // target: same parent, mu' = mu o exp((i pi/2) ad p-ring_1), k = 4
  AlgVec pr1 = R.p_ring(1);
  auto n_of = [&](int b) {
    if (!R.L.g.is_root_index(b)) return 0;
    return R.weight_of_basis[b][0];
  };
  LoopAlgebra target;
  target.g = R.L.g;
  target.k = 4;
  target.mu = R.L.mu;
  for (int b = 0; b < R.L.g.dim; ++b)
    target.mu.scale[b] *= Cyclo::root_of_unity(4, n_of(b));
  if (target.mu.order() != 4) {
    rep.failures.push_back("twisted automorphism does not have order 4");
    return rep;
  }
  target.build_eigenbasis();
  const int target_window = 2 * window + 4;

  // psi on a homogeneous loop element
  auto psi = [&](const LoopElement& x) {
    LoopElement out;
    for (const auto& [deg, v] : x.comp)
      for (const auto& [b, coeff] : v.terms()) {
        out += LoopElement::embed(AlgVec::unit(b, coeff), 2 * deg + n_of(b));
        if (deg == 0) {
          LoopElement cc;
          cc.c = coeff * R.L.g.form(pr1, AlgVec::unit(b));
          out += cc;
        }
      }
    LoopElement rest;
    rest.c = x.c * Cyclo(2);                       // psi(c) = 2C
    if (!x.d.is_zero()) {                          // psi(d) = (D - p_ring_1)/2
      rest.d = x.d * Cyclo(Rational(1, 2));
      rest += LoopElement::embed(pr1 * (x.d * Cyclo(Rational(-1, 2))), 0);
    }
    out += rest;
    return out;
  };

  // structural facts: psi(e_0) and psi(e_1) land at degree 1
  for (int i = 0; i <= l; ++i) {
    LoopElement img = psi(R.e[i]);
    if (i <= 1 && (img.comp.size() != 1 || img.comp.begin()->first != 1))
      rep.failures.push_back("psi(e_" + std::to_string(i) + ") is not at degree 1");
    target.validate(img);
  }
  {
    LoopElement pc = psi(LoopElement::central());
    if (!(pc.c == Cyclo(2)) || !pc.comp.empty())
      rep.failures.push_back("psi(c) != 2C");
  }

  // homomorphism on sampled pairs covering all degree combinations
  auto pool = detail::element_pool(R, window);
  std::mt19937_64 rng(seed);
  std::map<std::pair<int, int>, std::vector<const LoopElement*>> by_degree;
  for (const auto& x : pool) {
    if (x.comp.size() == 1)
      by_degree[{x.comp.begin()->first, 0}].push_back(&x);
  }
  std::vector<std::pair<const LoopElement*, const LoopElement*>> pairs;
  for (int d1 = -window; d1 <= window; ++d1)
    for (int d2 = -window; d2 <= window; ++d2) {
      if (std::abs(d1 + d2) > window) continue;
      const auto &p1 = by_degree[{d1, 0}], &p2 = by_degree[{d2, 0}];
      if (p1.empty() || p2.empty()) continue;
      std::uniform_int_distribution<size_t> pick1(0, p1.size() - 1), pick2(0, p2.size() - 1);
      pairs.emplace_back(p1[pick1(rng)], p2[pick2(rng)]);
      pairs.emplace_back(p1[pick1(rng)], p2[pick2(rng)]);
    }
  LoopElement cder = LoopElement::derivation();
  for (const auto& x : pool)
    if (x.comp.size() == 1 && std::abs(x.comp.begin()->first) <= window / 2)
      pairs.emplace_back(&cder, &x);

  for (const auto& [px, py] : pairs) {
    ++rep.samples;
    LoopElement lhs = psi(R.L.bracket(*px, *py, window));
    LoopElement rhs = target.bracket(psi(*px), psi(*py), target_window);
    if (!(lhs == rhs))
      rep.failures.push_back("homomorphism defect on (" + detail::describe(*px, R.L.g) +
                             ", " + detail::describe(*py, R.L.g) + ")");
  }
  return rep;
}

}  // namespace vogan
