#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vogan/cartan.hpp"
#include "vogan/cyclotomic.hpp"
#include "vogan/errors.hpp"
#include "vogan/roots.hpp"

namespace vogan {

// Sparse vector over an algebra basis: sorted (index, coefficient) pairs,
// zero coefficients dropped.
class AlgVec {
 public:
  AlgVec() = default;
  static AlgVec unit(int idx, Cyclo c = Cyclo::one()) {
    AlgVec v;
    if (!c.is_zero()) v.terms_.emplace_back(idx, std::move(c));
    return v;
  }

  const std::vector<std::pair<int, Cyclo>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add_term(int idx, const Cyclo& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), idx,
                               [](const auto& t, int i) { return t.first < i; });
    if (it != terms_.end() && it->first == idx) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    } else {
      terms_.insert(it, {idx, c});
    }
  }

  Cyclo coeff(int idx) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), idx,
                               [](const auto& t, int i) { return t.first < i; });
    if (it != terms_.end() && it->first == idx) return it->second;
    return Cyclo::zero();
  }

  AlgVec& operator+=(const AlgVec& o) {
    for (const auto& [i, c] : o.terms_) add_term(i, c);
    return *this;
  }
  AlgVec& operator-=(const AlgVec& o) {
    for (const auto& [i, c] : o.terms_) add_term(i, -c);
    return *this;
  }
  AlgVec& operator*=(const Cyclo& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [i, c] : terms_) c *= s;
    return *this;
  }
  friend AlgVec operator+(AlgVec a, const AlgVec& b) { return a += b; }
  friend AlgVec operator-(AlgVec a, const AlgVec& b) { return a -= b; }
  friend AlgVec operator*(AlgVec a, const Cyclo& s) { return a *= s; }
  friend AlgVec operator*(const Cyclo& s, AlgVec a) { return a *= s; }
  AlgVec operator-() const {
    AlgVec r = *this;
    for (auto& [i, c] : r.terms_) c = -c;
    return r;
  }
  bool operator==(const AlgVec& o) const { return terms_ == o.terms_; }

 private:
  std::vector<std::pair<int, Cyclo>> terms_;
};

// Finite-dimensional simple Lie algebra of simply-laced type in a Chevalley
// basis.  Structure constants come from the bimultiplicative asymmetry
// function eps on the root lattice with eps(a,a) = (-1)^{(a,a)/2}; in this
// convention [e_a, e_{-a}] = -a^vee and the involution e_a -> e_{-a},
// h -> -h is an automorphism.
//
// Basis layout: indices [0, nroots) are the root vectors e_alpha in the
// sorted root order; indices [nroots, nroots+rank) are the simple coroots.
class SimpleLieAlgebra {
 public:
  FiniteType type{'A', 1};
  int rank = 0;
  GCM cartan;
  std::vector<RootVector> roots;
  int nroots = 0;
  int dim = 0;

  bool is_root_index(int b) const { return b < nroots; }
  int coroot_index(int i) const { return nroots + i; }
  int root_index(const RootVector& r) const {
    auto it = index_.find(r);
    return it == index_.end() ? -1 : it->second;
  }

  AlgVec e(int i) const { return AlgVec::unit(root_index(simple_root(rank, i))); }
  AlgVec f(int i) const {
    return -AlgVec::unit(root_index(negate(simple_root(rank, i))));
  }
  AlgVec h(int i) const { return AlgVec::unit(coroot_index(i)); }

  // coroot of an arbitrary root: simply laced, a^vee = sum n_i h_i
  AlgVec coroot(const RootVector& r) const {
    AlgVec v;
    for (int i = 0; i < rank; ++i) v.add_term(coroot_index(i), Cyclo(r[i]));
    return v;
  }

  // <beta, alpha_i^vee>
  int pair_with_coroot(const RootVector& beta, int i) const {
    int s = 0;
    for (int j = 0; j < rank; ++j) s += cartan(i, j) * beta[j];
    return s;
  }

  // asymmetry sign eps(a, b) in {+1, -1}
  int eps(const RootVector& a, const RootVector& b) const {
    int par = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) par += a[i] * b[j] * epsE_[i][j];
    return (par % 2 + 2) % 2 == 0 ? 1 : -1;
  }

  const AlgVec& bracket_basis(int i, int j) const { return table_[i][j]; }

  AlgVec bracket(const AlgVec& x, const AlgVec& y) const {
    AlgVec out;
    for (const auto& [i, ci] : x.terms())
      for (const auto& [j, cj] : y.terms()) {
        const AlgVec& b = table_[i][j];
        if (b.is_zero()) continue;
        Cyclo s = ci * cj;
        for (const auto& [k, ck] : b.terms()) out.add_term(k, s * ck);
      }
    return out;
  }

  // invariant bilinear form with (alpha, alpha) = 2 on all roots:
  // (e_a, e_{-a}) = -1, (h_i, h_j) = a_ij, everything else 0
  Cyclo form(const AlgVec& x, const AlgVec& y) const {
    Cyclo out;
    for (const auto& [i, ci] : x.terms())
      for (const auto& [j, cj] : y.terms()) {
        if (is_root_index(i) && is_root_index(j)) {
          if (roots[j] == negate(roots[i])) out += ci * cj * Cyclo(-1);
        } else if (!is_root_index(i) && !is_root_index(j)) {
          out += ci * cj * Cyclo(cartan(i - nroots, j - nroots));
        }
      }
    return out;
  }

  // Chevalley involution: e_a -> e_{-a}, h -> -h.
  AlgVec omega0(const AlgVec& x) const {
    AlgVec out;
    for (const auto& [i, c] : x.terms()) {
      if (is_root_index(i))
        out.add_term(root_index(negate(roots[i])), c);
      else
        out.add_term(i, -c);
    }
    return out;
  }

  // Diagonal weight of x under ad h for a Cartan element h given in the
  // coroot basis; requires x to be a single root vector when used that way.
  std::string basis_name(int b) const {
    if (is_root_index(b)) {
      std::ostringstream os;
      os << "e[";
      for (int i = 0; i < rank; ++i) {
        if (i) os << ",";
        os << roots[b][i];
      }
      os << "]";
      return os.str();
    }
    return "h" + std::to_string(b - nroots);
  }

  friend SimpleLieAlgebra chevalley_algebra(FiniteType t);

 private:
  std::map<RootVector, int> index_;
  std::vector<std::vector<int>> epsE_;
  std::vector<std::vector<AlgVec>> table_;

  void build_tables();
  void verify_jacobi() const;
};

inline GCM simply_laced_cartan(FiniteType t) {
  const int n = t.rank;
  IntMatrix a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto bond = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (t.series) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
      break;
    case 'D':
      if (n < 3) throw UnsupportedType("D rank too small");
      for (int i = 0; i + 2 < n; ++i) bond(i, i + 1);
      bond(n - 3, n - 1);
      break;
    case 'E':
      if (n != 6) throw UnsupportedType("only E6 supported");
      // Bourbaki: chain 1-3-4-5-6 with 2 attached to 4 (0-based: 0-2-3-4-5, 1 on 3)
      bond(0, 2);
      bond(2, 3);
      bond(3, 4);
      bond(4, 5);
      bond(1, 3);
      break;
    default:
      throw UnsupportedType("chevalley_algebra needs a simply-laced type");
  }
  return GCM{n, std::move(a)};
}

inline void SimpleLieAlgebra::build_tables() {
  const int n = rank;
  // asymmetry exponents: E_ii = 1, E_ij = a_ij mod 2 for i<j, 0 for i>j
  epsE_.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    epsE_[i][i] = 1;
    for (int j = i + 1; j < n; ++j) epsE_[i][j] = cartan(i, j) % 2 == 0 ? 0 : 1;
  }

  table_.assign(dim, std::vector<AlgVec>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      AlgVec v;
      if (!is_root_index(i) && !is_root_index(j)) {
        // [h,h'] = 0
      } else if (!is_root_index(i)) {
        v = AlgVec::unit(j, Cyclo(pair_with_coroot(roots[j], i - nroots)));
      } else if (!is_root_index(j)) {
        v = AlgVec::unit(i, Cyclo(-pair_with_coroot(roots[i], j - nroots)));
      } else {
        const RootVector &a = roots[i], &b = roots[j];
        RootVector sum(n);
        bool zero_sum = true;
        for (int k = 0; k < n; ++k) {
          sum[k] = a[k] + b[k];
          zero_sum = zero_sum && sum[k] == 0;
        }
        if (zero_sum) {
          v = coroot(a) * Cyclo(-1);  // [e_a, e_{-a}] = -a^vee
        } else {
          int si = root_index(sum);
          if (si >= 0) v = AlgVec::unit(si, Cyclo(eps(a, b)));
        }
      }
      table_[i][j] = std::move(v);
    }
}

inline void SimpleLieAlgebra::verify_jacobi() const {
  auto check_triple = [&](int i, int j, int k) {
    AlgVec s = bracket(bracket_basis(i, j), AlgVec::unit(k));
    s += bracket(bracket_basis(j, k), AlgVec::unit(i));
    s += bracket(bracket_basis(k, i), AlgVec::unit(j));
    if (!s.is_zero())
      throw Error("Internal", "Jacobi identity failed on basis triple (" +
                                  std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + ") in " + type.str());
  };
  if (dim <= 40) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) check_triple(i, j, k);
  } else {
    std::mt19937_64 rng(0xC0FFEEu);
    std::uniform_int_distribution<int> pick(0, dim - 1);
    for (int it = 0; it < 4000; ++it) check_triple(pick(rng), pick(rng), pick(rng));
  }
  // antisymmetry of the table
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (!(bracket_basis(i, j) + bracket_basis(j, i)).is_zero())
        throw Error("Internal", "bracket table not antisymmetric");
}

inline SimpleLieAlgebra chevalley_algebra(FiniteType t) {
  if (t.series != 'A' && t.series != 'D' && t.series != 'E')
    throw UnsupportedType("chevalley_algebra: type " + t.str() +
                          " is not simply laced");
  SimpleLieAlgebra g;
  g.type = t;
  g.rank = t.rank;
  g.cartan = simply_laced_cartan(t);
  g.roots = close_under_reflections(g.cartan);
  std::sort(g.roots.begin(), g.roots.end());
  g.nroots = static_cast<int>(g.roots.size());
  g.dim = g.nroots + g.rank;
  if (g.dim > 90) throw UnsupportedType("algebra too large for desk use");
  for (int i = 0; i < g.nroots; ++i) g.index_[g.roots[i]] = i;
  g.build_tables();
  g.verify_jacobi();
  return g;
}

}  // namespace vogan
