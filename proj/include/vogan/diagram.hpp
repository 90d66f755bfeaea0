#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "vogan/cartan.hpp"
#include "vogan/errors.hpp"
#include "vogan/render.hpp"
#include "vogan/roots.hpp"

namespace vogan {

// A Vogan diagram: affine type, an order <= 2 diagram automorphism rho, and
// a painted subset of the rho-fixed vertices.
struct VoganDiagram {
  AffineType type;
  VertexPermutation rho;
  std::set<int> painted;

  bool operator==(const VoganDiagram& o) const {
    return type == o.type && rho == o.rho && painted == o.painted;
  }
  bool operator<(const VoganDiagram& o) const {
    if (!(type == o.type)) return type < o.type;
    if (!(rho == o.rho)) return rho < o.rho;
    return painted < o.painted;
  }

  unsigned painted_mask() const {
    unsigned m = 0;
    for (int v : painted) m |= 1u << v;
    return m;
  }
};

struct MoveSet {
  bool allow_r0 = false;  // false: R[j] only for j in [1,l]
  static MoveSet strict() { return MoveSet{false}; }
  static MoveSet extended() { return MoveSet{true}; }
  const char* name() const { return allow_r0 ? "extended" : "strict"; }
};

inline MoveSet parse_moveset(const std::string& s) {
  if (s == "strict") return MoveSet::strict();
  if (s == "extended") return MoveSet::extended();
  throw ParseError("unknown moveset '" + s + "' (want strict|extended)");
}

inline VoganDiagram make_diagram(const AffineType& t, const VertexPermutation& rho,
                                 const std::set<int>& painted) {
  const GCM m = gcm(t);
  if (rho.size() != t.vertices() || !preserves_gcm(m, rho))
    throw NotAnAutomorphism("rho is not a diagram automorphism of " + t.str());
  if (!rho.compose(rho).is_identity())
    throw NotAnAutomorphism("rho does not have order <= 2");
  for (int v : painted) {
    if (v < 0 || v >= t.vertices())
      throw PaintedMovedVertex("painted vertex " + std::to_string(v) + " out of range");
    if (rho(v) != v)
      throw PaintedMovedVertex("painted vertex " + std::to_string(v) +
                               " is not fixed by rho");
  }
  return VoganDiagram{t, rho, painted};
}

inline VoganDiagram unpainted_diagram(const AffineType& t) {
  return VoganDiagram{t, VertexPermutation::identity(t.vertices()), {}};
}

// R[j]: re-base by the reflection in the painted simple root alpha_j.  The
// colour of a rho-fixed vertex k != j flips exactly when the Cartan integer
// a[j][k] is odd; vertex j itself and the 2-element orbits never change.
inline VoganDiagram apply_R(const VoganDiagram& d, int j, const MoveSet& m) {
  if (!d.painted.count(j))
    throw VertexNotPainted("R[" + std::to_string(j) + "]: vertex not painted");
  if (j == 0 && !m.allow_r0) throw R0Disallowed("R[0] requires the extended move set");
  const GCM cm = gcm(d.type);
  VoganDiagram out = d;
  for (int k = 0; k < cm.n; ++k) {
    if (k == j || d.rho(k) != k) continue;
    if (cm(j, k) % 2 != 0) {
      if (out.painted.count(k))
        out.painted.erase(k);
      else
        out.painted.insert(k);
    }
  }
  return out;
}

inline VoganDiagram apply_automorphism(const VoganDiagram& d, const VertexPermutation& tau) {
  const GCM cm = gcm(d.type);
  if (tau.size() != d.type.vertices() || !preserves_gcm(cm, tau))
    throw NotAnAutomorphism("tau is not a diagram automorphism");
  if (!(tau.compose(d.rho) == d.rho.compose(tau)))
    throw NonCommuting("tau does not commute with rho");
  VoganDiagram out = d;
  out.painted.clear();
  for (int v : d.painted) out.painted.insert(tau(v));
  return out;
}

// Closure of {d} under all legal moves, sorted.
inline std::vector<VoganDiagram> orbit(const VoganDiagram& d, const MoveSet& m) {
  const std::vector<VertexPermutation> auts = diagram_automorphisms(d.type);
  std::set<VoganDiagram> seen{d};
  std::vector<VoganDiagram> frontier{d};
  while (!frontier.empty()) {
    std::vector<VoganDiagram> next;
    for (const auto& cur : frontier) {
      for (int j : cur.painted) {
        if (j == 0 && !m.allow_r0) continue;
        VoganDiagram nd = apply_R(cur, j, m);
        if (seen.insert(nd).second) next.push_back(nd);
      }
      for (const auto& tau : auts) {
        if (!(tau.compose(cur.rho) == cur.rho.compose(tau))) continue;
        VoganDiagram nd = apply_automorphism(cur, tau);
        if (seen.insert(nd).second) next.push_back(nd);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

inline VoganDiagram canonical(const VoganDiagram& d, const MoveSet& m) {
  std::vector<VoganDiagram> o = orbit(d, m);
  VoganDiagram best = o.front();
  for (const auto& x : o) {
    auto key = [](const VoganDiagram& v) {
      return std::pair(v.rho.perm, v.painted_mask());
    };
    if (key(x) < key(best)) best = x;
  }
  return best;
}

struct ReductionReport {
  VoganDiagram minimal;  // orbit member with the fewest painted vertices
  int painted_count = 0;
};

// An orbit member with at most two painted vertices, preferring the
// patterns the labeling algorithm recognizes; otherwise a report carrying
// the minimal-painted witness.
inline std::variant<VoganDiagram, ReductionReport> reduce(const VoganDiagram& d,
                                                          const MoveSet& m) {
  const std::vector<int> mk = marks(d.type);
  std::vector<VoganDiagram> o = orbit(d, m);
  auto by_size = [](const VoganDiagram& a, const VoganDiagram& b) {
    return std::pair(a.painted.size(), a.painted_mask()) <
           std::pair(b.painted.size(), b.painted_mask());
  };
  std::sort(o.begin(), o.end(), by_size);
  // pattern preference: empty, then single {j}, then {0,j} with a_j odd
  for (const auto& x : o)
    if (x.painted.empty()) return x;
  for (const auto& x : o)
    if (x.painted.size() == 1) return x;
  for (const auto& x : o)
    if (x.painted.size() == 2 && x.painted.count(0)) {
      int j = *x.painted.rbegin();
      if (j >= 1 && mk[j] % 2 != 0) return x;
    }
  for (const auto& x : o)
    if (x.painted.size() <= 2) return x;
  return ReductionReport{o.front(), static_cast<int>(o.front().painted.size())};
}

// ---------------------------------------------------------------------------
// Involution labels (the first-type involutions extracted from a diagram).

struct InvolutionLabel {
  enum class Kind { Identity, ExpP, ExpP0, Rho, RhoExpP, GenericTorus };
  Kind kind = Kind::Identity;
  int j = -1;                 // for ExpP / ExpP0 / RhoExpP
  std::set<int> subset;       // for GenericTorus
  bool with_rho = false;      // for GenericTorus

  bool operator==(const InvolutionLabel&) const = default;

  std::string str() const {
    switch (kind) {
      case Kind::Identity: return "1";
      case Kind::ExpP: return "exp(i.pi.ad p_" + std::to_string(j) + ")";
      case Kind::ExpP0: return "exp(i.pi.ad p_ring_" + std::to_string(j) + ")";
      case Kind::Rho: return "rho";
      case Kind::RhoExpP: return "rho.exp(i.pi.ad p_" + std::to_string(j) + ")";
      case Kind::GenericTorus: {
        std::string s = with_rho ? "rho.exp(i.pi.ad(" : "exp(i.pi.ad(";
        bool first = true;
        for (int v : subset) {
          if (!first) s += "+";
          s += "p_" + std::to_string(v);
          first = false;
        }
        return s + "))";
      }
    }
    return "?";
  }
};

// Scan the orbit for the first pattern of the labeling algorithm, in the
// priority order: no painting, a single painted vertex, the pair {0,j} with
// a_j odd.  Falls back to the torus element read off the canonical member.
inline InvolutionLabel involution_label(const VoganDiagram& d, const MoveSet& m) {
  const std::vector<int> mk = marks(d.type);
  std::vector<VoganDiagram> o = orbit(d, m);
  std::sort(o.begin(), o.end(), [](const VoganDiagram& a, const VoganDiagram& b) {
    return std::pair(a.painted.size(), a.painted_mask()) <
           std::pair(b.painted.size(), b.painted_mask());
  });
  const bool trivial_rho = d.rho.is_identity();
  if (trivial_rho) {
    for (const auto& x : o) {
      if (x.painted.empty()) return {InvolutionLabel::Kind::Identity, -1, {}, false};
      if (x.painted.size() == 1)
        return {InvolutionLabel::Kind::ExpP, *x.painted.begin(), {}, false};
    }
    for (const auto& x : o)
      if (x.painted.size() == 2 && x.painted.count(0)) {
        int j = *x.painted.rbegin();
        if (j >= 1 && mk[j] % 2 != 0)
          return {InvolutionLabel::Kind::ExpP0, j, {}, false};
      }
  } else {
    for (const auto& x : o) {
      if (x.painted.empty()) return {InvolutionLabel::Kind::Rho, -1, {}, false};
      if (x.painted.size() == 1)
        return {InvolutionLabel::Kind::RhoExpP, *x.painted.begin(), {}, false};
    }
  }
  VoganDiagram cd = canonical(d, m);
  return {InvolutionLabel::Kind::GenericTorus, -1, cd.painted, !trivial_rho};
}

// The unique nontrivial order-2 diagram automorphism, if any.
inline std::optional<VertexPermutation> nontrivial_involution(const AffineType& t) {
  for (const auto& p : diagram_automorphisms(t))
    if (!p.is_identity() && p.compose(p).is_identity()) return p;
  return std::nullopt;
}

inline VoganDiagram diagram_of_involution(const AffineType& t, const InvolutionLabel& lab) {
  const int n = t.vertices();
  const std::vector<int> mk = marks(t);
  const VertexPermutation id = VertexPermutation::identity(n);
  auto need_rho = [&]() -> VertexPermutation {
    auto r = nontrivial_involution(t);
    if (!r) throw InvalidLabel("type " + t.str() + " has no nontrivial diagram involution");
    return *r;
  };
  switch (lab.kind) {
    case InvolutionLabel::Kind::Identity:
      return make_diagram(t, id, {});
    case InvolutionLabel::Kind::ExpP:
      if (lab.j < 0 || lab.j >= n) throw InvalidLabel("ExpP index out of range");
      return make_diagram(t, id, {lab.j});
    case InvolutionLabel::Kind::ExpP0: {
      if (lab.j < 1 || lab.j >= n) throw InvalidLabel("ExpP0 index out of range");
      std::set<int> painted{lab.j};
      if (mk[lab.j] % 2 != 0) painted.insert(0);
      return make_diagram(t, id, painted);
    }
    case InvolutionLabel::Kind::Rho:
      return make_diagram(t, need_rho(), {});
    case InvolutionLabel::Kind::RhoExpP: {
      VertexPermutation rho = need_rho();
      if (lab.j < 0 || lab.j >= n || rho(lab.j) != lab.j)
        throw InvalidLabel("RhoExpP index not fixed by rho");
      return make_diagram(t, rho, {lab.j});
    }
    case InvolutionLabel::Kind::GenericTorus: {
      VertexPermutation rho = lab.with_rho ? need_rho() : id;
      const DualBasis db = dual_basis(t);
      PairingVector h(n, 0);
      for (int j : lab.subset) {
        if (j < 0 || j >= n) throw InvalidLabel("GenericTorus index out of range");
        for (int v = 0; v < n; ++v) h[v] += db.p[j][v];
      }
      std::set<int> painted;
      for (int v = 0; v < n; ++v) {
        if (rho(v) != v) continue;
        if (pairing(simple_root(n, v), h) % 2 != 0) painted.insert(v);
      }
      return make_diagram(t, rho, painted);
    }
  }
  throw InvalidLabel();
}

// ---------------------------------------------------------------------------
// Built-in representative table rows, instantiated per type and rank.  The label
// strings are opaque annotations carried along for table matching.

struct TableRow {
  std::string label;
  VoganDiagram diagram;
};

inline std::vector<TableRow> table_rows(const AffineType& t) {
  const int l = t.l;
  const VertexPermutation id = VertexPermutation::identity(t.vertices());
  std::vector<TableRow> rows;
  auto add = [&](const std::string& lab, const VertexPermutation& rho, std::set<int> painted) {
    rows.push_back({lab, make_diagram(t, rho, std::move(painted))});
  };
  auto pring = [](int i) { return "exp(i.pi.ad p_ring_" + std::to_string(i) + ")"; };
  auto pp = [](int i) { return "exp(i.pi.ad p_" + std::to_string(i) + ")"; };
  switch (t.family) {
    case Family::A2_2:
      add("mu(x)1", id, {0});
      add(pring(1) + " = " + pp(1), id, {1});
      break;
    case Family::A2l_2:
      add("mu(x)1", id, {0});
      for (int i = 1; i <= l; ++i) add(pring(i) + " = " + pp(i), id, {i});
      break;
    case Family::A2lm1_2: {
      add("mu(x)1", id, {0});
      add("(mu(x)1).moved: " + pp(l), id, {l});
      add(pring(l), id, {0, l});
      for (int i = 1; i <= l / 2; ++i) {
        std::set<int> painted{i};
        if (marks(t)[i] % 2 != 0) painted.insert(0);
        add(pring(i), id, std::move(painted));
      }
      const VertexPermutation rho = *nontrivial_involution(t);
      add("rho", rho, {});
      add("rho(mu^2." + pring(1) + "(x)1)." + pring(l), rho, {l});
      for (int i = 2; i <= (l + 1) / 2; ++i) add("rho." + pring(i), rho, {i});
      break;
    }
    case Family::Dlp1_2: {
      add("mu(x)1", id, {0});
      for (int i = 1; i <= l / 2; ++i) add(pp(i), id, {i});
      for (int i = 1; i <= l; ++i) add(pring(i), id, {0, i});
      const VertexPermutation rho = *nontrivial_involution(t);
      add("rho", rho, {});
      if (l % 2 == 0) add("rho." + pp(l / 2), rho, {l / 2});
      break;
    }
    case Family::E6_2:
      add(pring(1) + " = " + pp(1), id, {1});
      add(pring(4), id, {0, 4});
      add("(mu(x)1)." + pring(4) + " = " + pp(4), id, {4});
      add("mu(x)1", id, {0});
      break;
    case Family::D4_3:
      add(pring(2), id, {0, 2});
      add("zeta^3(x)1", id, {0});
      break;
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Classification: enumerate all diagrams, partition into move orbits.

struct OrbitClass {
  VoganDiagram canonical;
  std::vector<VoganDiagram> members;
  InvolutionLabel label;
  std::optional<TableRow> table_match;
};

inline std::vector<OrbitClass> classify(const AffineType& t, const MoveSet& m) {
  std::vector<OrbitClass> classes;
  const std::vector<TableRow> rows = table_rows(t);
  for (const auto& rho : diagram_automorphisms(t)) {
    if (!rho.compose(rho).is_identity()) continue;
    std::vector<int> fix = rho.fixed_vertices();
    if (fix.size() > 20) throw TooLarge("enumeration bound exceeded: |Fix| > 20");
    std::set<VoganDiagram> unvisited;
    for (unsigned mask = 0; mask < (1u << fix.size()); ++mask) {
      std::set<int> painted;
      for (size_t b = 0; b < fix.size(); ++b)
        if (mask & (1u << b)) painted.insert(fix[b]);
      unvisited.insert(VoganDiagram{t, rho, painted});
    }
    while (!unvisited.empty()) {
      VoganDiagram seed = *unvisited.begin();
      OrbitClass cls;
      cls.members = orbit(seed, m);
      for (const auto& x : cls.members) unvisited.erase(x);
      cls.canonical = canonical(seed, m);
      cls.label = involution_label(seed, m);
      for (const auto& row : rows) {
        if (std::binary_search(cls.members.begin(), cls.members.end(), row.diagram)) {
          cls.table_match = row;
          break;
        }
      }
      classes.push_back(std::move(cls));
    }
  }
  std::sort(classes.begin(), classes.end(), [](const OrbitClass& a, const OrbitClass& b) {
    return std::pair(a.canonical.rho.perm, a.canonical.painted_mask()) <
           std::pair(b.canonical.rho.perm, b.canonical.painted_mask());
  });
  return classes;
}

// ---------------------------------------------------------------------------
// Table verification report.

struct TableReport {
  struct PerMoveSet {
    std::string moveset;
    bool representatives_distinct = true;
    std::vector<std::pair<std::string, std::string>> equivalent_rep_pairs;
    bool all_classes_covered = true;
    std::vector<std::string> uncovered_class_canonicals;
    int orbit_count = 0;
    int row_count = 0;
  };
  std::string type;
  PerMoveSet strict, extended;
};

std::string format_diagram(const VoganDiagram& d);  // defined below

inline TableReport verify_tables(const AffineType& t) {
  TableReport rep;
  rep.type = t.str();
  const std::vector<TableRow> rows = table_rows(t);
  for (MoveSet m : {MoveSet::strict(), MoveSet::extended()}) {
    TableReport::PerMoveSet r;
    r.moveset = m.name();
    r.row_count = static_cast<int>(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      std::vector<VoganDiagram> oi = orbit(rows[i].diagram, m);
      for (size_t j = i + 1; j < rows.size(); ++j) {
        if (std::binary_search(oi.begin(), oi.end(), rows[j].diagram)) {
          r.representatives_distinct = false;
          r.equivalent_rep_pairs.emplace_back(rows[i].label, rows[j].label);
        }
      }
    }
    std::vector<OrbitClass> classes = classify(t, m);
    r.orbit_count = static_cast<int>(classes.size());
    for (const auto& c : classes) {
      bool covered = c.table_match.has_value();
      if (!covered)
        for (const auto& x : c.members)
          if (x.painted.empty() && x.rho.is_identity()) covered = true;
      if (!covered) {
        r.all_classes_covered = false;
        r.uncovered_class_canonicals.push_back(format_diagram(c.canonical));
      }
    }
    if (m.allow_r0)
      rep.extended = std::move(r);
    else
      rep.strict = std::move(r);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Text grammar: FAMILY[:l=N][;rho=(i j)(k m)...][;painted=a,b,c]

inline std::string format_diagram(const VoganDiagram& d) {
  std::string s = family_token(d.type.family);
  switch (d.type.family) {
    case Family::A2l_2:
    case Family::A2lm1_2:
    case Family::Dlp1_2:
      s += ":l=" + std::to_string(d.type.l);
      break;
    default:
      break;
  }
  if (!d.rho.is_identity()) s += ";rho=" + d.rho.str();
  if (!d.painted.empty()) {
    s += ";painted=";
    bool first = true;
    for (int v : d.painted) {
      if (!first) s += ",";
      s += std::to_string(v);
      first = false;
    }
  }
  return s;
}

inline VoganDiagram parse_diagram(const std::string& text) {
  auto fail = [&](const std::string& why) {
    throw ParseError("cannot parse diagram '" + text + "': " + why);
  };
  std::vector<std::string> parts;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == ';') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    parts.push_back(cur);
  }
  std::string head = parts[0];
  int l = -1;
  if (auto pos = head.find(":l="); pos != std::string::npos) {
    try {
      l = std::stoi(head.substr(pos + 3));
    } catch (...) {
      fail("bad rank parameter");
    }
    head = head.substr(0, pos);
  }
  Family fam;
  if (!parse_family(head, fam)) fail("unknown family '" + head + "'");
  AffineType t = l < 0 ? [&] {
    switch (fam) {
      case Family::A2_2:
      case Family::E6_2:
      case Family::D4_3: return make_type(fam);
      default: throw ParseError("family " + head + " needs :l=N");
    }
  }() : make_type(fam, l);

  VertexPermutation rho = VertexPermutation::identity(t.vertices());
  std::set<int> painted;
  for (size_t p = 1; p < parts.size(); ++p) {
    const std::string& s = parts[p];
    if (s.rfind("rho=", 0) == 0) {
      std::string body = s.substr(4);
      size_t i = 0;
      while (i < body.size()) {
        if (body[i] != '(') fail("expected '(' in rho");
        size_t close = body.find(')', i);
        if (close == std::string::npos) fail("unterminated cycle in rho");
        std::istringstream cyc(body.substr(i + 1, close - i - 1));
        std::vector<int> cycle;
        int v;
        while (cyc >> v) cycle.push_back(v);
        if (cycle.size() < 2) fail("cycle too short");
        for (size_t k = 0; k < cycle.size(); ++k) {
          int from = cycle[k], to = cycle[(k + 1) % cycle.size()];
          if (from < 0 || from >= t.vertices()) fail("cycle vertex out of range");
          rho.perm[from] = to;
        }
        i = close + 1;
      }
    } else if (s.rfind("painted=", 0) == 0) {
      std::istringstream ps(s.substr(8));
      std::string tok;
      while (std::getline(ps, tok, ',')) {
        if (tok.empty()) continue;
        try {
          painted.insert(std::stoi(tok));
        } catch (...) {
          fail("bad painted vertex '" + tok + "'");
        }
      }
    } else if (!s.empty()) {
      fail("unknown clause '" + s + "'");
    }
  }
  return make_diagram(t, rho, painted);
}

inline std::string render(const VoganDiagram& d, RenderFormat f) {
  return render_diagram(d.type, d.painted, d.rho, f);
}

}  // namespace vogan
