#pragma once

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vogan/cartan.hpp"
#include "vogan/errors.hpp"

namespace vogan {

enum class RenderFormat { ascii, dot };

namespace detail {

// Bond glyph between adjacent chain vertices i (left) and j (right); the
// arrow points at the shorter root, i.e. at the vertex whose GCM row holds
// the entry of larger magnitude.
inline std::string bond_glyph(const GCM& m, int i, int j) {
  int aij = -m(i, j), aji = -m(j, i);
  int mult = std::max(aij, aji);
  if (mult <= 1) return "----";
  bool toward_left = aij == mult;
  switch (mult) {
    case 2: return toward_left ? "<===" : "===>";
    case 3: return toward_left ? "<3==" : "==3>";
    default: return toward_left ? "<4==" : "==4>";
  }
}

inline void put_at(std::string& line, size_t col, const std::string& s) {
  if (line.size() < col + s.size()) line.resize(col + s.size(), ' ');
  for (size_t k = 0; k < s.size(); ++k) line[col + k] = s[k];
}

}  // namespace detail

// Deterministic text rendering of a (possibly painted) twisted affine
// diagram.  Layout follows the standard table ordering: one horizontal chain,
// except the branch family whose vertex 0 hangs above the chain.
inline std::string render_diagram(const AffineType& t, const std::set<int>& painted,
                                  const VertexPermutation& rho, RenderFormat format) {
  const GCM m = gcm(t);
  const std::vector<int> mk = marks(t);
  const int n = t.vertices();
  if (rho.size() != n) throw NotAnAutomorphism("rho has wrong size");
  if (!preserves_gcm(m, rho)) throw NotAnAutomorphism("rho does not preserve the GCM");
  for (int v : painted) {
    if (v < 0 || v >= n) throw InvalidPainting("painted vertex out of range");
    if (rho(v) != v)
      throw InvalidPainting("painted vertex " + std::to_string(v) +
                            " lies in a 2-element orbit");
  }
  auto glyph = [&](int v) { return painted.count(v) ? std::string("*") : std::string("o"); };

  if (format == RenderFormat::dot) {
    std::ostringstream os;
    os << "graph \"" << t.str() << "\" {\n";
    os << "  rankdir=LR;\n  node [shape=circle];\n";
    for (int v = 0; v < n; ++v) {
      os << "  v" << v << " [label=\"a" << v << ":" << mk[v] << "\"";
      if (painted.count(v)) os << ", style=filled, fillcolor=black, fontcolor=white";
      os << "];\n";
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (m(i, j) == 0) continue;
        int mult = std::max(-m(i, j), -m(j, i));
        int head = -m(i, j) == mult ? i : j;  // arrow points at the short root
        int tail = head == i ? j : i;
        os << "  v" << tail << " -- v" << head;
        if (mult > 1) os << " [label=\"" << mult << "\", dir=forward]";
        os << ";\n";
      }
    for (int v = 0; v < n; ++v)
      if (rho(v) > v)
        os << "  v" << v << " -- v" << rho(v) << " [style=dashed, label=\"rho\"];\n";
    os << "}\n";
    return os.str();
  }

  // ASCII.  Chain vertices occupy columns 0, 5, 10, ...
  const bool branch = t.family == Family::A2lm1_2;
  std::vector<int> chain;  // vertex ids left to right
  if (branch) {
    for (int v = 1; v < n; ++v) chain.push_back(v);
  } else {
    for (int v = 0; v < n; ++v) chain.push_back(v);
  }
  std::string marks_line, glyph_line, name_line;
  for (size_t c = 0; c < chain.size(); ++c) {
    size_t col = 5 * c;
    int v = chain[c];
    detail::put_at(marks_line, col, std::to_string(mk[v]));
    detail::put_at(glyph_line, col, glyph(v));
    if (c + 1 < chain.size())
      detail::put_at(glyph_line, col + 1, detail::bond_glyph(m, v, chain[c + 1]));
    detail::put_at(name_line, col, "a" + std::to_string(v));
  }
  std::ostringstream os;
  if (branch) {
    // vertex 0 sits above chain cell 1 (vertex 2)
    std::string l0, l1, l2;
    detail::put_at(l0, 5, std::to_string(mk[0]));
    detail::put_at(l1, 5, glyph(0));
    detail::put_at(l1, 7, "a0");
    detail::put_at(l2, 5, "|");
    os << l0 << '\n' << l1 << '\n' << l2 << '\n';
  }
  os << marks_line << '\n' << glyph_line << '\n' << name_line << '\n';
  if (!rho.is_identity()) os << "rho: " << rho.str() << '\n';
  return os.str();
}

}  // namespace vogan
