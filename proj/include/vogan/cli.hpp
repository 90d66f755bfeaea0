#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vogan/diagram.hpp"
#include "vogan/loop.hpp"

namespace vogan::cli {

using nlohmann::json;

inline json diagram_json(const VoganDiagram& d) {
  json j;
  j["type"] = d.type.str();
  j["diagram"] = format_diagram(d);
  j["rho"] = d.rho.str();
  j["painted"] = std::vector<int>(d.painted.begin(), d.painted.end());
  j["marks"] = marks(d.type);
  return j;
}

inline json report_json(const CheckReport& r) {
  json j;
  j["check"] = r.check;
  j["type"] = r.type;
  j["window"] = r.window;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["failures"] = r.failures;
  return j;
}

inline json table_report_json(const TableReport& rep) {
  auto per = [](const TableReport::PerMoveSet& p) {
    json j;
    j["moveset"] = p.moveset;
    j["row_count"] = p.row_count;
    j["orbit_count"] = p.orbit_count;
    j["representatives_distinct"] = p.representatives_distinct;
    json pairs = json::array();
    for (const auto& [a, b] : p.equivalent_rep_pairs) pairs.push_back({a, b});
    j["equivalent_representative_pairs"] = pairs;
    j["all_classes_covered"] = p.all_classes_covered;
    j["uncovered_class_canonicals"] = p.uncovered_class_canonicals;
    return j;
  };
  json j;
  j["type"] = rep.type;
  j["strict"] = per(rep.strict);
  j["extended"] = per(rep.extended);
  return j;
}

inline json classify_json(const AffineType& t, const MoveSet& m,
                          const std::vector<OrbitClass>& classes) {
  json j;
  j["type"] = t.str();
  j["moveset"] = m.name();
  json arr = json::array();
  for (const auto& c : classes) {
    json e;
    e["canonical"] = format_diagram(c.canonical);
    e["size"] = c.members.size();
    e["label"] = c.label.str();
    if (c.table_match)
      e["table_match"] = c.table_match->label;
    else
      e["table_match"] = nullptr;
    arr.push_back(e);
  }
  j["classes"] = arr;
  return j;
}

inline AffineType parse_type(const std::string& s) { return parse_diagram(s).type; }

// Runs one CLI invocation.  Returns the exit status: 0 on success, 1 on
// domain errors (error name goes to err), 2 on usage errors.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"vogan: twisted affine Vogan diagrams and their loop-algebra checks"};
  app.require_subcommand(1);

  std::string spec, format = "text", moveset = "strict", check = "all", output;
  int window = 3, degree = 3, triples = 200;
  std::uint64_t seed = 20240601;
  bool imaginary = false;

  auto add_common = [&](CLI::App* sub, bool with_moveset, bool dot_ok) {
    sub->add_option("--format", format,
                    dot_ok ? "text|json|dot" : "text|json");
    sub->add_option("--output", output, "write the output bytes to FILE");
    if (with_moveset) sub->add_option("--moveset", moveset, "strict|extended");
  };

  CLI::App* show = app.add_subcommand("show", "render one diagram");
  show->add_option("diagram", spec, "diagram, e.g. A2lm1_2:l=3;rho=(0 1);painted=3")
      ->required();
  add_common(show, true, true);

  CLI::App* orb = app.add_subcommand("orbit", "equivalence orbit of a diagram");
  orb->add_option("diagram", spec)->required();
  add_common(orb, true, true);

  CLI::App* cls = app.add_subcommand("classify", "orbit classification of a type");
  cls->add_option("type", spec, "affine type, e.g. Dlp1_2:l=3")->required();
  add_common(cls, true, true);

  CLI::App* vt = app.add_subcommand("verify-tables", "check the built-in table rows");
  vt->add_option("type", spec)->required();
  add_common(vt, true, true);

  CLI::App* rz = app.add_subcommand("realize", "loop-algebra verification checks");
  rz->add_option("type", spec)->required();
  rz->add_option("--window", window, "degree window for loop elements");
  rz->add_option("--check", check, "all|jacobi|gcm|sl2|psi");
  rz->add_option("--triples", triples, "number of Jacobi triples");
  rz->add_option("--seed", seed, "sampling seed (printed in the report)");
  add_common(rz, false, false);

  CLI::App* rt = app.add_subcommand("roots", "export real or imaginary roots");
  rt->add_option("type", spec)->required();
  rt->add_option("-N,--degree", degree, "degree bound");
  rt->add_flag("--imaginary", imaginary, "export imaginary instead of real roots");
  add_common(rt, false, false);

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  std::ostringstream buf;
  try {
    if (format != "text" && format != "json" && format != "dot")
      throw ParseError("unknown format '" + format + "'");
    if (*show) {
      VoganDiagram d = parse_diagram(spec);
      if (format == "json")
        buf << diagram_json(d).dump(2) << "\n";
      else if (format == "dot")
        buf << render(d, RenderFormat::dot);
      else
        buf << render(d, RenderFormat::ascii);
    } else if (*orb) {
      VoganDiagram d = parse_diagram(spec);
      MoveSet m = parse_moveset(moveset);
      std::vector<VoganDiagram> o = orbit(d, m);
      if (format == "json") {
        json j;
        j["type"] = d.type.str();
        j["moveset"] = m.name();
        j["seed_diagram"] = format_diagram(d);
        j["size"] = o.size();
        std::vector<std::string> mem;
        for (const auto& x : o) mem.push_back(format_diagram(x));
        j["members"] = mem;
        buf << j.dump(2) << "\n";
      } else if (format == "dot") {
        for (const auto& x : o) buf << render(x, RenderFormat::dot);
      } else {
        for (const auto& x : o) buf << format_diagram(x) << "\n";
      }
    } else if (*cls) {
      AffineType t = parse_type(spec);
      MoveSet m = parse_moveset(moveset);
      std::vector<OrbitClass> classes = classify(t, m);
      if (format == "json") {
        buf << classify_json(t, m, classes).dump(2) << "\n";
      } else if (format == "dot") {
        for (const auto& c : classes) buf << render(c.canonical, RenderFormat::dot);
      } else {
        buf << t.str() << " moveset=" << m.name() << " classes=" << classes.size()
            << "\n";
        for (const auto& c : classes) {
          buf << format_diagram(c.canonical) << "  size=" << c.members.size()
              << "  label=" << c.label.str();
          if (c.table_match) buf << "  table=" << c.table_match->label;
          buf << "\n";
        }
      }
    } else if (*vt) {
      AffineType t = parse_type(spec);
      TableReport rep = verify_tables(t);
      if (format == "json") {
        buf << table_report_json(rep).dump(2) << "\n";
      } else if (format == "dot") {
        for (const auto& row : table_rows(t)) buf << render(row.diagram, RenderFormat::dot);
      } else {
        for (const auto* p : {&rep.strict, &rep.extended}) {
          buf << rep.type << " moveset=" << p->moveset << ": rows=" << p->row_count
              << " orbits=" << p->orbit_count
              << " reps_distinct=" << (p->representatives_distinct ? "yes" : "no")
              << " covered=" << (p->all_classes_covered ? "yes" : "no") << "\n";
          for (const auto& [a, b] : p->equivalent_rep_pairs)
            buf << "  equivalent rows: " << a << " ~ " << b << "\n";
          for (const auto& c : p->uncovered_class_canonicals)
            buf << "  uncovered class: " << c << "\n";
        }
      }
    } else if (*rz) {
      AffineType t = parse_type(spec);
      if (check != "all" && check != "jacobi" && check != "gcm" && check != "sl2" &&
          check != "psi")
        throw ParseError("unknown check '" + check + "'");
      if (check == "psi" && t.family != Family::A2lm1_2)
        throw UnsupportedType("the psi check applies to A2lm1_2 only");
      TwistedRealization R = realize(t);
      std::vector<CheckReport> reports;
      if (check == "all" || check == "jacobi")
        reports.push_back(check_jacobi(R, window, triples, seed));
      if (check == "all" || check == "gcm") reports.push_back(check_gcm(R, window));
      if (check == "all" || check == "sl2")
        reports.push_back(check_sl2(R, std::min(window, 3)));
      if ((check == "all" && t.family == Family::A2lm1_2) || check == "psi")
        reports.push_back(check_psi(t.l, window, seed));
      if (format == "json") {
        json j;
        j["type"] = t.str();
        j["window"] = window;
        j["seed"] = seed;
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_json(r));
        j["reports"] = arr;
        buf << j.dump(2) << "\n";
      } else {
        buf << "type=" << t.str() << " window=" << window << " seed=" << seed << "\n";
        for (const auto& r : reports) {
          buf << "check=" << r.check << " samples=" << r.samples
              << " failures=" << r.failures.size() << "\n";
          for (const auto& fmsg : r.failures) buf << "  " << fmsg << "\n";
        }
      }
      bool ok = true;
      for (const auto& r : reports) ok = ok && r.passed();
      if (!ok) {
        out << buf.str();
        err << "error: VerificationFailed: some checks reported failures\n";
        return 1;
      }
    } else if (*rt) {
      AffineType t = parse_type(spec);
      std::set<RootVector> roots;
      if (imaginary) {
        roots = imaginary_roots(t, degree);
      } else {
        roots = real_roots(t, degree);
        std::set<RootVector> cf = real_roots_closed_form(t, degree);
        if (roots != cf)
          throw ConventionMismatch(
              "reflection closure and closed forms disagree for " + t.str());
      }
      if (format == "json") {
        json j;
        j["type"] = t.str();
        j["N"] = degree;
        j["kind"] = imaginary ? "imaginary" : "real";
        json arr = json::array();
        for (const auto& r : roots) arr.push_back(r);
        j["roots"] = arr;
        buf << j.dump(2) << "\n";
      } else {
        buf << roots_to_text(roots);
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return 1;
  }

  if (!output.empty()) {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      err << "error: cannot open output file '" << output << "'\n";
      return 1;
    }
    f << buf.str();
  } else {
    out << buf.str();
  }
  return 0;
}

}  // namespace vogan::cli
