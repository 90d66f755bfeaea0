#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "vogan/cli.hpp"

using namespace vogan;
using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

// Minimal structural validator for the subset of JSON Schema used by the
// shipped schemas (type/required/properties/items/enum/$ref definitions).
bool validates(const json& schema, const json& value, const json& root) {
  if (schema.contains("$ref")) {
    std::string ref = schema["$ref"];
    const std::string prefix = "#/definitions/";
    REQUIRE(ref.rfind(prefix, 0) == 0);
    return validates(root["definitions"][ref.substr(prefix.size())], value, root);
  }
  if (schema.contains("enum")) {
    bool any = false;
    for (const auto& e : schema["enum"]) any = any || e == value;
    if (!any) return false;
  }
  if (schema.contains("type")) {
    auto matches = [&](const std::string& t) {
      if (t == "object") return value.is_object();
      if (t == "array") return value.is_array();
      if (t == "string") return value.is_string();
      if (t == "integer") return value.is_number_integer();
      if (t == "boolean") return value.is_boolean();
      if (t == "null") return value.is_null();
      return false;
    };
    const json& ty = schema["type"];
    bool ok = false;
    if (ty.is_string())
      ok = matches(ty.get<std::string>());
    else
      for (const auto& t : ty) ok = ok || matches(t.get<std::string>());
    if (!ok) return false;
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>())) return false;
    if (schema.contains("properties"))
      for (const auto& [key, sub] : schema["properties"].items())
        if (value.contains(key) && !validates(sub, value[key], root)) return false;
  }
  if (value.is_array() && schema.contains("items"))
    for (const auto& item : value)
      if (!validates(schema["items"], item, root)) return false;
  return true;
}

json load_schema(const std::string& name) {
  std::ifstream f(std::string(VOGAN_SOURCE_DIR) + "/docs/schemas/" + name);
  REQUIRE(f.good());
  return json::parse(f);
}

}  // namespace

TEST_CASE("json outputs validate against the shipped schemas") {
  struct Case {
    std::vector<std::string> args;
    std::string schema;
  };
  for (const Case& c : std::vector<Case>{
           {{"classify", "A2lm1_2:l=3", "--moveset", "extended", "--format", "json"},
            "classify.schema.json"},
           {{"orbit", "D4_3;painted=1", "--format", "json"}, "orbit.schema.json"},
           {{"roots", "Dlp1_2:l=2", "-N", "2", "--format", "json"},
            "roots.schema.json"},
           {{"show", "E6_2;painted=0,4", "--format", "json"}, "show.schema.json"},
           {{"verify-tables", "A2_2", "--format", "json"},
            "verify-tables.schema.json"},
           {{"realize", "A2_2", "--window", "2", "--check", "gcm", "--format", "json"},
            "realize.schema.json"},
       }) {
    Run r = run_cli(c.args);
    REQUIRE(r.status == 0);
    json schema = load_schema(c.schema);
    CHECK(validates(schema, json::parse(r.out), schema));
  }
}

TEST_CASE("dot output for orbit and classify") {
  Run r = run_cli({"classify", "D4_3", "--moveset", "extended", "--format", "dot"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("graph") == 0);
  size_t graphs = 0;
  for (size_t pos = 0; (pos = r.out.find("graph \"", pos)) != std::string::npos; ++pos)
    ++graphs;
  CHECK(graphs == 3);  // one per class
  Run o = run_cli({"orbit", "A2_2;painted=0,1", "--moveset", "extended", "--format",
                   "dot"});
  REQUIRE(o.status == 0);
  CHECK(o.out.find("style=filled") != std::string::npos);
}

TEST_CASE("classify json matches the expected document shape") {
  Run r = run_cli({"classify", "A2_2", "--moveset", "extended", "--format", "json"});
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["type"] == "A2_2");
  CHECK(j["moveset"] == "extended");
  REQUIRE(j["classes"].is_array());
  CHECK(j["classes"].size() == 3);
  for (const auto& c : j["classes"]) {
    CHECK(c.contains("canonical"));
    CHECK(c.contains("size"));
    CHECK(c.contains("label"));
    CHECK(c.contains("table_match"));
  }
}

TEST_CASE("classify text diagrams re-parse to equal values") {
  for (const std::string type : {"A2_2", "Dlp1_2:l=3", "A2lm1_2:l=3", "D4_3"}) {
    Run r = run_cli({"classify", type, "--moveset", "extended"});
    REQUIRE(r.status == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
      auto pos = line.find("  size=");
      REQUIRE(pos != std::string::npos);
      std::string diag = line.substr(0, pos);
      VoganDiagram d = parse_diagram(diag);
      CHECK(format_diagram(d) == diag);
    }
  }
}

TEST_CASE("orbit members re-parse and are sorted") {
  Run r = run_cli({"orbit", "A2lm1_2:l=3;painted=0,1", "--moveset", "strict"});
  REQUIRE(r.status == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> members;
  while (std::getline(lines, line))
    if (!line.empty()) members.push_back(line);
  CHECK(members.size() > 1);
  for (const auto& mstr : members) CHECK(format_diagram(parse_diagram(mstr)) == mstr);
  // contains the single-painted representative of the chain walk
  CHECK(std::find(members.begin(), members.end(), "A2lm1_2:l=3;painted=2") !=
        members.end());
}

TEST_CASE("show renders ascii, dot and json") {
  Run ascii = run_cli({"show", "A2lm1_2:l=3;painted=0,3"});
  REQUIRE(ascii.status == 0);
  CHECK(ascii.out.find('*') != std::string::npos);

  Run dot = run_cli({"show", "E6_2;painted=1", "--format", "dot"});
  REQUIRE(dot.status == 0);
  CHECK(dot.out.rfind("graph", 0) == 0);
  CHECK(dot.out.find("style=filled") != std::string::npos);

  Run js = run_cli({"show", "A2_2;painted=0", "--format", "json"});
  REQUIRE(js.status == 0);
  json j = json::parse(js.out);
  CHECK(j["painted"] == json::array({0}));
  CHECK(j["marks"] == json::array({1, 2}));
}

TEST_CASE("realize gcm check reports zero failures") {
  Run r = run_cli({"realize", "D4_3", "--window", "3", "--check", "gcm", "--format",
                   "json"});
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["type"] == "D4_3");
  CHECK(j["seed"] == 20240601);
  REQUIRE(j["reports"].size() == 1);
  CHECK(j["reports"][0]["check"] == "gcm");
  CHECK(j["reports"][0]["failures"].empty());
}

TEST_CASE("realize psi is limited to the doubled family") {
  Run r = run_cli({"realize", "D4_3", "--check", "psi"});
  CHECK(r.status == 1);
  CHECK(r.err.find("UnsupportedType") != std::string::npos);
}

TEST_CASE("roots export, text and json") {
  Run txt = run_cli({"roots", "A2_2", "-N", "0"});
  REQUIRE(txt.status == 0);
  CHECK(txt.out == "0 -1\n0 1\n");

  Run js = run_cli({"roots", "E6_2", "-N", "1", "--format", "json"});
  REQUIRE(js.status == 0);
  json j = json::parse(js.out);
  CHECK(j["type"] == "E6_2");
  CHECK(j["N"] == 1);
  CHECK(j["kind"] == "real");
  CHECK(j["roots"].is_array());
  CHECK(j["roots"].size() > 0);

  Run im = run_cli({"roots", "A2_2", "-N", "2", "--imaginary"});
  REQUIRE(im.status == 0);
  CHECK(im.out == "-2 -4\n-1 -2\n1 2\n2 4\n");
}

TEST_CASE("verify-tables json") {
  Run r = run_cli({"verify-tables", "E6_2", "--format", "json"});
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["extended"]["orbit_count"] ==
        j["extended"]["row_count"].get<int>() + 1);
  CHECK(j["strict"]["representatives_distinct"] == true);
}

TEST_CASE("output file carries identical bytes") {
  std::string path = "cli_test_output.tmp";
  Run direct = run_cli({"classify", "D4_3", "--moveset", "extended"});
  Run filed = run_cli({"classify", "D4_3", "--moveset", "extended", "--output", path});
  REQUIRE(filed.status == 0);
  CHECK(filed.out.empty());
  std::ifstream f(path, std::ios::binary);
  std::stringstream contents;
  contents << f.rdbuf();
  CHECK(contents.str() == direct.out);
  std::remove(path.c_str());
}

TEST_CASE("deterministic outputs") {
  Run a = run_cli({"classify", "A2lm1_2:l=4", "--moveset", "extended", "--format",
                   "json"});
  Run b = run_cli({"classify", "A2lm1_2:l=4", "--moveset", "extended", "--format",
                   "json"});
  CHECK(a.out == b.out);
  Run c = run_cli({"realize", "A2_2", "--check", "jacobi", "--triples", "40"});
  Run d = run_cli({"realize", "A2_2", "--check", "jacobi", "--triples", "40"});
  CHECK(c.out == d.out);
  CHECK(c.out.find("seed=20240601") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"nonsense"}).status == 2);
  CHECK(run_cli({}).status == 2);
  CHECK(run_cli({"show", "Dlp1_2:l=1"}).status == 1);
  Run r = run_cli({"show", "Dlp1_2:l=1"});
  CHECK(r.err.find("RankOutOfRange") != std::string::npos);
  CHECK(run_cli({"show", "A2lm1_2:l=3;rho=(0 1);painted=0"}).status == 1);
  CHECK(run_cli({"classify", "A2_2", "--moveset", "sloppy"}).status == 1);
  CHECK(run_cli({"--help"}).status == 0);
}
