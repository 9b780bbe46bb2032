#include <doctest.h>

#include <filesystem>

#include "sskg/commands.hpp"
#include "sskg/error.hpp"
#include "support.hpp"

using namespace sskg;

namespace {

std::vector<std::string> graph_names() {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(SSKG_GRAPHS_DIR))
    if (entry.path().extension() == ".sskg") out.push_back(entry.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

ParseError parse_failure(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("document parsed");
  return ParseError(ErrorKind::SyntaxError, 0, 0, "");
}

}  // namespace

TEST_CASE("G1 document") {
  const GraphDocument d = fixtures::load_document("g1");
  CHECK(d.skeleton.k == 1);
  CHECK(d.skeleton.vertices.size() == 1);
  CHECK(d.skeleton.edges.size() == 1);
  CHECK_FALSE(d.group.has_value());
  CHECK(d.queries.size() == 2);
}

TEST_CASE("parse after serialize is the identity on shipped documents") {
  const auto names = graph_names();
  CHECK(names.size() >= 7);
  for (const auto& name : names) {
    CAPTURE(name);
    const GraphDocument d = fixtures::load_document(name);
    const std::string text = serialize(d);
    CHECK(parse_document(text) == d);
    CHECK(serialize(parse_document(text)) == text);
  }
}

TEST_CASE("parse diagnostics") {
  {
    const ParseError e = parse_failure("");
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(e.line() == 1);
    CHECK(e.column() == 1);
    CHECK(std::string(e.what()).find("missing k") != std::string::npos);
  }
  {
    const ParseError e = parse_failure("k 2\n[vertices]\nv\n[edges]\ne1 1 v v\ne2 2 v v\n[squares]\ne1 e3 = e2 e1\n");
    CHECK(e.kind() == ErrorKind::DanglingReference);
    CHECK(e.line() == 8);
  }
  {
    const ParseError e = parse_failure("k 1\n[vertices]\nv v\n");
    CHECK(e.kind() == ErrorKind::DuplicateId);
    CHECK(e.line() == 3);
  }
  {
    const ParseError e = parse_failure("k 1\n[vertices]\nv\n[edges]\ne 1 v x\n");
    CHECK(e.kind() == ErrorKind::DanglingReference);
  }
  {
    const ParseError e = parse_failure("k 1\n[colors]\n");
    CHECK(e.kind() == ErrorKind::SyntaxError);
  }
}

TEST_CASE("command output") {
  RunOptions opts;
  const GraphDocument g5 = fixtures::load_document("g5");
  const Json tails = run_command("tails", g5, opts);
  REQUIRE(tails["tails"].size() == 2);
  CHECK(tails["tails"][0]["class"] == "tau");
  CHECK(tails["tails"][1]["class"] == "tau");
  CHECK(tails["bound"] == Json::array({4}));

  const Json closure = run_command("closure", g5, opts);
  CHECK(closure["verdict"] == true);
  CHECK(closure["case"] == "4a");

  const GraphDocument g1 = fixtures::load_document("g1");
  const Json both = run_command("closure", g1, opts);
  REQUIRE(both["results"].size() == 2);
  CHECK(both["results"][0]["verdict"] == false);
  CHECK(both["results"][1]["verdict"] == true);
}

TEST_CASE("omitted f0 is the trivial character") {
  const GraphDocument d = parse_document("k 1\n[vertices]\nv\n[edges]\ne 1 v v\n[query]\npoint {v}\n"
                                         "Y {v} subgroup (1/2)\n[query]\npoint {v}\nY {v} finite (1/2)\n");
  const Json out = run_command("closure", d, RunOptions{});
  REQUIRE(out["results"].size() == 2);
  CHECK(out["results"][0]["query"]["f0"] == Json::array({"0"}));
  CHECK(out["results"][0]["verdict"] == true);
  CHECK(out["results"][1]["verdict"] == false);
}

TEST_CASE("identical inputs give byte-identical JSON") {
  RunOptions opts;
  opts.depth = 4;
  for (const auto& name : graph_names()) {
    if (name == "torus3") continue;
    const GraphDocument d = fixtures::load_document(name);
    for (const auto& cmd : command_names()) {
      CAPTURE(name);
      CAPTURE(cmd);
      std::string a, b;
      try {
        a = run_command(cmd, d, opts).dump(2);
      } catch (const Error& e) {
        a = error_json(e).dump(2);
      }
      try {
        b = run_command(cmd, fixtures::load_document(name), opts).dump(2);
      } catch (const Error& e) {
        b = error_json(e).dump(2);
      }
      CHECK(a == b);
      const bool echoed = a.find("\"bound\"") != std::string::npos || a.find("\"error\"") != std::string::npos;
      CHECK((echoed || cmd == "validate"));
    }
  }
}

TEST_CASE("command errors") {
  RunOptions opts;
  try {
    run_command("closure", fixtures::load_document("g3"), opts);
    FAIL("expected InvalidQuery");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidQuery);
  }
  opts.bound = Degree{4, 4};
  try {
    run_command("tails", fixtures::load_document("g1"), opts);
    FAIL("expected Malformed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Malformed);
  }
  CHECK(parse_bound("3,2") == Degree{3, 2});
  CHECK_THROWS_AS(parse_bound("3,x"), Error);
  CHECK(parse_angles("0,1/2") == std::vector<Angle>{Angle(0, 1), Angle(1, 2)});
}
