#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "upcert/cli/app.hpp"
#include "upcert/cli/corpus.hpp"
#include "upcert/errors.hpp"
#include "upcert/parse.hpp"

using namespace upcert;
using namespace upcert::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const CorpusEntry& entry(const std::string& id) {
  for (const auto& e : corpus())
    if (e.id == id) return e;
  throw InvalidArgument(id);
}

}  // namespace

TEST_CASE("exit code matrix") {
  const std::string ex41 = entry("ex4_1").source;
  const std::string p1 = entry("ex4_7_p1").source;
  struct Row {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Row> matrix{
      {{"analyze", ex41}, kExitOk},
      {{"analyze", "z^2 + $"}, kExitInput},
      {{"analyze", "1.5 z^2"}, kExitInput},
      {{"decide", ex41, "--field", "padic"}, kExitOk},
      {{"decide", "z^3 (z-1)^3 + 1"}, kExitUndecided},
      {{"decide", "z^5+2z^4+z^3+1", "--field", "complex"}, kExitOk},
      {{"decide", "z^4 + z", "--field", "quaternion"}, kExitInput},
      {{"urs", p1}, kExitOk},
      {{"urs", "z^5 + z"}, kExitUndecided},
      {{"analyze", "z^5/5 - (4 + 1/2^300) z^3/3 + 2(2 + 1/2^300) z", "--max-precision", "256"}, kExitPrecision},
      {{"verify-pair", "--poly", "z^2", "--f", "u", "--g", "-u"}, kExitOk},
      {{"corpus", "--filter", "ex4_7"}, kExitOk},
  };
  REQUIRE(matrix.size() == 12);
  for (const auto& row : matrix) {
    const Outcome o = call(row.args);
    CAPTURE(row.args[0]);
    CAPTURE(row.args.size() > 1 ? row.args[1] : std::string());
    CHECK(o.code == row.code);
  }
}

TEST_CASE("input from a file and missing input") {
  const std::string path = "upcert_cli_input.txt";
  {
    std::ofstream f(path);
    f << "z^4 + z\n";
  }
  const Outcome o = call({"decide", "--file", path, "--class", "entire"});
  std::remove(path.c_str());
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("UPE in C: Proven (ThmC)") != std::string::npos);
  CHECK(call({"decide"}).code == kExitInput);
  CHECK(call({"decide", "--file", "/nonexistent/upcert"}).code == kExitInput);
  CHECK(call({"analyze", "z^3", "--precision", "512", "--max-precision", "256"}).code == kExitInput);
}

TEST_CASE("corpus filter selects the two Ex4.7 polynomials") {
  const std::vector<EntryResult> r = run_corpus("ex4_7", 1);
  REQUIRE(r.size() == 2);
  CHECK(r[0].id == "ex4_7_p1");
  CHECK(r[1].id == "ex4_7_p2");
  CHECK(r[0].pass());
  CHECK(r[1].pass());
  const std::vector<EntryResult> fam = run_corpus("family", 1);
  REQUIRE(fam.size() == 2);
  CHECK(fam[0].pass());
  CHECK(fam[1].pass());
}

TEST_CASE("every corpus entry passes and JSON output is deterministic") {
  const Outcome a = call({"corpus", "--format", "json"});
  const Outcome b = call({"corpus", "--format", "json", "--jobs", "3"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["passed"] == doc["total"]);
  CHECK(doc["total"] == corpus().size());
}

TEST_CASE("structure JSON round-trips for every corpus entry") {
  for (const auto& e : corpus()) {
    const StructureReport r = build_structure(parse_poly(e.source));
    const std::string json = render_tables(r, RenderFormat::json);
    CAPTURE(e.id);
    CHECK(same_report(parse_structure_json(json), r));
    CHECK(render_tables(parse_structure_json(json), RenderFormat::json) == json);
  }
}

TEST_CASE("family constructor validates its parameters") {
  CHECK(family_source(7, 2, 2, 1) == "z^7 + (2) z^5 + (1) z^3 + (1)");
  CHECK_THROWS_AS(family_source(8, 2, 2, 1), InvalidArgument);  // gcd
  CHECK_NOTHROW(family_source(5, 1, 2, 1));
  CHECK_THROWS_AS(family_source(4, 1, 2, 1), InvalidArgument);  // n < 2m + 3
  CHECK_THROWS_AS(family_source(7, 2, 2, 0), InvalidArgument);  // c = 0 gives a multiple zero
  CHECK_THROWS_AS(family_source(7, 2, 0, 1), InvalidArgument);
}

TEST_CASE("JSON documents carry schema tags") {
  const std::string p = entry("ex4_7_p2").source;
  CHECK(nlohmann::json::parse(call({"analyze", p, "--format", "json"}).out)["schema"] == "structure.v1");
  CHECK(nlohmann::json::parse(call({"decide", p, "--format", "json"}).out)["schema"] == "verdict.v1");
  const auto urs = nlohmann::json::parse(call({"urs", p, "--format", "json"}).out);
  CHECK(urs["schema"] == "urs.v1");
  CHECK(urs["conclusion"] == "URSM-IM");
  CHECK(urs["cardinality"] == 19);
}
