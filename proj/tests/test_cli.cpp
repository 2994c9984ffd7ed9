#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mrext/commands.hpp"
#include "mrext/manifold_spec.hpp"
#include "testutil.hpp"

using namespace mrext;

namespace {

// Writes a spec file under the build temp dir and returns its path.
std::string write_spec(const std::string& name, const std::string& body) {
  const std::string path = "cli_spec_" + name + ".json";
  std::ofstream f(path);
  f << body;
  return path;
}

int run(const std::string& command, const std::string& path, CommandOptions opts,
        std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int rc = run_command(command, path, opts, out, err);
  if (out_text) *out_text = out.str() + err.str();
  return rc;
}

}  // namespace

TEST_CASE("load_spec reads sparse tables and symmetrizes keys") {
  const std::string path = write_spec("ok", R"({
    "dim": 2,
    "gamma": {"1,2,2": "x1"},
    "c": {"1,1": "x2"}
  })");
  const ManifoldSpec spec = load_spec(path);
  CHECK(spec.dim == 2);
  const BaseGeometry geom = build_geometry(spec);
  CHECK(geom.gamma().at({0, 1, 1}) == testutil::rf(2, "x1"));
  CHECK(geom.gamma().at({0, 1, 1}) == geom.gamma().at({0, 1, 1}));
  CHECK(geom.c().at({0, 0}) == testutil::rf(2, "x2"));
  std::remove(path.c_str());
}

TEST_CASE("load_spec accepts either symmetric key order but rejects conflicts") {
  const std::string path = write_spec("symk", R"({
    "dim": 2,
    "gamma": {"1,2,1": "x2"}
  })");
  const BaseGeometry geom = build_geometry(load_spec(path));
  CHECK(geom.gamma().at({0, 0, 1}) == testutil::rf(2, "x2"));
  CHECK(geom.gamma().at({0, 1, 0}) == testutil::rf(2, "x2"));
  std::remove(path.c_str());

  const std::string bad = write_spec("conflict", R"({
    "dim": 2,
    "gamma": {"1,1,2": "x1", "1,2,1": "x2"}
  })");
  CHECK_THROWS_AS(load_spec(bad), std::invalid_argument);
  std::remove(bad.c_str());
}

TEST_CASE("load_spec derives the connection from a metric when asked") {
  const std::string path = write_spec("metric", R"({
    "dim": 2,
    "metric": {"1,1": "1", "2,2": "x1^2"},
    "derive_connection": true
  })");
  const BaseGeometry geom = build_geometry(load_spec(path));
  CHECK(geom.gamma().at({1, 0, 1}) == testutil::rf(2, "1/x1"));
  CHECK(geom.gamma().at({0, 1, 1}) == testutil::rf(2, "-x1"));
  std::remove(path.c_str());
}

TEST_CASE("load_spec rejects malformed input with pointed messages") {
  auto expect_reject = [](const char* name, const std::string& body, const char* needle) {
    const std::string path = write_spec(name, body);
    try {
      build_geometry(load_spec(path));
      FAIL("expected rejection for ", name);
    } catch (const std::exception& e) {
      INFO(e.what());
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
    std::remove(path.c_str());
  };
  // Fiber variable in a base field.
  expect_reject("pvar", R"({"dim": 2, "gamma": {}, "c": {"1,1": "p1"}})", "p1");
  // No connection source.
  expect_reject("nogamma", R"({"dim": 2, "c": {"1,1": "x1"}})", "connection");
  // Both sources.
  expect_reject("both", R"({"dim": 2, "gamma": {}, "metric": {"1,1": "1"},
                            "derive_connection": true})", "not both");
  // Metric without the derive flag.
  expect_reject("noflag", R"({"dim": 2, "metric": {"1,1": "1", "2,2": "1"}})",
                "derive_connection");
  // J that is not an almost complex structure.
  expect_reject("badj", R"({"dim": 2, "gamma": {},
                            "J": {"1,2": "1", "2,1": "1"}})", "J^2");
  // Syntax error with location.
  expect_reject("syntax", R"({"dim": 2, "gamma": {"1,1,1": "x1 + + x2"}})", "position");
  // Index out of range.
  expect_reject("range", R"({"dim": 2, "gamma": {"1,3,1": "x1"}})", "outside");
  // Unknown field.
  expect_reject("unknown", R"({"dim": 2, "gamma": {}, "cc": {}})", "unknown");
  // Dimension bounds.
  expect_reject("dim", R"({"dim": 5, "gamma": {}})", "between 1 and 4");
}

TEST_CASE("check command passes on a healthy spec and exits zero") {
  const std::string path = write_spec("check", R"({
    "dim": 2,
    "gamma": {"1,2,2": "x1"},
    "c": {"1,1": "x2"}
  })");
  std::string text;
  CHECK(run("check", path, {}, &text) == 0);
  CHECK(text.find("[FAIL]") == std::string::npos);
  CHECK(text.find("oracle:curvature") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("tensor command prints the scalar zero and the connection") {
  const std::string path = write_spec("tensor", R"({
    "dim": 2,
    "gamma": {"1,2,2": "x1"}
  })");
  std::string text;
  CommandOptions opts;
  opts.object = "scalar";
  CHECK(run("tensor", path, opts, &text) == 0);
  CHECK(text == "0\n");
  opts.object = "connection";
  CHECK(run("tensor", path, opts, &text) == 0);
  CHECK(text.find("Gamma[1,2,2] = x1") != std::string::npos);
  // Induced frame keeps the horizontal block and moves the vertical one.
  opts.frame = "induced";
  CHECK(run("tensor", path, opts, &text) == 0);
  CHECK(text.find("Gamma[1,2,2] = x1") != std::string::npos);
  opts.frame = "sideways";
  CHECK(run("tensor", path, opts, &text) == 2);
  opts.frame = "adapted";
  opts.object = "nonsense";
  CHECK(run("tensor", path, opts, &text) == 2);
  std::remove(path.c_str());
}

TEST_CASE("conditions command returns nonzero with witnesses on a failing spec") {
  const std::string path = write_spec("conds", R"({
    "dim": 2,
    "gamma": {},
    "c": {"1,1": "x2^2"}
  })");
  std::string text;
  CHECK(run("conditions", path, {}, &text) == 1);
  CHECK(text.find("[FAIL] flatness") != std::string::npos);
  CHECK(text.find("witness") != std::string::npos);
  std::remove(path.c_str());

  const std::string good = write_spec("conds_ok", R"({
    "dim": 2,
    "gamma": {},
    "c": {"1,1": "3", "2,2": "1"}
  })");
  CHECK(run("conditions", good, {}, &text) == 0);
  std::remove(good.c_str());
}

TEST_CASE("kahler command demands the structure fields") {
  const std::string path = write_spec("nok", R"({"dim": 2, "gamma": {}})");
  std::string text;
  CHECK(run("kahler", path, {}, &text) == 2);
  CHECK(text.find("error") != std::string::npos);
  std::remove(path.c_str());

  const std::string ok = write_spec("kn", R"({
    "dim": 4,
    "metric": {"1,1": "1", "2,2": "-1", "3,3": "1", "4,4": "-1"},
    "derive_connection": true,
    "c": {"1,1": "2", "2,2": "-2"},
    "J": {"1,2": "-1", "2,1": "1", "3,4": "-1", "4,3": "1"}
  })");
  CHECK(run("kahler", ok, {}, &text) == 0);
  CHECK(text.find("kahler:verdict") != std::string::npos);
  std::remove(ok.c_str());
}

TEST_CASE("geodesic command writes the CSV schema") {
  const std::string path = write_spec("geo", R"({
    "dim": 2,
    "gamma": {"1,2,2": "x1"},
    "c": {"1,1": "x2"}
  })");
  CommandOptions opts;
  opts.x0 = {0.1, 0.0};
  opts.v0 = {1.0, 0.5};
  opts.steps = 10;
  opts.step = 1e-3;
  std::string text;
  CHECK(run("geodesic", path, opts, &text) == 0);
  std::istringstream lines(text);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,x1,x2,v1,v2,p1,p2,q1,q2,energy");
  int rows = 0;
  for (std::string line; std::getline(lines, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 11);
  // Wrong arity is rejected.
  opts.v0 = {1.0};
  CHECK(run("geodesic", path, opts, &text) == 2);
  std::remove(path.c_str());
}

TEST_CASE("report emission round-trips through JSON") {
  // Flat base with a parallel deformation: every applicable check passes.
  const std::string path = write_spec("report", R"({
    "dim": 2,
    "gamma": {},
    "c": {"2,2": "1", "1,2": "3"}
  })");
  CommandOptions opts;
  opts.format = "json";
  opts.out_path = "cli_report_roundtrip.json";
  std::string text;
  const int rc = run("report", path, opts, &text);
  CHECK(rc == 0);
  std::ifstream f(opts.out_path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto loaded = report_from_json(ss.str());
  const auto direct = report_from_json(text);
  REQUIRE(loaded.size() == direct.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded[i].name == direct[i].name);
    CHECK(loaded[i].verdict == direct[i].verdict);
    CHECK(loaded[i].note == direct[i].note);
    CHECK(loaded[i].witness.has_value() == direct[i].witness.has_value());
    if (loaded[i].witness) {
      CHECK(loaded[i].witness->index == direct[i].witness->index);
      CHECK(loaded[i].witness->expression == direct[i].witness->expression);
    }
  }
  std::remove(path.c_str());
  std::remove(opts.out_path.c_str());
}

TEST_CASE("loading is deterministic regardless of key order") {
  const std::string a = write_spec("order_a", R"({
    "dim": 2, "gamma": {"1,2,2": "x1", "2,1,1": "x2"}, "c": {"1,2": "x1", "1,1": "1"}
  })");
  const std::string b = write_spec("order_b", R"({
    "c": {"1,1": "1", "2,1": "x1"}, "gamma": {"2,1,1": "x2", "1,2,2": "x1"}, "dim": 2
  })");
  const BaseGeometry ga = build_geometry(load_spec(a));
  const BaseGeometry gb = build_geometry(load_spec(b));
  CHECK(ga.gamma() == gb.gamma());
  CHECK(ga.c() == gb.c());
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("tensor JSON output is machine readable") {
  const std::string path = write_spec("json", R"({
    "dim": 2,
    "gamma": {"1,2,2": "x1"},
    "c": {"1,1": "x2"}
  })");
  CommandOptions opts;
  opts.object = "curvature";
  opts.format = "json";
  std::string text;
  CHECK(run("tensor", path, opts, &text) == 0);
  // Parseable and carrying the lowered component R[1,2,2,3] = 1 among others.
  CHECK(text.find("\"object\": \"curvature\"") != std::string::npos);
  CHECK(text.find("\"R\"") != std::string::npos);
  std::remove(path.c_str());
}
