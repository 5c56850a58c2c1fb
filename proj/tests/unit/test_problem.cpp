#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "satlab/error.hpp"
#include "satlab/problem.hpp"

using namespace satlab;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::filesystem::path(SATLAB_FIXTURE_DIR) / name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind kind_of(const std::string& text) {
  try {
    (void)Problem::parse(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

std::string message_of(const std::string& text) {
  try {
    (void)Problem::parse(text);
  } catch (const Error& e) {
    return e.what();
  }
  FAIL("expected an error");
  return {};
}

nlohmann::json without_timing(nlohmann::json j) {
  j.erase("timing_ms");
  return j;
}

const char* kFixtures[] = {"z2_sign_m2.json",       "z2_trivial_m2.json",   "z3_diag_m2.json",
                           "z2_swap_rokhlin.json",  "z2_mixed_gspace.json", "z3_free_gspace.json",
                           "hopf_group_s3.json",    "hopf_z2_sign_action.json", "two_loop_vertex.json",
                           "graph_with_sink.json",  "graph_z_window.json",  "s4_natural_gspace.json"};

}  // namespace

TEST_CASE("malformed input is a parse error") {
  CHECK(kind_of(read_fixture("malformed.json")) == ErrorKind::Parse);
  CHECK(kind_of("{") == ErrorKind::Parse);
}

TEST_CASE("schema errors name the offending location") {
  CHECK(kind_of("[]") == ErrorKind::Schema);
  CHECK(message_of("{}").find("/kind") != std::string::npos);
  CHECK(message_of(R"({"kind": "nope"})").find("unknown problem kind") != std::string::npos);
  const std::string extra = message_of(R"({"kind": "action", "algebra": [2], "group": "Z2", "action": "trivial", "bogus": 1})");
  CHECK(extra.find("/bogus") != std::string::npos);
  CHECK(extra.find("unknown field") != std::string::npos);
  const std::string dims = message_of(R"({"kind": "action", "algebra": [2, 0], "group": "Z2", "action": "trivial"})");
  CHECK(dims.find("/algebra/1") != std::string::npos);
  CHECK(kind_of(R"({"kind": "action", "algebra": [2], "group": "Z2"})") == ErrorKind::Schema);
  CHECK(kind_of(R"({"kind": "graph", "graph": "two_loop_vertex", "batch": 99})") == ErrorKind::Schema);
}

TEST_CASE("construction errors surface at parse time") {
  // diag(1, i) has order 4, not a Z2 representation
  const std::string bad = R"({"kind": "action", "algebra": [2], "group": "Z2",
    "action": {"inner_generator": [[[[1,0],[0,0]],[[0,0],[0,1]]]]}})";
  CHECK_THROWS_AS(Problem::parse(bad), Error);
  CHECK(kind_of(R"({"kind": "gspace", "group": "Z2", "points": 2, "permutations": [[0,1],[0,0]]})") !=
        ErrorKind::Parse);
}

TEST_CASE("canonical serialization round-trips") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    const Problem p = Problem::parse(read_fixture(name));
    const std::string canon = p.canonical_json();
    const Problem q = Problem::parse(canon);
    CHECK(q.canonical_json() == canon);
    CHECK(q.kind() == p.kind());
  }
}

TEST_CASE("reports are deterministic apart from timing") {
  const RunOptions opts;
  for (const char* name : {"z2_sign_m2.json", "z3_diag_m2.json", "z2_swap_rokhlin.json", "hopf_z2_sign_action.json"}) {
    const Problem p = Problem::parse(read_fixture(name));
    const Report a = run_analyze(p, opts), b = run_analyze(p, opts);
    CHECK(a.data.contains("timing_ms"));
    CHECK(without_timing(a.data) == without_timing(b.data));
  }
  const Problem g = Problem::parse(read_fixture("z2_mixed_gspace.json"));
  CHECK(without_timing(run_strata(g, opts).data) == without_timing(run_strata(g, opts).data));
  const Problem w = Problem::parse(read_fixture("two_loop_vertex.json"));
  CHECK(without_timing(run_graph_witness(w, opts, {}).data) == without_timing(run_graph_witness(w, opts, {}).data));
}

TEST_CASE("report verdicts on the fixtures") {
  const RunOptions opts;
  CHECK(run_analyze(Problem::parse(read_fixture("z2_sign_m2.json")), opts).text.rfind("saturated: true, index: 2.0, |G|: 2", 0) == 0);
  CHECK(run_analyze(Problem::parse(read_fixture("z2_trivial_m2.json")), opts).text.find("saturated: false") != std::string::npos);
  CHECK(run_analyze(Problem::parse(read_fixture("z3_diag_m2.json")), opts).text.rfind("saturated: false, index: 2.0, |G|: 3", 0) == 0);
  const Report strata = run_strata(Problem::parse(read_fixture("z2_mixed_gspace.json")), opts);
  CHECK(strata.text.find("index values: (2.0, 2.0, 1.0, 1.0)") != std::string::npos);
  CHECK(strata.text.find("free: false") != std::string::npos);
  CHECK(run_strata(Problem::parse(read_fixture("z3_free_gspace.json")), opts).text.find("free: true, saturated: true") != std::string::npos);
  try {
    (void)run_strata(Problem::parse(read_fixture("s4_natural_gspace.json")), opts);
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Capacity);
  }
  const Report witness = run_graph_witness(Problem::parse(read_fixture("two_loop_vertex.json")), opts, {});
  CHECK(witness.data["all_verified"] == true);
  CHECK_THROWS_AS(run_graph_witness(Problem::parse(read_fixture("graph_with_sink.json")), opts, {}), Error);
}

TEST_CASE("command-line options override the file") {
  const Problem p = Problem::parse(read_fixture("two_loop_vertex.json"));
  GraphQuery q;
  q.alpha = "e,f";
  q.beta = "f";
  q.n = -2;
  const Report r = run_graph_witness(p, {}, q);
  CHECK(r.data["all_verified"] == true);
  GraphQuery bad;
  bad.alpha = "e";
  CHECK_THROWS_AS(run_graph_witness(p, {}, bad), Error);
  RunOptions zero;
  zero.epsilon = 0.0;
  CHECK_THROWS_AS(run_analyze(Problem::parse(read_fixture("z2_sign_m2.json")), zero), Error);
}
