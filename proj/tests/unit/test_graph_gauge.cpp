#include <doctest.h>

#include <algorithm>
#include <optional>

#include "satlab/error.hpp"
#include "satlab/graph_gauge.hpp"
#include "support/oracles.hpp"

using namespace satlab;

namespace {

Path edges_path(const Graph& g, std::initializer_list<const char*> labels) {
  Path p;
  for (const char* l : labels) p.edges.push_back(*g.find_edge(l));
  p.start = g.edge(p.edges.front()).source;
  return p;
}

Path vertex(const Graph& g, const char* label) { return vertex_path(*g.find_vertex(label)); }

std::vector<Path> all_paths(const Graph& g, int max_len) {
  std::vector<Path> out;
  for (int k = 0; k <= max_len; ++k)
    for (const auto& p : paths_of_length(g, k)) out.push_back(p);
  return out;
}

PathMonomial random_monomial(const Graph& g, const std::vector<Path>& paths, oracle::Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
  std::uniform_int_distribution<int> deg(-2, 2);
  for (;;) {
    const Path& a = paths[pick(rng)];
    const Path& b = paths[pick(rng)];
    if (path_range(g, a) == path_range(g, b)) return {a, b, deg(rng)};
  }
}

std::vector<Graph> battery() {
  return {two_loop_vertex(), cycle_graph(3), graph_Z(12), binary_tree_with_loops(2), random_sink_source_free(6, 4, 7)};
}

}  // namespace

TEST_CASE("graph validation") {
  const GraphReport z = validate_graph(graph_Z(3));
  CHECK(z.no_sinks());
  CHECK(z.no_sources());
  CHECK(validate_graph(single_loop()).no_sinks());
  CHECK(validate_graph(single_loop()).no_sources());
  const GraphReport iso = validate_graph(isolated_vertex());
  CHECK_FALSE(iso.no_sinks());
  CHECK_FALSE(iso.no_sources());
  for (int seed = 0; seed < 10; ++seed) {
    const GraphReport r = validate_graph(random_sink_source_free(7, 5, static_cast<std::uint64_t>(seed)));
    CHECK(r.no_sinks());
    CHECK(r.no_sources());
  }
  CHECK_THROWS_AS(Graph({"a"}, {{0, 1, "e"}}), Error);
  CHECK_THROWS_AS(Graph({"a", "a"}, {}), Error);
}

TEST_CASE("path enumeration") {
  const Graph g = two_loop_vertex();
  CHECK(paths_of_length(g, 2).size() == 4);
  CHECK(paths_of_length(g, 0).size() == 1);
  const Graph z = graph_Z(5);
  const auto into0 = paths_of_length(z, 2, std::nullopt, *z.find_vertex("0"));
  REQUIRE(into0.size() == 1);
  CHECK(to_string(z, into0[0]) == "e-2 e-1");
  CHECK(paths_of_length(z, 0).size() == 11);
  try {
    (void)paths_of_length(z, 7, std::nullopt, *z.find_vertex("0"));
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Capacity);
    CHECK(std::string(e.what()).find("radius at least 7") != std::string::npos);
  }
}

TEST_CASE("property: enumeration matches exhaustive walks") {
  for (const Graph& g : {two_loop_vertex(), cycle_graph(4), binary_tree_with_loops(2), random_sink_source_free(5, 6, 3)}) {
    for (int n = 1; n <= 4; ++n) {
      const auto ps = paths_of_length(g, n);
      const auto ws = oracle::walks(g, n);
      REQUIRE(ps.size() == ws.size());
      std::vector<std::vector<int>> got;
      for (const auto& p : ps) got.push_back(p.edges);
      std::sort(got.begin(), got.end());
      CHECK(got == ws);
    }
  }
}

TEST_CASE("reduction rules") {
  const Graph g = two_loop_vertex();
  const Path v = vertex(g, "v");
  const Path e = edges_path(g, {"e"}), f = edges_path(g, {"f"}), ef = edges_path(g, {"e", "f"});
  // s_e^* s_{ef} = s_f
  Combination r = reduce_product(g, PathMonomial{v, e, 0}, PathMonomial{ef, v, 0});
  CHECK(r == Combination::of(PathMonomial{f, v, 0}));
  // s_e^* s_e = p_v and s_e p_v = s_e
  CHECK(reduce_product(g, PathMonomial{v, e, 0}, PathMonomial{e, v, 0}) == Combination::of(PathMonomial{v, v, 0}));
  CHECK(reduce_product(g, PathMonomial{e, v, 0}, PathMonomial{v, v, 0}) == Combination::of(PathMonomial{e, v, 0}));
  // distinct same-length words multiply to zero
  CHECK(reduce_product(g, PathMonomial{v, e, 0}, PathMonomial{f, v, 0}).is_zero());
  CHECK(make_monomial(cycle_graph(3), vertex_path(0), vertex_path(1)).is_zero());
}

TEST_CASE("gauge degrees") {
  const Graph g = two_loop_vertex();
  const Path v = vertex(g, "v");
  const Path e = edges_path(g, {"e"}), f = edges_path(g, {"f"});
  CHECK(gauge_act(PathMonomial{v, v, 0}).degree == 0);
  CHECK(gauge_act(PathMonomial{e, v, 0}).degree == 1);
  CHECK(gauge_act(PathMonomial{e, f, 0}).degree == 0);
}

TEST_CASE("property: reduction agrees with an independent prefix rule") {
  oracle::Rng rng(71);
  for (const Graph& g : {two_loop_vertex(), cycle_graph(3), binary_tree_with_loops(2), random_sink_source_free(5, 4, 9)}) {
    const auto paths = all_paths(g, 3);
    for (int t = 0; t < 300; ++t) {
      const PathMonomial x = random_monomial(g, paths, rng), y = random_monomial(g, paths, rng);
      const Combination got = reduce_product(g, x, y);
      const auto want = oracle::prefix_product(g, x, y);
      if (!want) {
        CHECK(got.is_zero());
      } else {
        CHECK(got == Combination::of(*want));
      }
    }
  }
}

TEST_CASE("property: reduction is associative and compatible with the involution") {
  oracle::Rng rng(72);
  for (const Graph& g : {two_loop_vertex(), cycle_graph(3), binary_tree_with_loops(2), random_sink_source_free(6, 4, 2)}) {
    const auto paths = all_paths(g, 3);
    for (int t = 0; t < 300; ++t) {
      const Combination a = Combination::of(random_monomial(g, paths, rng));
      const Combination b = Combination::of(random_monomial(g, paths, rng));
      const Combination c = Combination::of(random_monomial(g, paths, rng));
      CHECK(reduce_product(g, reduce_product(g, a, b), c) == reduce_product(g, a, reduce_product(g, b, c)));
      CHECK(adjoint(reduce_product(g, a, b)) == reduce_product(g, adjoint(b), adjoint(a)));
    }
  }
}

TEST_CASE("fixed core blocks") {
  const Graph g = two_loop_vertex();
  CHECK(fixed_core_blocks(g, 3, 0) == 8);
  CHECK(fixed_core_blocks(g, 0, 0) == 1);
  const Graph z = graph_Z(10);
  for (int v = 0; v < z.vertex_count(); ++v)
    for (int n = 0; n <= 3; ++n)
      if (std::abs(v - 10) + n <= 10 && v - n >= 0) CHECK(fixed_core_blocks(z, n, v) == 1);
  const Graph c = cycle_graph(5);
  for (int n = 0; n < 6; ++n) CHECK(fixed_core_blocks(c, n, 2) == 1);
}

TEST_CASE("gauge witnesses on the two-loop vertex") {
  const Graph g = two_loop_vertex();
  const Path v = vertex(g, "v");
  const Path e = edges_path(g, {"e"}), f = edges_path(g, {"f"}), ee = edges_path(g, {"e", "e"});

  const GaugeWitness w1 = gauge_witness(g, v, v, 1);
  CHECK(w1.case_tag == 1);
  CHECK(w1.l == 1);
  CHECK(w1.chosen == e);
  CHECK(w1.a == PathMonomial{v, e, 0});
  CHECK(w1.b == PathMonomial{e, v, 0});
  CHECK(replay(g, w1).ok);

  const GaugeWitness w0 = gauge_witness(g, e, f, 0);
  CHECK(w0.l == 0);
  CHECK(w0.chosen == v);
  CHECK(w0.a == PathMonomial{v, v, 0});
  CHECK(w0.b == PathMonomial{e, f, 0});

  const GaugeWitness w2 = gauge_witness(g, e, ee, 0);
  CHECK(w2.case_tag == 1);
  CHECK(w2.l == 1);
  CHECK(replay(g, w2).ok);

  const GaugeWitness neg = gauge_witness(g, e, v, -3);
  CHECK(neg.adjoint_route);
  CHECK(replay(g, neg).ok);
}

TEST_CASE("gauge witness on graph Z") {
  const Graph z = graph_Z(6);
  const Path zero = vertex(z, "0");
  const GaugeWitness w = gauge_witness(z, zero, zero, 2);
  CHECK(w.case_tag == 1);
  CHECK(to_string(z, w.chosen) == "e-2 e-1");
  CHECK(replay(z, w).ok);
  try {
    (void)gauge_witness(graph_Z(2), vertex(graph_Z(2), "0"), vertex(graph_Z(2), "0"), 5);
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Capacity);
    CHECK(std::string(e.what()).find("radius at least 5") != std::string::npos);
  }
}

TEST_CASE("witness preconditions") {
  const Graph sink({"a", "b"}, {{0, 0, "e"}, {0, 1, "f"}});
  try {
    (void)gauge_witness(sink, vertex_path(0), vertex_path(0), 1);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
    CHECK(std::string(e.what()).find("no sinks required") != std::string::npos);
  }
  const Graph source({"a", "b"}, {{0, 1, "f"}, {1, 1, "e"}});
  CHECK_THROWS_WITH_AS(gauge_witness(source, vertex_path(1), vertex_path(1), 1), doctest::Contains("no sources required"),
                       Error);
  const Graph c = cycle_graph(3);
  CHECK_THROWS_AS(gauge_witness(c, vertex_path(0), vertex_path(1), 0), Error);
}

TEST_CASE("property: witnesses replay for short targets on the graph battery") {
  for (const Graph& g : battery()) {
    std::vector<Path> paths;
    for (int k = 0; k <= 2; ++k)
      for (const auto& p : paths_of_length(g, k)) {
        if (g.windowed() && std::abs(std::stoi(g.vertex_label(p.start))) > 4) continue;
        paths.push_back(p);
      }
    int cases[3] = {0, 0, 0};
    for (const auto& a : paths)
      for (const auto& b : paths) {
        if (path_range(g, a) != path_range(g, b)) continue;
        for (int n = -2; n <= 2; ++n) {
          const GaugeWitness w = gauge_witness(g, a, b, n);
          const ReplayResult r = replay(g, w);
          CHECK(r.ok);
          CHECK(r.degree_ok);
          if (!w.adjoint_route) {
            CHECK(w.l == n - (a.length() - b.length()));
            CHECK(w.case_tag == (w.l >= 0 ? 1 : 2));
          }
          cases[w.case_tag]++;
        }
      }
    CHECK(cases[1] > 0);
    CHECK(cases[2] > 0);
  }
}

TEST_CASE("cartesian products") {
  const Graph loop = single_loop();
  const Graph zl = cartesian_product(graph_Z(4), loop);
  CHECK(find_loops(zl).empty());
  const Graph ll = cartesian_product(loop, loop);
  CHECK(ll.vertex_count() == 1);
  CHECK(find_loops(ll).size() == 1);
  const Graph a = two_loop_vertex(), b = cycle_graph(3);
  CHECK(cartesian_product(a, b).edge_count() == a.edge_count() * b.edge_count());
}
