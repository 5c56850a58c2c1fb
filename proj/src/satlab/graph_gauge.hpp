#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace satlab {

struct Edge {
  int source = 0;
  int range = 0;
  std::string label;
};

/// A finite directed graph, or a finite window of a locally finite infinite
/// graph. Window vertices whose in- or out-edges were cut off are flagged, and
/// walks that need to cross such a vertex raise a Capacity error.
class Graph {
 public:
  Graph(std::vector<std::string> vertex_labels, std::vector<Edge> edges, std::string name = {});

  /// Marks a windowed presentation. truncated_in[v] means edges into v were
  /// dropped; truncated_out[v] likewise for edges out of v.
  void set_window(int radius, std::vector<bool> truncated_in, std::vector<bool> truncated_out);

  const std::string& name() const { return name_; }
  int vertex_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  const std::string& vertex_label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
  std::optional<int> find_vertex(const std::string& label) const;
  std::optional<int> find_edge(const std::string& label) const;

  /// Edge ids in increasing order.
  const std::vector<int>& out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& in_edges(int v) const { return in_[static_cast<std::size_t>(v)]; }

  bool windowed() const { return window_radius_ >= 0; }
  int window_radius() const { return window_radius_; }
  bool truncated_in(int v) const { return windowed() && truncated_in_[static_cast<std::size_t>(v)]; }
  bool truncated_out(int v) const { return windowed() && truncated_out_[static_cast<std::size_t>(v)]; }

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::string name_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  int window_radius_ = -1;
  std::vector<bool> truncated_in_;
  std::vector<bool> truncated_out_;
};

Graph single_loop();
Graph two_loop_vertex();
Graph isolated_vertex();
Graph cycle_graph(int n);
/// The graph Z (vertices k, edges k -> k+1) on the window |k| <= radius.
Graph graph_Z(int radius);
/// Random graph on `vertices` vertices with no sinks and no sources: a
/// Hamiltonian cycle through a random order plus `extra_edges` random edges.
Graph random_sink_source_free(int vertices, int extra_edges, std::uint64_t seed);
/// Complete binary tree of the given depth with a loop at the root and at every
/// leaf, so that it has no sinks and no sources.
Graph binary_tree_with_loops(int depth);

struct GraphReport {
  bool row_finite = true;
  bool locally_finite = true;
  std::vector<int> sinks;
  std::vector<int> sources;
  bool no_sinks() const { return sinks.empty(); }
  bool no_sources() const { return sources.empty(); }
};

/// Window boundary vertices are not reported as sinks or sources.
GraphReport validate_graph(const Graph& g);

/// A path e_1 ... e_n with r(e_i) = s(e_{i+1}); length 0 paths are vertices.
struct Path {
  int start = 0;  // s(path); for a vertex path, the vertex
  std::vector<int> edges;

  int length() const { return static_cast<int>(edges.size()); }
  bool operator==(const Path& o) const { return start == o.start && edges == o.edges; }
  bool operator<(const Path& o) const { return start != o.start ? start < o.start : edges < o.edges; }
};

Path vertex_path(int v);
int path_source(const Graph& g, const Path& p);
int path_range(const Graph& g, const Path& p);
/// Structural error unless the path is composable in g.
void check_path(const Graph& g, const Path& p);
/// p q, requires r(p) = s(q).
Path concat(const Graph& g, const Path& p, const Path& q);
std::string to_string(const Graph& g, const Path& p);

/// Paths of length n. With a range constraint the walk goes backward from the
/// range, with a source constraint forward from the source; either raises a
/// Capacity error naming the needed radius if it meets the window edge. An
/// unconstrained enumeration of a windowed graph lists the paths inside the
/// window.
std::vector<Path> paths_of_length(const Graph& g, int n, std::optional<int> source = std::nullopt,
                                  std::optional<int> range = std::nullopt);

/// z^degree s_alpha s_beta^*
struct PathMonomial {
  Path alpha;
  Path beta;
  int degree = 0;

  bool operator==(const PathMonomial& o) const {
    return alpha == o.alpha && beta == o.beta && degree == o.degree;
  }
  bool operator<(const PathMonomial& o) const;
};

/// Integer linear combination in normal form: sorted, merged, no zero terms.
struct Combination {
  std::vector<std::pair<long, PathMonomial>> terms;

  static Combination of(const PathMonomial& m) { return {{{1, m}}}; }
  bool is_zero() const { return terms.empty(); }
  bool operator==(const Combination& o) const { return terms == o.terms; }
  void normalize();
};

/// s_alpha s_beta^*, or the zero combination when r(alpha) != r(beta).
Combination make_monomial(const Graph& g, const Path& alpha, const Path& beta, int degree = 0);

/// Prefix rule on (beta, mu); no Cuntz-Krieger expansion is ever applied, so
/// equality decided here is sound but not complete for C*(E).
Combination reduce_product(const Graph& g, const PathMonomial& m1, const PathMonomial& m2);
Combination reduce_product(const Graph& g, const Combination& c1, const Combination& c2);
/// (z^d s_alpha s_beta^*)^* = z^{-d} s_beta s_alpha^*
PathMonomial adjoint(const PathMonomial& m);
Combination adjoint(const Combination& c);
/// gamma_z(s_alpha s_beta^*) = z^{|alpha| - |beta|} s_alpha s_beta^*
PathMonomial gauge_act(const PathMonomial& m);
std::string to_string(const Graph& g, const PathMonomial& m);
std::string to_string(const Graph& g, const Combination& c);

/// Size m of the matrix block M_m of the core at level n and vertex v.
int fixed_core_blocks(const Graph& g, int n, int v);

struct GaugeWitness {
  Path alpha;
  Path beta;
  int n = 0;
  bool adjoint_route = false;  // witness built for (beta, alpha, -n)
  int case_tag = 1;            // 1: l >= 0, 2: l < 0
  int l = 0;
  Path chosen;                 // mu in case 1, nu in case 2
  PathMonomial a;
  PathMonomial b;
  std::vector<std::string> transcript;
};

/// z^n s_alpha s_beta^* = a gamma_z(b) with (a, b) chosen by the constructive
/// case split on l = n - (|alpha| - |beta|). Negative n goes through the
/// adjoint of the witness for (beta, alpha, -n).
GaugeWitness gauge_witness(const Graph& g, const Path& alpha, const Path& beta, int n);

struct ReplayResult {
  bool ok = false;
  bool degree_ok = false;
  Combination product;
};

/// Recomputes a gamma_z(b) with reduce_product and compares with the target.
ReplayResult replay(const Graph& g, const GaugeWitness& w);

/// E x F with vertices (v, w) at index v * |F^0| + w and edges (e, f) at
/// index e * |F^1| + f.
Graph cartesian_product(const Graph& g1, const Graph& g2);
/// Ids of edges with s(e) = r(e).
std::vector<int> find_loops(const Graph& g);

}  // namespace satlab
