#include "satlab/graph_gauge.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

#include "satlab/error.hpp"

namespace satlab {

Graph::Graph(std::vector<std::string> vertex_labels, std::vector<Edge> edges, std::string name)
    : labels_(std::move(vertex_labels)), edges_(std::move(edges)), name_(std::move(name)) {
  const int n = vertex_count();
  std::map<std::string, int> seen;
  for (int v = 0; v < n; ++v)
    if (!seen.emplace(labels_[static_cast<std::size_t>(v)], v).second)
      fail(ErrorKind::Construction, "duplicate vertex label '" + labels_[static_cast<std::size_t>(v)] + "'");
  seen.clear();
  out_.assign(static_cast<std::size_t>(n), {});
  in_.assign(static_cast<std::size_t>(n), {});
  for (int id = 0; id < edge_count(); ++id) {
    const Edge& e = edges_[static_cast<std::size_t>(id)];
    if (e.source < 0 || e.source >= n || e.range < 0 || e.range >= n)
      fail(ErrorKind::Construction, "edge '" + e.label + "' has an endpoint outside the vertex set");
    if (!seen.emplace(e.label, id).second) fail(ErrorKind::Construction, "duplicate edge label '" + e.label + "'");
    out_[static_cast<std::size_t>(e.source)].push_back(id);
    in_[static_cast<std::size_t>(e.range)].push_back(id);
  }
}

void Graph::set_window(int radius, std::vector<bool> truncated_in, std::vector<bool> truncated_out) {
  if (radius < 0 || static_cast<int>(truncated_in.size()) != vertex_count() ||
      static_cast<int>(truncated_out.size()) != vertex_count())
    fail(ErrorKind::Construction, "malformed graph window");
  window_radius_ = radius;
  truncated_in_ = std::move(truncated_in);
  truncated_out_ = std::move(truncated_out);
}

std::optional<int> Graph::find_vertex(const std::string& label) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (labels_[static_cast<std::size_t>(v)] == label) return v;
  return std::nullopt;
}

std::optional<int> Graph::find_edge(const std::string& label) const {
  for (int e = 0; e < edge_count(); ++e)
    if (edges_[static_cast<std::size_t>(e)].label == label) return e;
  return std::nullopt;
}

Graph single_loop() { return Graph({"v"}, {{0, 0, "e"}}, "single_loop"); }

Graph two_loop_vertex() { return Graph({"v"}, {{0, 0, "e"}, {0, 0, "f"}}, "two_loop_vertex"); }

Graph isolated_vertex() { return Graph({"v"}, {}, "isolated_vertex"); }

Graph cycle_graph(int n) {
  if (n < 1) fail(ErrorKind::Construction, "cycle needs at least one vertex");
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    labels.push_back("v" + std::to_string(i));
    edges.push_back({i, (i + 1) % n, "e" + std::to_string(i)});
  }
  return Graph(std::move(labels), std::move(edges), "cycle:" + std::to_string(n));
}

Graph graph_Z(int radius) {
  if (radius < 0) fail(ErrorKind::Construction, "graph Z window radius must be nonnegative");
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (int k = -radius; k <= radius; ++k) labels.push_back(std::to_string(k));
  for (int k = -radius; k < radius; ++k) edges.push_back({k + radius, k + radius + 1, "e" + std::to_string(k)});
  Graph g(std::move(labels), std::move(edges), "graph_Z:" + std::to_string(radius));
  const auto n = static_cast<std::size_t>(2 * radius + 1);
  std::vector<bool> tin(n, false), tout(n, false);
  tin.front() = true;
  tout.back() = true;
  g.set_window(radius, std::move(tin), std::move(tout));
  return g;
}

Graph random_sink_source_free(int vertices, int extra_edges, std::uint64_t seed) {
  if (vertices < 1 || extra_edges < 0) fail(ErrorKind::Construction, "invalid random graph parameters");
  std::mt19937_64 rng(seed);
  std::vector<int> order(static_cast<std::size_t>(vertices));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::string> labels;
  for (int v = 0; v < vertices; ++v) labels.push_back("v" + std::to_string(v));
  std::vector<Edge> edges;
  for (int i = 0; i < vertices; ++i)
    edges.push_back({order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>((i + 1) % vertices)], ""});
  std::uniform_int_distribution<int> pick(0, vertices - 1);
  for (int i = 0; i < extra_edges; ++i) edges.push_back({pick(rng), pick(rng), ""});
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].label = "e" + std::to_string(i);
  return Graph(std::move(labels), std::move(edges), "random:" + std::to_string(vertices) + ":" + std::to_string(seed));
}

Graph binary_tree_with_loops(int depth) {
  if (depth < 0) fail(ErrorKind::Construction, "tree depth must be nonnegative");
  const int n = (1 << (depth + 1)) - 1;
  std::vector<std::string> labels;
  for (int v = 0; v < n; ++v) labels.push_back("t" + std::to_string(v));
  std::vector<Edge> edges;
  edges.push_back({0, 0, "root_loop"});
  for (int v = 0; v < n; ++v) {
    const int left = 2 * v + 1;
    if (left < n) {
      edges.push_back({v, left, "c" + std::to_string(left)});
      edges.push_back({v, left + 1, "c" + std::to_string(left + 1)});
    } else if (v != 0) {
      edges.push_back({v, v, "loop" + std::to_string(v)});
    }
  }
  return Graph(std::move(labels), std::move(edges), "binary_tree:" + std::to_string(depth));
}

GraphReport validate_graph(const Graph& g) {
  GraphReport r;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.out_edges(v).empty() && !g.truncated_out(v)) r.sinks.push_back(v);
    if (g.in_edges(v).empty() && !g.truncated_in(v)) r.sources.push_back(v);
  }
  return r;
}

Path vertex_path(int v) { return Path{v, {}}; }

int path_source(const Graph& g, const Path& p) { return p.edges.empty() ? p.start : g.edge(p.edges.front()).source; }

int path_range(const Graph& g, const Path& p) { return p.edges.empty() ? p.start : g.edge(p.edges.back()).range; }

void check_path(const Graph& g, const Path& p) {
  if (p.start < 0 || p.start >= g.vertex_count()) fail(ErrorKind::Structural, "path starts outside the graph");
  int at = p.start;
  for (int e : p.edges) {
    if (e < 0 || e >= g.edge_count()) fail(ErrorKind::Structural, "path uses an edge outside the graph");
    if (g.edge(e).source != at) fail(ErrorKind::Structural, "path edges are not composable");
    at = g.edge(e).range;
  }
}

Path concat(const Graph& g, const Path& p, const Path& q) {
  if (path_range(g, p) != q.start) fail(ErrorKind::Structural, "paths are not composable");
  Path out = p;
  out.edges.insert(out.edges.end(), q.edges.begin(), q.edges.end());
  return out;
}

std::string to_string(const Graph& g, const Path& p) {
  if (p.edges.empty()) return g.vertex_label(p.start);
  std::string s;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += ' ';
    s += g.edge(p.edges[i]).label;
  }
  return s;
}

namespace {

[[noreturn]] void window_exhausted(const Graph& g, int remaining) {
  fail(ErrorKind::Capacity, "path search leaves the window of " + g.name() + "; a window of radius at least " +
                                std::to_string(g.window_radius() + remaining) + " is required");
}

// Backward walk of the given length ending at v, smallest edge id first.
Path backward_walk(const Graph& g, int v, int length) {
  std::vector<int> rev;
  int at = v;
  for (int step = 0; step < length; ++step) {
    if (g.truncated_in(at)) window_exhausted(g, length - step);
    const auto& in = g.in_edges(at);
    if (in.empty()) fail(ErrorKind::Precondition, "vertex " + g.vertex_label(at) + " is a source; no sources required");
    rev.push_back(in.front());
    at = g.edge(in.front()).source;
  }
  std::reverse(rev.begin(), rev.end());
  return Path{at, std::move(rev)};
}

bool is_prefix(const Path& p, const Path& q) {
  return p.start == q.start && p.edges.size() <= q.edges.size() &&
         std::equal(p.edges.begin(), p.edges.end(), q.edges.begin());
}

Path remainder(const Graph& g, const Path& prefix, const Path& whole) {
  return Path{path_range(g, prefix), std::vector<int>(whole.edges.begin() + static_cast<long>(prefix.edges.size()),
                                                      whole.edges.end())};
}

}  // namespace

std::vector<Path> paths_of_length(const Graph& g, int n, std::optional<int> source, std::optional<int> range) {
  if (n < 0) fail(ErrorKind::Precondition, "path length must be nonnegative");
  std::vector<Path> out;
  if (range) {
    std::vector<int> rev;
    std::function<void(int, int)> back = [&](int at, int remaining) {
      if (remaining == 0) {
        Path p{at, std::vector<int>(rev.rbegin(), rev.rend())};
        if (!source || *source == at) out.push_back(std::move(p));
        return;
      }
      if (g.truncated_in(at)) window_exhausted(g, remaining);
      for (int e : g.in_edges(at)) {
        rev.push_back(e);
        back(g.edge(e).source, remaining - 1);
        rev.pop_back();
      }
    };
    back(*range, n);
  } else {
    std::vector<int> fwd;
    std::function<void(int, int, int)> walk = [&](int start, int at, int remaining) {
      if (remaining == 0) {
        out.push_back(Path{start, fwd});
        return;
      }
      if (g.truncated_out(at)) {
        if (source) window_exhausted(g, remaining);
        return;
      }
      for (int e : g.out_edges(at)) {
        fwd.push_back(e);
        walk(start, g.edge(e).range, remaining - 1);
        fwd.pop_back();
      }
    };
    if (source) {
      walk(*source, *source, n);
    } else {
      for (int v = 0; v < g.vertex_count(); ++v) walk(v, v, n);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool PathMonomial::operator<(const PathMonomial& o) const {
  return std::tie(alpha, beta, degree) < std::tie(o.alpha, o.beta, o.degree);
}

void Combination::normalize() {
  std::map<PathMonomial, long> acc;
  for (const auto& [c, m] : terms) acc[m] += c;
  terms.clear();
  for (const auto& [m, c] : acc)
    if (c != 0) terms.emplace_back(c, m);
}

Combination make_monomial(const Graph& g, const Path& alpha, const Path& beta, int degree) {
  check_path(g, alpha);
  check_path(g, beta);
  if (path_range(g, alpha) != path_range(g, beta)) return {};
  return Combination::of(PathMonomial{alpha, beta, degree});
}

Combination reduce_product(const Graph& g, const PathMonomial& m1, const PathMonomial& m2) {
  for (const Path* p : {&m1.alpha, &m1.beta, &m2.alpha, &m2.beta}) check_path(g, *p);
  const Path& beta = m1.beta;
  const Path& mu = m2.alpha;
  const int degree = m1.degree + m2.degree;
  if (is_prefix(beta, mu)) return make_monomial(g, concat(g, m1.alpha, remainder(g, beta, mu)), m2.beta, degree);
  if (is_prefix(mu, beta)) return make_monomial(g, m1.alpha, concat(g, m2.beta, remainder(g, mu, beta)), degree);
  return {};
}

Combination reduce_product(const Graph& g, const Combination& c1, const Combination& c2) {
  Combination out;
  for (const auto& [a, m1] : c1.terms)
    for (const auto& [b, m2] : c2.terms)
      for (const auto& [c, m] : reduce_product(g, m1, m2).terms) out.terms.emplace_back(a * b * c, m);
  out.normalize();
  return out;
}

PathMonomial adjoint(const PathMonomial& m) { return PathMonomial{m.beta, m.alpha, -m.degree}; }

Combination adjoint(const Combination& c) {
  Combination out;
  for (const auto& [k, m] : c.terms) out.terms.emplace_back(k, adjoint(m));
  out.normalize();
  return out;
}

PathMonomial gauge_act(const PathMonomial& m) {
  PathMonomial out = m;
  out.degree += m.alpha.length() - m.beta.length();
  return out;
}

std::string to_string(const Graph& g, const PathMonomial& m) {
  std::string s;
  if (m.degree != 0) s += "z^" + std::to_string(m.degree) + " ";
  const bool av = m.alpha.edges.empty();
  const bool bv = m.beta.edges.empty();
  if (av && bv) return s + "p_{" + g.vertex_label(m.alpha.start) + "}";
  if (!av) s += "s_{" + to_string(g, m.alpha) + "}";
  if (!av && !bv) s += " ";
  if (!bv) s += "s_{" + to_string(g, m.beta) + "}^*";
  return s;
}

std::string to_string(const Graph& g, const Combination& c) {
  if (c.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    if (i) s += " + ";
    if (c.terms[i].first != 1) s += std::to_string(c.terms[i].first) + " ";
    s += to_string(g, c.terms[i].second);
  }
  return s;
}

int fixed_core_blocks(const Graph& g, int n, int v) {
  if (v < 0 || v >= g.vertex_count()) fail(ErrorKind::Precondition, "vertex outside the graph");
  return static_cast<int>(paths_of_length(g, n, std::nullopt, v).size());
}

GaugeWitness gauge_witness(const Graph& g, const Path& alpha, const Path& beta, int n) {
  check_path(g, alpha);
  check_path(g, beta);
  if (path_range(g, alpha) != path_range(g, beta))
    fail(ErrorKind::Precondition, "target requires r(alpha) = r(beta)");
  const GraphReport report = validate_graph(g);
  if (!report.no_sinks())
    fail(ErrorKind::Precondition, "graph has sink " + g.vertex_label(report.sinks.front()) + "; no sinks required");
  if (!report.no_sources())
    fail(ErrorKind::Precondition, "graph has source " + g.vertex_label(report.sources.front()) + "; no sources required");

  const PathMonomial target{alpha, beta, n};
  if (n < 0) {
    GaugeWitness w = gauge_witness(g, beta, alpha, -n);
    w.alpha = alpha;
    w.beta = beta;
    w.n = n;
    w.adjoint_route = true;
    w.transcript.push_back("adjoint: (" + to_string(g, PathMonomial{beta, alpha, -n}) + ")^* = " + to_string(g, target));
    return w;
  }

  GaugeWitness w;
  w.alpha = alpha;
  w.beta = beta;
  w.n = n;
  w.l = n - (alpha.length() - beta.length());
  w.transcript.push_back("l = n - (|alpha| - |beta|) = " + std::to_string(n) + " - (" +
                         std::to_string(alpha.length()) + " - " + std::to_string(beta.length()) + ") = " +
                         std::to_string(w.l));
  if (w.l >= 0) {
    w.case_tag = 1;
    w.chosen = backward_walk(g, path_source(g, alpha), w.l);
    w.a = PathMonomial{vertex_path(path_range(g, w.chosen)), w.chosen, 0};
    w.b = PathMonomial{concat(g, w.chosen, alpha), beta, 0};
    w.transcript.push_back("case (i): mu = " + to_string(g, w.chosen) + ", |mu| = l, r(mu) = s(alpha)");
  } else {
    w.case_tag = 2;
    w.chosen = backward_walk(g, path_range(g, alpha), beta.length() + n);
    w.a = PathMonomial{alpha, w.chosen, 0};
    w.b = PathMonomial{w.chosen, beta, 0};
    w.transcript.push_back("case (ii): nu = " + to_string(g, w.chosen) + ", |nu| = |beta| + n, r(nu) = r(alpha)");
  }
  const PathMonomial gb = gauge_act(w.b);
  w.transcript.push_back("a = " + to_string(g, w.a) + ", b = " + to_string(g, w.b));
  w.transcript.push_back("gamma_z(b) = " + to_string(g, gb));
  w.transcript.push_back("a gamma_z(b) = " + to_string(g, reduce_product(g, w.a, gb)));
  return w;
}

ReplayResult replay(const Graph& g, const GaugeWitness& w) {
  ReplayResult r;
  const Path& alpha = w.adjoint_route ? w.beta : w.alpha;
  const Path& beta = w.adjoint_route ? w.alpha : w.beta;
  const int n = w.adjoint_route ? -w.n : w.n;
  if (w.case_tag == 1)
    r.degree_ok = w.l >= 0 && w.l + alpha.length() - beta.length() == n && w.chosen.length() == w.l;
  else
    r.degree_ok = w.l < 0 && w.chosen.length() - beta.length() == n;

  r.product = reduce_product(g, Combination::of(w.a), Combination::of(gauge_act(w.b)));
  if (w.adjoint_route) r.product = adjoint(r.product);
  r.ok = r.degree_ok && r.product == Combination::of(PathMonomial{w.alpha, w.beta, w.n});
  return r;
}

Graph cartesian_product(const Graph& g1, const Graph& g2) {
  const int n2 = g2.vertex_count();
  std::vector<std::string> labels;
  for (int v = 0; v < g1.vertex_count(); ++v)
    for (int u = 0; u < n2; ++u) labels.push_back("(" + g1.vertex_label(v) + "," + g2.vertex_label(u) + ")");
  std::vector<Edge> edges;
  for (const auto& e : g1.edges())
    for (const auto& f : g2.edges())
      edges.push_back({e.source * n2 + f.source, e.range * n2 + f.range, "(" + e.label + "," + f.label + ")"});
  Graph out(std::move(labels), std::move(edges), g1.name() + " x " + g2.name());
  if (g1.windowed() || g2.windowed()) {
    std::vector<bool> tin, tout;
    for (int v = 0; v < g1.vertex_count(); ++v)
      for (int u = 0; u < n2; ++u) {
        tin.push_back(g1.truncated_in(v) || g2.truncated_in(u));
        tout.push_back(g1.truncated_out(v) || g2.truncated_out(u));
      }
    out.set_window(std::max(g1.window_radius(), g2.window_radius()), std::move(tin), std::move(tout));
  }
  return out;
}

std::vector<int> find_loops(const Graph& g) {
  std::vector<int> out;
  for (int e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).source == g.edge(e).range) out.push_back(e);
  return out;
}

}  // namespace satlab
