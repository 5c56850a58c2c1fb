#include "satlab/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "satlab/error.hpp"
#include "satlab/problem_build.hpp"

namespace satlab {

namespace build {

void schema_error(const std::string& where, const std::string& what) {
  fail(ErrorKind::Schema, (where.empty() ? std::string("/") : where) + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  for (const auto& item : obj.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
    if (!ok) schema_error(where + "/" + item.key(), "unknown field");
  }
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) schema_error(where + "/" + key, "missing required field");
  return obj.at(key);
}

namespace {

int integer(const json& j, const std::string& where, int lo = std::numeric_limits<int>::min()) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > std::numeric_limits<int>::max()) schema_error(where, "integer out of range");
  return static_cast<int>(v);
}

const json& array(const json& j, const std::string& where, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) schema_error(where, "expected an array");
  if (size && j.size() != *size)
    schema_error(where, "expected " + std::to_string(*size) + " entries, found " + std::to_string(j.size()));
  return j;
}

std::vector<int> int_list(const json& j, const std::string& where) {
  array(j, where);
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], where + "/" + std::to_string(i)));
  return out;
}

std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

}  // namespace

cplx complex_number(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    schema_error(where, "expected a complex number [re, im]");
  const double re = j[0].get<double>(), im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) schema_error(where, "complex number is not finite");
  return {re, im};
}

Matrix matrix(const json& j, const std::string& where, int rows, int cols) {
  array(j, where, static_cast<std::size_t>(rows));
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const std::string rw = at(where, static_cast<std::size_t>(r));
    array(j[static_cast<std::size_t>(r)], rw, static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c)
      m(r, c) = complex_number(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], at(rw, static_cast<std::size_t>(c)));
  }
  return m;
}

StarAlgebra algebra(const json& j, const std::string& where) {
  const auto dims = int_list(j, where);
  if (dims.empty()) schema_error(where, "an algebra needs at least one block");
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (dims[i] < 1) schema_error(at(where, i), "block dimension must be positive");
  return StarAlgebra(dims);
}

AlgebraElement element(const StarAlgebra& alg, const json& j, const std::string& where) {
  array(j, where, static_cast<std::size_t>(alg.block_count()));
  std::vector<Matrix> blocks;
  for (int b = 0; b < alg.block_count(); ++b)
    blocks.push_back(matrix(j[static_cast<std::size_t>(b)], at(where, static_cast<std::size_t>(b)), alg.block_dim(b),
                            alg.block_dim(b)));
  return AlgebraElement(alg, std::move(blocks));
}

FiniteGroup group(const json& j, const std::string& where) {
  if (j.is_string()) return FiniteGroup::named(j.get<std::string>());
  only_keys(j, where, {"name", "table"});
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) schema_error(where + "/name", "expected a string");
    name = j["name"].get<std::string>();
  }
  const json& t = array(need(j, "table", where), where + "/table");
  std::vector<std::vector<int>> table;
  for (std::size_t i = 0; i < t.size(); ++i) table.push_back(int_list(t[i], at(where + "/table", i)));
  return FiniteGroup(std::move(table), name);
}

std::vector<AlgebraElement> element_family(const StarAlgebra& alg, const json& j, const std::string& where,
                                           std::size_t expected) {
  array(j, where, expected);
  std::vector<AlgebraElement> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(element(alg, j[i], at(where, i)));
  return out;
}

GroupAction action(const StarAlgebra& alg, const FiniteGroup& g, const json& j, const std::string& where) {
  const auto order = static_cast<std::size_t>(g.order());
  if (j.is_string()) {
    if (j.get<std::string>() != "trivial") schema_error(where, "expected \"trivial\" or an action object");
    return trivial_action(alg, g);
  }
  only_keys(j, where, {"inner", "inner_generator", "automorphisms", "maps", "permutations"});
  if (j.size() != 1) schema_error(where, "exactly one action form is required");
  if (j.contains("inner")) return make_inner_action(alg, g, element_family(alg, j["inner"], where + "/inner", order));
  if (j.contains("inner_generator")) {
    const AlgebraElement u = element(alg, j["inner_generator"], where + "/inner_generator");
    std::vector<std::optional<AlgebraElement>> us(order);
    int h = g.identity();
    AlgebraElement power = alg.one();
    for (std::size_t m = 0; m < order; ++m) {
      us[static_cast<std::size_t>(h)] = power;
      h = g.mul(h, std::min(1, g.order() - 1));
      power = power * u;
    }
    std::vector<AlgebraElement> list;
    for (std::size_t k = 0; k < order; ++k) {
      if (!us[k]) schema_error(where + "/inner_generator", "group element 1 does not generate the group");
      list.push_back(*us[k]);
    }
    return make_inner_action(alg, g, list);
  }
  if (j.contains("automorphisms")) {
    const std::string w = where + "/automorphisms";
    array(j["automorphisms"], w, order);
    std::vector<Matrix> maps;
    for (std::size_t i = 0; i < order; ++i) {
      const json& a = j["automorphisms"][i];
      only_keys(a, at(w, i), {"block_perm", "unitary"});
      const auto perm = int_list(need(a, "block_perm", at(w, i)), at(w, i) + "/block_perm");
      const AlgebraElement u = a.contains("unitary") ? element(alg, a["unitary"], at(w, i) + "/unitary") : alg.one();
      maps.push_back(automorphism_matrix(alg, perm, u));
    }
    return GroupAction(g, alg, std::move(maps));
  }
  if (j.contains("maps")) {
    const std::string w = where + "/maps";
    array(j["maps"], w, order);
    std::vector<Matrix> maps;
    for (std::size_t i = 0; i < order; ++i)
      maps.push_back(matrix(j["maps"][i], at(w, i), alg.dimension(), alg.dimension()));
    return GroupAction(g, alg, std::move(maps));
  }
  const std::string w = where + "/permutations";
  for (int d : alg.block_dims())
    if (d != 1) schema_error(w, "permutation actions need a commutative algebra (all blocks 1)");
  array(j["permutations"], w, order);
  std::vector<std::vector<int>> perms;
  for (std::size_t i = 0; i < order; ++i) perms.push_back(int_list(j["permutations"][i], at(w, i)));
  return make_permutation_action(alg.block_count(), g, perms);
}

WitnessFamily witness(const GroupAction& a, const json& j, const std::string& where) {
  array(j, where);
  WitnessFamily f;
  for (std::size_t i = 0; i < j.size(); ++i)
    f.members.push_back(element_family(a.algebra(), j[i], at(where, i), static_cast<std::size_t>(a.group().order())));
  return f;
}

FiniteGSpace gspace(const json& doc) {
  only_keys(doc, "", {"kind", "group", "points", "permutations"});
  FiniteGroup g = group(need(doc, "group", ""), "/group");
  const int points = integer(need(doc, "points", ""), "/points", 1);
  const json& p = need(doc, "permutations", "");
  std::vector<std::vector<int>> perms;
  const auto order = static_cast<std::size_t>(g.order());
  if (p.is_string()) {
    const std::string mode = p.get<std::string>();
    if (mode == "trivial") {
      std::vector<int> id(static_cast<std::size_t>(points));
      std::iota(id.begin(), id.end(), 0);
      perms.assign(order, id);
    } else if (mode == "regular") {
      if (points != g.order()) schema_error("/points", "the regular action needs |X| = |G|");
      for (int a = 0; a < g.order(); ++a) {
        std::vector<int> row;
        for (int x = 0; x < points; ++x) row.push_back(g.mul(a, x));
        perms.push_back(std::move(row));
      }
    } else if (mode == "natural") {
      // S_n elements are the lexicographically ordered permutations of n points
      std::vector<int> q(static_cast<std::size_t>(points));
      std::iota(q.begin(), q.end(), 0);
      do perms.push_back(q);
      while (std::next_permutation(q.begin(), q.end()));
      if (perms.size() != order || doc["group"] != json("S" + std::to_string(points)))
        schema_error("/permutations", "the natural action needs group \"S<points>\"");
    } else {
      schema_error("/permutations", "expected \"trivial\", \"regular\", \"natural\" or a list of permutations");
    }
  } else {
    array(p, "/permutations", order);
    for (std::size_t i = 0; i < order; ++i) perms.push_back(int_list(p[i], at("/permutations", i)));
  }
  return FiniteGSpace(std::move(g), points, std::move(perms));
}

HopfAlgebra hopf(const json& j, const std::string& where) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto colon = s.find(':');
    if (colon == std::string::npos) schema_error(where, "expected \"group:<G>\" or \"dual:<G>\"");
    const std::string head = s.substr(0, colon);
    const FiniteGroup g = FiniteGroup::named(s.substr(colon + 1));
    if (head == "group") return group_hopf(g);
    if (head == "dual") return dual_function_hopf(g);
    schema_error(where, "expected \"group:<G>\" or \"dual:<G>\"");
  }
  only_keys(j, where, {"ambient", "basis", "comultiplication", "counit", "antipode", "haar", "name"});
  const StarAlgebra amb = algebra(need(j, "ambient", where), where + "/ambient");
  const json& bj = array(need(j, "basis", where), where + "/basis");
  if (bj.empty()) schema_error(where + "/basis", "basis must be nonempty");
  auto basis = element_family(amb, bj, where + "/basis", bj.size());
  const int d = static_cast<int>(basis.size());
  Matrix delta = matrix(need(j, "comultiplication", where), where + "/comultiplication", d * d, d);
  Matrix counit = matrix(json::array({need(j, "counit", where)}), where + "/counit", 1, d);
  Matrix antipode = matrix(need(j, "antipode", where), where + "/antipode", d, d);
  std::optional<Eigen::RowVectorXcd> haar;
  if (j.contains("haar")) haar = matrix(json::array({j["haar"]}), where + "/haar", 1, d).row(0);
  std::string name = "user";
  if (j.contains("name")) {
    if (!j["name"].is_string()) schema_error(where + "/name", "expected a string");
    name = j["name"].get<std::string>();
  }
  return HopfAlgebra::from_structure(BasedAlgebra(amb, std::move(basis)), std::move(delta), counit.row(0),
                                     std::move(antipode), std::move(haar), name);
}

std::optional<HopfAction> hopf_action(const json& doc) {
  only_keys(doc, "", {"kind", "hopf", "algebra", "action"});
  const json& hj = need(doc, "hopf", "");
  HopfAlgebra h = hopf(hj, "/hopf");
  if (!doc.contains("action")) {
    if (doc.contains("algebra")) schema_error("/algebra", "an algebra without an action");
    return std::nullopt;
  }
  const StarAlgebra alg = algebra(need(doc, "algebra", ""), "/algebra");
  const json& aj = doc["action"];
  if (aj.is_string() && aj.get<std::string>() == "trivial") return trivial_hopf_action(h, alg);
  if (aj.is_object() && aj.contains("operators")) {
    only_keys(aj, "/action", {"operators"});
    const std::string w = "/action/operators";
    array(aj["operators"], w, static_cast<std::size_t>(h.dimension()));
    std::vector<Matrix> ops;
    for (std::size_t i = 0; i < aj["operators"].size(); ++i)
      ops.push_back(matrix(aj["operators"][i], at(w, i), alg.dimension(), alg.dimension()));
    return HopfAction(std::move(h), alg, std::move(ops));
  }
  const std::string hs = hj.is_string() ? hj.get<std::string>() : "";
  if (hs.rfind("group:", 0) != 0)
    schema_error("/action", "group-action forms need a \"group:<G>\" Hopf algebra; use \"operators\" otherwise");
  const FiniteGroup g = FiniteGroup::named(hs.substr(6));
  return hopf_action_from_group_action(action(alg, g, aj, "/action"));
}

Graph graph(const json& j, const std::string& where) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    auto num = [&](std::size_t i) {
      try {
        std::size_t used = 0;
        const long v = std::stol(parts.at(i), &used);
        if (used != parts[i].size() || v < 0 || v > 1000000) throw std::out_of_range("");
        return static_cast<int>(v);
      } catch (const std::exception&) {
        schema_error(where, "malformed graph name '" + s + "'");
      }
    };
    const std::string& head = parts.empty() ? s : parts.front();
    if (parts.size() == 1 && head == "two_loop_vertex") return two_loop_vertex();
    if (parts.size() == 1 && head == "single_loop") return single_loop();
    if (parts.size() == 1 && head == "isolated_vertex") return isolated_vertex();
    if (parts.size() == 2 && head == "cycle") return cycle_graph(num(1));
    if (parts.size() == 2 && head == "graph_Z") return graph_Z(num(1));
    if (parts.size() == 2 && head == "binary_tree") return binary_tree_with_loops(num(1));
    if (parts.size() == 4 && head == "random")
      return random_sink_source_free(num(1), num(2), static_cast<std::uint64_t>(num(3)));
    schema_error(where, "unknown graph name '" + s + "'");
  }
  only_keys(j, where, {"vertices", "edges", "name"});
  const json& vj = array(need(j, "vertices", where), where + "/vertices");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < vj.size(); ++i) {
    if (!vj[i].is_string()) schema_error(at(where + "/vertices", i), "expected a vertex label");
    labels.push_back(vj[i].get<std::string>());
  }
  auto vertex_of = [&](const json& x, const std::string& w) {
    if (!x.is_string()) schema_error(w, "expected a vertex label");
    const auto it = std::find(labels.begin(), labels.end(), x.get<std::string>());
    if (it == labels.end()) schema_error(w, "unknown vertex '" + x.get<std::string>() + "'");
    return static_cast<int>(it - labels.begin());
  };
  const json& ej = array(need(j, "edges", where), where + "/edges");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < ej.size(); ++i) {
    const std::string w = at(where + "/edges", i);
    only_keys(ej[i], w, {"label", "source", "range"});
    const json& lj = need(ej[i], "label", w);
    if (!lj.is_string()) schema_error(w + "/label", "expected a string");
    edges.push_back({vertex_of(need(ej[i], "source", w), w + "/source"), vertex_of(need(ej[i], "range", w), w + "/range"),
                     lj.get<std::string>()});
  }
  std::string name = "user";
  if (j.contains("name")) {
    if (!j["name"].is_string()) schema_error(where + "/name", "expected a string");
    name = j["name"].get<std::string>();
  }
  return Graph(std::move(labels), std::move(edges), name);
}

std::optional<int> named_window(const json& j) {
  if (!j.is_string()) return std::nullopt;
  const std::string s = j.get<std::string>();
  if (s.rfind("graph_Z:", 0) != 0) return std::nullopt;
  return std::stoi(s.substr(8));
}

Path path(const Graph& g, const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto v = g.find_vertex(j.get<std::string>());
    if (!v) schema_error(where, "unknown vertex '" + j.get<std::string>() + "'");
    return vertex_path(*v);
  }
  array(j, where);
  if (j.empty()) schema_error(where, "a path needs at least one edge; use a vertex label for length 0");
  Path p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema_error(at(where, i), "expected an edge label");
    const auto e = g.find_edge(j[i].get<std::string>());
    if (!e) schema_error(at(where, i), "unknown edge '" + j[i].get<std::string>() + "'");
    p.edges.push_back(*e);
  }
  p.start = g.edge(p.edges.front()).source;
  try {
    check_path(g, p);
  } catch (const Error&) {
    schema_error(where, "edges are not composable");
  }
  return p;
}

Path path_from_text(const Graph& g, const std::string& text) {
  if (g.find_vertex(text)) return vertex_path(*g.find_vertex(text));
  json labels = json::array();
  std::string cur;
  for (char c : text + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) labels.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return path(g, labels, "path '" + text + "'");
}

Path remap(const Graph& from, const Graph& to, const Path& p) {
  const auto v = to.find_vertex(from.vertex_label(p.start));
  if (!v) fail(ErrorKind::Internal, "vertex missing from the wider presentation");
  Path out{*v, {}};
  for (int e : p.edges) {
    const auto f = to.find_edge(from.edge(e).label);
    if (!f) fail(ErrorKind::Internal, "edge missing from the wider presentation");
    out.edges.push_back(*f);
  }
  return out;
}

json to_json(cplx z) {
  auto chop = [](double x) { return std::abs(x) < 1e-13 ? 0.0 : x; };
  return json::array({chop(z.real()), chop(z.imag())});
}

json to_json(const AlgebraElement& x) {
  json out = json::array();
  for (const auto& b : x.blocks()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < b.cols(); ++c) row.push_back(to_json(b(r, c)));
      rows.push_back(std::move(row));
    }
    out.push_back(std::move(rows));
  }
  return out;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

}  // namespace build

Problem Problem::parse(std::string_view text) {
  using build::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) build::schema_error("", "expected a problem object");
  const json& kind = build::need(doc, "kind", "");
  if (!kind.is_string()) build::schema_error("/kind", "expected a string");

  Problem p;
  p.kind_ = kind.get<std::string>();
  if (p.kind_ == "action") {
    build::only_keys(doc, "", {"kind", "algebra", "group", "action", "epsilon", "rokhlin", "witness"});
    const StarAlgebra alg = build::algebra(build::need(doc, "algebra", ""), "/algebra");
    const FiniteGroup g = build::group(build::need(doc, "group", ""), "/group");
    const GroupAction a = build::action(alg, g, build::need(doc, "action", ""), "/action");
    if (doc.contains("epsilon") && (!doc["epsilon"].is_number() || !(doc["epsilon"].get<double>() > 0.0)))
      build::schema_error("/epsilon", "expected a positive number");
    if (doc.contains("rokhlin"))
      build::element_family(alg, doc["rokhlin"], "/rokhlin", static_cast<std::size_t>(g.order()));
    if (doc.contains("witness")) build::witness(a, doc["witness"], "/witness");
  } else if (p.kind_ == "gspace") {
    build::gspace(doc);
  } else if (p.kind_ == "hopf") {
    build::hopf_action(doc);
  } else if (p.kind_ == "graph") {
    build::only_keys(doc, "", {"kind", "graph", "targets", "batch"});
    const Graph g = build::graph(build::need(doc, "graph", ""), "/graph");
    if (doc.contains("targets")) {
      const json& t = doc["targets"];
      if (!t.is_array()) build::schema_error("/targets", "expected an array");
      for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string w = "/targets/" + std::to_string(i);
        build::only_keys(t[i], w, {"alpha", "beta", "n"});
        build::path(g, build::need(t[i], "alpha", w), w + "/alpha");
        build::path(g, build::need(t[i], "beta", w), w + "/beta");
        if (!build::need(t[i], "n", w).is_number_integer()) build::schema_error(w + "/n", "expected an integer");
      }
    }
    if (doc.contains("batch") && (!doc["batch"].is_number_integer() || doc["batch"].get<long>() < 0 ||
                                  doc["batch"].get<long>() > 8))
      build::schema_error("/batch", "expected an integer in 0..8");
  } else {
    build::schema_error("/kind", "unknown problem kind '" + p.kind_ + "' (expected action, gspace, hopf or graph)");
  }
  p.doc_ = std::move(doc);
  return p;
}

}  // namespace satlab
