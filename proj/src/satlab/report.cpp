#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "satlab/error.hpp"
#include "satlab/problem.hpp"
#include "satlab/problem_build.hpp"
#include "satlab/tolerances.hpp"

namespace satlab {

namespace {

using build::json;
using build::to_json;

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string number(double x) {
  char buf[64];
  if (std::abs(x - std::round(x)) < 1e-7)
    std::snprintf(buf, sizeof buf, "%.1f", std::round(x) == 0.0 ? 0.0 : std::round(x));
  else
    std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string residual(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

const char* yes(bool b) { return b ? "true" : "false"; }

json condition(const ConditionResult& c) { return {{"holds", c.holds}, {"residual", c.residual}}; }

json witness_check(const WitnessCheck& w) {
  return {{"equivariance_residual", w.equivariance_residual}, {"orthogonality_residual", w.orthogonality_residual}};
}

json coordinates(const StarAlgebra& alg, const std::vector<AlgebraElement>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_json(Vector(alg.coords(x))));
  return out;
}

json index_json(const IndexReport& r) {
  json j = {{"element", to_json(r.index_element)},
            {"is_central", r.is_central},
            {"trace", r.trace_value},
            {"scalar_residual", r.scalar_residual},
            {"scalar", r.scalar_value ? json(*r.scalar_value) : json(nullptr)},
            {"self_adjoint_residual", r.self_adjoint_residual},
            {"min_eigenvalue", r.min_eigenvalue}};
  if (r.matches_group_order) j["matches_group_order"] = *r.matches_group_order;
  return j;
}

std::string index_text(const IndexReport& r) {
  return r.scalar_value ? number(*r.scalar_value) : "non-scalar (trace " + number(r.trace_value) + ")";
}

json quasi_basis_json(const StarAlgebra& alg, const QuasiBasis& qb) {
  return {{"coordinates", coordinates(alg, qb.elements)},
          {"residual", qb.residual},
          {"right_residual", qb.right_residual},
          {"frame_min_eigenvalue", qb.frame_min_eigenvalue},
          {"frame_max_eigenvalue", qb.frame_max_eigenvalue}};
}

json expectation_json(const ExpectationCheck& c) {
  return {{"ok", c.ok()},
          {"idempotence", c.idempotence},
          {"range", c.range},
          {"unitality", c.unitality},
          {"bimodule", c.bimodule},
          {"self_adjointness", c.self_adjointness},
          {"positivity", c.positivity}};
}

json battery_json(const StarAlgebra& alg, const SaturationVerdict& v) {
  json trend = json::array();
  for (const auto& t : v.epsilon_trend) trend.push_back({{"epsilon", t.epsilon}, {"holds", t.holds}});
  json j = {{"group_order", v.group_order},
            {"crossed_dimension", v.crossed_dimension},
            {"j_alpha_dimension", v.j_alpha_dimension},
            {"ideal_full", condition(v.ideal_full)},
            {"index_is_order", condition(v.index_is_order)},
            {"qb_orthogonality", condition(v.qb_orthogonality)},
            {"exact_witness", condition(v.exact_witness)},
            {"witness", witness_check(v.witness)},
            {"epsilon", v.epsilon},
            {"approx_witness", condition(v.approx_witness)},
            {"epsilon_trend", trend},
            {"phi_one_projection_residual", v.phi_one_projection_residual},
            {"index", index_json(v.index)},
            {"quasi_basis", quasi_basis_json(alg, v.quasi_basis)},
            {"consistent", v.consistent},
            {"saturated", v.saturated},
            {"disagreements", v.disagreements}};
  if (v.supplied_witness) j["supplied_witness"] = witness_check(*v.supplied_witness);
  return j;
}

void battery_text(std::ostringstream& os, const SaturationVerdict& v) {
  os << "saturated: " << yes(v.saturated) << ", index: " << index_text(v.index) << ", |G|: " << v.group_order << "\n";
  os << "  (i)   J_alpha full:            " << yes(v.ideal_full.holds) << "  dim " << v.j_alpha_dimension << " of "
     << v.crossed_dimension << "\n";
  os << "  (ii)  Index(E) = |G| 1:        " << yes(v.index_is_order.holds) << "  residual "
     << residual(v.index_is_order.residual) << "\n";
  os << "  (iii) orthogonal quasi-basis:  " << yes(v.qb_orthogonality.holds) << "  residual "
     << residual(v.qb_orthogonality.residual) << "\n";
  os << "  (iv)  exact witness family:    " << yes(v.exact_witness.holds) << "  residual "
     << residual(v.exact_witness.residual) << "\n";
  os << "  (v)   epsilon witness (" << v.epsilon << "): " << yes(v.approx_witness.holds) << "  residual "
     << residual(v.approx_witness.residual) << "\n";
  os << "  consistent: " << yes(v.consistent) << "\n";
  for (const auto& d : v.disagreements) os << "  disagreement: " << d << "\n";
}

double epsilon_of(const json& doc, const RunOptions& options) {
  if (options.epsilon) {
    if (!(*options.epsilon > 0.0)) fail(ErrorKind::Precondition, "epsilon must be positive");
    return *options.epsilon;
  }
  return doc.contains("epsilon") ? doc["epsilon"].get<double>() : 1e-6;
}

Report finish(json data, std::ostringstream& text, const Stopwatch& clock) {
  data["timing_ms"] = clock.ms();
  return {std::move(data), text.str()};
}

json hopf_axioms_json(const HopfAlgebra& h, std::ostringstream& os) {
  const HopfAxiomReport rep = h.check_axioms();
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back({{"identity", c.identity}, {"residual", c.residual}, {"pass", c.pass}});
  os << "hopf algebra " << h.name() << " (dim " << h.dimension() << "): axioms " << (rep.all_pass() ? "pass" : "FAIL")
     << ", max residual " << residual(rep.max_residual()) << "\n";
  for (const auto& c : rep.checks)
    if (!c.pass) os << "  failing: " << c.identity << "  residual " << residual(c.residual) << "\n";
  for (const auto& f : rep.flagged) os << "  flagged: " << f << "\n";
  json haar = json::array();
  for (Eigen::Index i = 0; i < h.haar_trace().size(); ++i) haar.push_back(to_json(h.haar_trace()(i)));
  return {{"name", h.name()},
          {"dimension", h.dimension()},
          {"all_pass", rep.all_pass()},
          {"max_residual", rep.max_residual()},
          {"checks", checks},
          {"flagged", rep.flagged},
          {"haar_trace", haar},
          {"distinguished_projection", to_json(h.distinguished_projection())}};
}

json hopf_saturation_json(const HopfAction& action, std::ostringstream& os, unsigned seed) {
  const SmashProduct smash(action, seed);
  const ExpectationCheck ec = verify_expectation(hopf_expectation(action));
  const HopfSaturationVerdict v = hopf_saturation(action);
  os << "saturated: " << yes(v.saturated) << ", index: " << index_text(v.index)
     << ", dim A: " << action.hopf().dimension() << "\n";
  os << "  span{x e y} full: " << yes(v.span_full) << "  dim " << v.span_dimension << " of " << v.full_dimension << "\n";
  os << "  Index(E) = D 1:   " << yes(v.index_is_dimension) << "  residual " << residual(v.index_residual) << "\n";
  return {{"algebra", action.algebra().block_dims()},
          {"smash_dimension", smash.dimension()},
          {"smash_associativity_residual", smash.associativity_residual()},
          {"smash_involution_residual", smash.involution_residual()},
          {"expectation", expectation_json(ec)},
          {"span_dimension", v.span_dimension},
          {"full_dimension", v.full_dimension},
          {"span_full", v.span_full},
          {"index", index_json(v.index)},
          {"index_residual", v.index_residual},
          {"index_is_dimension", v.index_is_dimension},
          {"quasi_basis", quasi_basis_json(action.algebra(), v.quasi_basis)},
          {"saturated", v.saturated}};
}

json strata_json(const FiniteGSpace& space, std::ostringstream& os) {
  const StrataPartition part = strata(space);
  const AlgebraElement index = index_function(space);
  const QuasiBasis explicit_qb = strata_quasi_basis(space);
  const ConditionalExpectation e = group_expectation(space.induced_action());
  const IndexReport solved = compute_index(solve_quasi_basis(e).elements);

  json strata_list = json::array();
  os << "strata (|G| = " << space.group().order() << ", |X| = " << space.points() << "):\n";
  for (const auto& s : part.strata) {
    strata_list.push_back({{"subgroup", s.subgroup}, {"points", s.points}});
    if (s.points.empty()) continue;
    os << "  H = {";
    for (std::size_t i = 0; i < s.subgroup.size(); ++i) os << (i ? "," : "") << s.subgroup[i];
    os << "}  X_H = {";
    for (std::size_t i = 0; i < s.points.size(); ++i) os << (i ? "," : "") << s.points[i];
    os << "}\n";
  }
  json values = json::array();
  double formula_gap = 0.0;
  os << "index values: (";
  for (int x = 0; x < space.points(); ++x) {
    const double v = index.block(x)(0, 0).real();
    formula_gap = std::max(formula_gap, std::abs(solved.index_element.block(x)(0, 0) - index.block(x)(0, 0)));
    values.push_back(v);
    os << (x ? ", " : "") << number(v);
  }
  os << ")\n";
  return {{"strata", strata_list},
          {"isotropy", part.isotropy},
          {"orbits", orbits(space)},
          {"index_values", values},
          {"solved_index", index_json(solved)},
          {"formula_residual", formula_gap},
          {"strata_quasi_basis", quasi_basis_json(space.induced_action().algebra(), explicit_qb)}};
}

json freeness_json(const FreenessVerdict& f, const StarAlgebra& alg, std::ostringstream& os) {
  os << "free: " << yes(f.free) << ", saturated: " << yes(f.saturated) << "\n";
  os << "  Index = |G|: " << yes(f.index_is_order) << "  residual " << residual(f.index_residual) << "\n";
  return {{"free", f.free},
          {"index_is_order", f.index_is_order},
          {"index_residual", f.index_residual},
          {"saturated", f.saturated},
          {"battery", battery_json(alg, f.battery)}};
}

Report analyze_action(const Problem& problem, const RunOptions& options) {
  Stopwatch clock;
  const json& doc = problem.document();
  const StarAlgebra alg = build::algebra(doc["algebra"], "/algebra");
  const FiniteGroup g = build::group(doc["group"], "/group");
  const GroupAction a = build::action(alg, g, doc["action"], "/action");
  const double eps = epsilon_of(doc, options);
  std::optional<WitnessFamily> supplied;
  if (doc.contains("witness")) supplied = build::witness(a, doc["witness"], "/witness");

  std::ostringstream os;
  const ExpectationCheck ec = verify_expectation(group_expectation(a));
  const SaturationVerdict v = saturation_battery(a, eps, supplied);
  battery_text(os, v);

  json data = {{"kind", "action"},
               {"algebra", alg.block_dims()},
               {"group", {{"name", g.name()}, {"order", g.order()}}},
               {"expectation", expectation_json(ec)},
               {"battery", battery_json(alg, v)}};

  // The same action seen as a C*(G)-action must give the same verdict.
  std::ostringstream hopf_text;
  json cross = hopf_saturation_json(hopf_action_from_group_action(a), hopf_text, options.seed);
  const bool agrees = cross["saturated"].get<bool>() == v.saturated;
  cross["agrees_with_battery"] = agrees;
  data["hopf_cross_check"] = cross;
  os << "  hopf cross-check agrees: " << yes(agrees) << "\n";
  if (!agrees) fail(ErrorKind::Consistency, "group battery and Hopf saturation disagree");

  if (doc.contains("rokhlin")) {
    const auto family = build::element_family(alg, doc["rokhlin"], "/rokhlin", static_cast<std::size_t>(g.order()));
    const RokhlinReport r = rokhlin_witness_check(a, family, eps);
    json rj = {{"is_rokhlin", r.is_rokhlin},
               {"projection_residual", r.projection_residual},
               {"orthogonality_residual", r.orthogonality_residual},
               {"partition_residual", r.partition_residual},
               {"equivariance_residual", r.equivariance_residual},
               {"single_family", witness_check(r.single_family)},
               {"spread_family", witness_check(r.spread_family)},
               {"condition_v", r.condition_v},
               {"battery_saturated", r.battery_saturated ? json(*r.battery_saturated) : json(nullptr)},
               {"agrees", r.agrees}};
    data["rokhlin"] = rj;
    os << "rokhlin: " << yes(r.is_rokhlin) << ", witness (v): " << yes(r.condition_v) << ", agrees: " << yes(r.agrees)
       << "\n";
  }
  return finish(std::move(data), os, clock);
}

}  // namespace

Report run_strata(const Problem& problem, const RunOptions& /*options*/) {
  if (problem.kind() != "gspace") fail(ErrorKind::Precondition, "strata needs a gspace problem");
  Stopwatch clock;
  const FiniteGSpace space = build::gspace(problem.document());
  std::ostringstream os;
  json data = {{"kind", "gspace"}, {"group", {{"name", space.group().name()}, {"order", space.group().order()}}},
               {"points", space.points()}};
  data["strata"] = strata_json(space, os);
  const FreenessVerdict f = freeness_saturation_check(space);
  data["freeness"] = freeness_json(f, space.induced_action().algebra(), os);
  return finish(std::move(data), os, clock);
}

Report run_hopf(const Problem& problem, const RunOptions& options) {
  if (problem.kind() != "hopf") fail(ErrorKind::Precondition, "hopf needs a hopf problem");
  Stopwatch clock;
  const json& doc = problem.document();
  std::ostringstream os;
  const std::optional<HopfAction> action = build::hopf_action(doc);
  const HopfAlgebra h = action ? action->hopf() : build::hopf(doc["hopf"], "/hopf");
  json data = {{"kind", "hopf"}, {"hopf", hopf_axioms_json(h, os)}};
  if (action) data["action"] = hopf_saturation_json(*action, os, options.seed);
  return finish(std::move(data), os, clock);
}

Report run_analyze(const Problem& problem, const RunOptions& options) {
  if (problem.kind() == "action") return analyze_action(problem, options);
  if (problem.kind() == "gspace") return run_strata(problem, options);
  if (problem.kind() == "hopf") return run_hopf(problem, options);
  fail(ErrorKind::Precondition, "analyze does not apply to graph problems; use graph-witness");
}

namespace {

struct Target {
  Path alpha;
  Path beta;
  int n = 0;
};

json witness_json(const Graph& g, const GaugeWitness& w, const ReplayResult& r) {
  return {{"alpha", to_string(g, w.alpha)},
          {"beta", to_string(g, w.beta)},
          {"n", w.n},
          {"l", w.l},
          {"case", w.case_tag},
          {"adjoint_route", w.adjoint_route},
          {"chosen", to_string(g, w.chosen)},
          {"a", to_string(g, w.a)},
          {"b", to_string(g, w.b)},
          {"transcript", w.transcript},
          {"replay_ok", r.ok},
          {"degree_ok", r.degree_ok},
          {"product", to_string(g, r.product)}};
}

std::vector<Target> batch_targets(const Graph& g, int max_length) {
  std::vector<std::vector<Path>> by_length;
  for (int k = 0; k <= max_length; ++k) by_length.push_back(paths_of_length(g, k));
  std::vector<Target> out;
  for (int la = 0; la <= max_length; ++la)
    for (int lb = 0; lb <= max_length; ++lb)
      for (const Path& a : by_length[static_cast<std::size_t>(la)])
        for (const Path& b : by_length[static_cast<std::size_t>(lb)]) {
          if (path_range(g, a) != path_range(g, b)) continue;
          for (int n = -max_length; n <= max_length; ++n) out.push_back({a, b, n});
        }
  return out;
}

}  // namespace

Report run_graph_witness(const Problem& problem, const RunOptions& /*options*/, const GraphQuery& query) {
  if (problem.kind() != "graph") fail(ErrorKind::Precondition, "graph-witness needs a graph problem");
  Stopwatch clock;
  const json& doc = problem.document();
  const Graph g = build::graph(doc["graph"], "/graph");

  const GraphReport gr = validate_graph(g);
  if (!gr.no_sinks())
    fail(ErrorKind::Precondition, "graph has sink " + g.vertex_label(gr.sinks.front()) + "; no sinks required");
  if (!gr.no_sources())
    fail(ErrorKind::Precondition, "graph has source " + g.vertex_label(gr.sources.front()) + "; no sources required");

  const bool single = query.alpha || query.beta || query.n;
  if (single && !(query.alpha && query.beta && query.n))
    fail(ErrorKind::Precondition, "a single target needs --alpha, --beta and --n together");
  if (single && query.batch) fail(ErrorKind::Precondition, "--batch cannot be combined with a single target");

  std::vector<Target> targets;
  std::optional<int> batch;
  if (single) {
    targets.push_back({build::path_from_text(g, *query.alpha), build::path_from_text(g, *query.beta), *query.n});
  } else if (query.batch) {
    batch = *query.batch;
  } else if (doc.contains("batch")) {
    batch = doc["batch"].get<int>();
  } else if (doc.contains("targets")) {
    for (std::size_t i = 0; i < doc["targets"].size(); ++i) {
      const json& t = doc["targets"][i];
      const std::string w = "/targets/" + std::to_string(i);
      targets.push_back({build::path(g, t["alpha"], w + "/alpha"), build::path(g, t["beta"], w + "/beta"),
                         t["n"].get<int>()});
    }
  } else {
    fail(ErrorKind::Precondition, "no targets: give --alpha/--beta/--n, --batch or targets in the file");
  }
  if (batch) {
    if (*batch < 0 || *batch > 8) fail(ErrorKind::Precondition, "batch length must be in 0..8");
    targets = batch_targets(g, *batch);
  }

  // Windows of graph Z are widened so that witness walks stay inside.
  std::optional<Graph> wide;
  if (const auto radius = build::named_window(doc["graph"])) {
    int margin = 0;
    for (const auto& t : targets) margin = std::max(margin, t.alpha.length() + t.beta.length() + std::abs(t.n) + 1);
    wide = graph_Z(*radius + margin);
  }
  const Graph& work = wide ? *wide : g;

  json data = {{"kind", "graph"},
               {"graph", {{"name", g.name()}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()}}}};
  if (wide) data["graph"]["search_window"] = work.window_radius();
  std::ostringstream os;
  std::map<std::string, int> counts;
  json failures = json::array();
  json witnesses = json::array();
  int verified = 0;
  for (const auto& t : targets) {
    const Path alpha = wide ? build::remap(g, work, t.alpha) : t.alpha;
    const Path beta = wide ? build::remap(g, work, t.beta) : t.beta;
    const GaugeWitness w = gauge_witness(work, alpha, beta, t.n);
    const ReplayResult r = replay(work, w);
    counts[w.case_tag == 1 ? "case_l_nonnegative" : "case_l_negative"]++;
    if (w.adjoint_route) counts["adjoint_route"]++;
    if (r.ok && r.degree_ok)
      ++verified;
    else
      failures.push_back(witness_json(work, w, r));
    if (!batch) {
      witnesses.push_back(witness_json(work, w, r));
      os << "target z^" << t.n << " s_{" << to_string(work, alpha) << "} s_{" << to_string(work, beta) << "}^*\n";
      os << "  witness a = " << to_string(work, w.a) << ", b = " << to_string(work, w.b) << "  (case "
         << (w.case_tag == 1 ? "l >= 0" : "l < 0") << (w.adjoint_route ? ", adjoint route" : "") << ")\n";
      for (const auto& line : w.transcript) os << "    " << line << "\n";
      os << "  replay: " << (r.ok && r.degree_ok ? "verified" : "FAILED") << "\n";
    }
  }
  data["targets"] = static_cast<int>(targets.size());
  data["verified"] = verified;
  data["all_verified"] = verified == static_cast<int>(targets.size());
  data["cases"] = counts;
  data["failures"] = failures;
  if (batch) {
    data["batch"] = *batch;
    os << "batch |alpha|, |beta|, |n| <= " << *batch << ": " << verified << " of " << targets.size()
       << " transcripts verified (l >= 0: " << counts["case_l_nonnegative"] << ", l < 0: " << counts["case_l_negative"]
       << ", adjoint route: " << counts["adjoint_route"] << ")\n";
  } else {
    data["witnesses"] = witnesses;
  }
  return finish(std::move(data), os, clock);
}

}  // namespace satlab
