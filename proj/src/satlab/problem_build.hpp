#pragma once

// Builders shared by problem parsing and the report runners. Every function
// takes the JSON pointer of its input for schema diagnostics.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "satlab/graph_gauge.hpp"
#include "satlab/index_engine.hpp"
#include "satlab/strata.hpp"

namespace satlab::build {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what);
void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed);
const json& need(const json& obj, const char* key, const std::string& where);

cplx complex_number(const json& j, const std::string& where);
Matrix matrix(const json& j, const std::string& where, int rows, int cols);
StarAlgebra algebra(const json& j, const std::string& where);
AlgebraElement element(const StarAlgebra& alg, const json& j, const std::string& where);
FiniteGroup group(const json& j, const std::string& where);
/// Action specification: "trivial" or an object with one of inner,
/// inner_generator, automorphisms, maps, permutations.
GroupAction action(const StarAlgebra& alg, const FiniteGroup& g, const json& j, const std::string& where);
WitnessFamily witness(const GroupAction& a, const json& j, const std::string& where);
std::vector<AlgebraElement> element_family(const StarAlgebra& alg, const json& j, const std::string& where,
                                           std::size_t expected);

FiniteGSpace gspace(const json& doc);
HopfAlgebra hopf(const json& j, const std::string& where);
std::optional<HopfAction> hopf_action(const json& doc);

Graph graph(const json& j, const std::string& where);
/// graph_Z presentations are re-presented on a wider window for witness search.
std::optional<int> named_window(const json& j);
Path path(const Graph& g, const json& j, const std::string& where);
Path path_from_text(const Graph& g, const std::string& text);
/// Re-expresses a path of one presentation in another by vertex and edge labels.
Path remap(const Graph& from, const Graph& to, const Path& p);

json to_json(cplx z);
json to_json(const AlgebraElement& x);
json to_json(const Vector& v);

}  // namespace satlab::build
