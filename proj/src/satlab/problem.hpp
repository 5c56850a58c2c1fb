#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace satlab {

struct RunOptions {
  /// Overrides the file's "epsilon"; the default is 1e-6.
  std::optional<double> epsilon;
  unsigned seed = 0;
};

struct GraphQuery {
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
  std::optional<int> n;
  std::optional<int> batch;
};

/// A schema-checked problem file. Parsing also builds the described objects
/// once, so axiom failures surface at parse time.
class Problem {
 public:
  static Problem parse(std::string_view text);

  const std::string& kind() const { return kind_; }
  const nlohmann::json& document() const { return doc_; }
  /// Canonical serialization; parse(canonical_json()) reproduces it exactly.
  std::string canonical_json() const { return doc_.dump(2); }

 private:
  std::string kind_;
  nlohmann::json doc_;
};

struct Report {
  nlohmann::json data;  // includes a "timing_ms" field
  std::string text;
};

Report run_analyze(const Problem& problem, const RunOptions& options);
Report run_strata(const Problem& problem, const RunOptions& options);
Report run_hopf(const Problem& problem, const RunOptions& options);
Report run_graph_witness(const Problem& problem, const RunOptions& options, const GraphQuery& query);

}  // namespace satlab
