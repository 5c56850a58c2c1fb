#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "satlab.h"

namespace {

struct Owned {
  char* s = nullptr;
  ~Owned() { satlab_string_free(s); }
};

int report_error(satlab_status status) {
  std::cerr << "satlab: " << satlab_last_error() << "\n";
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturation, index and gauge-witness analysis for finite-dimensional C*-algebra problems"};
  app.set_version_flag("--version", std::string(satlab_version()));
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> epsilon;
  std::string format = "text";
  unsigned seed = 0;
  bool no_timing = false;
  app.add_option("--epsilon", epsilon, "Tolerance for the approximate witness condition (overrides the file)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed, "Seed for sampled checks");
  app.add_flag("--no-timing", no_timing, "Omit the timing field from JSON reports");

  std::string file;
  auto add_command = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
    return sub;
  };
  CLI::App* analyze = add_command("analyze", "Saturation battery and index of an action, G-space or Hopf action");
  CLI::App* strata = add_command("strata", "Strata, index function and freeness of a finite G-space");
  CLI::App* hopf = add_command("hopf", "Hopf axioms and, with an action, Hopf saturation");
  CLI::App* graph = add_command("graph-witness", "Gauge witnesses for targets z^n s_alpha s_beta^*");
  std::optional<std::string> alpha, beta;
  std::optional<int> n, batch;
  graph->add_option("--alpha", alpha, "Vertex label or comma-separated edge labels");
  graph->add_option("--beta", beta, "Vertex label or comma-separated edge labels");
  graph->add_option("--n", n, "Degree of the target");
  graph->add_option("--batch", batch, "Check every target with |alpha|, |beta|, |n| <= L")
      ->check(CLI::Range(0, 8))
      ->excludes(graph->get_option("--alpha"))
      ->excludes(graph->get_option("--beta"))
      ->excludes(graph->get_option("--n"));

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "satlab: cannot read " << file << "\n";
    return static_cast<int>(SATLAB_ERR_ARGUMENT);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  satlab_problem* problem = nullptr;
  if (satlab_status s = satlab_problem_parse(text.data(), text.size(), &problem); s != SATLAB_OK)
    return report_error(s);

  satlab_options options{epsilon.has_value() ? 1 : 0, epsilon.value_or(0.0), seed};
  satlab_report* report = nullptr;
  satlab_status status = SATLAB_OK;
  if (*analyze) {
    status = satlab_run_analyze(problem, &options, &report);
  } else if (*strata) {
    status = satlab_run_strata(problem, &options, &report);
  } else if (*hopf) {
    status = satlab_run_hopf(problem, &options, &report);
  } else {
    satlab_graph_query query{alpha ? alpha->c_str() : nullptr, beta ? beta->c_str() : nullptr, n ? 1 : 0,
                             n.value_or(0), batch ? 1 : 0, batch.value_or(0)};
    status = satlab_run_graph_witness(problem, &options, &query, &report);
  }
  satlab_problem_destroy(problem);
  if (status != SATLAB_OK) return report_error(status);

  Owned out;
  status = format == "json" ? satlab_report_json(report, no_timing ? 0 : 1, &out.s) : satlab_report_text(report, &out.s);
  satlab_report_destroy(report);
  if (status != SATLAB_OK) return report_error(status);
  std::fputs(out.s, stdout);
  if (format == "json") std::fputs("\n", stdout);
  return 0;
}
