// Copyright 2026 The cvcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvcs_cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cvcs/analysis.hpp"
#include "cvcs/errors.hpp"
#include "cvcs/report.hpp"
#include "cvcs/scenarios.hpp"

namespace cvcs::cli {
namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioFlags {
  std::string config_path;
  std::string scenario;
  std::optional<int> p;
  std::optional<int> rows;
  std::optional<int> cols;
};

struct CommonFlags {
  double threshold = kDefaultEdgeThreshold;
  std::string search = "exhaustive";
  unsigned threads = 1;
  std::string format = "text";
  std::string out;
};

void add_scenario_flags(CLI::App* app, ScenarioFlags& f) {
  app->add_option("--config", f.config_path, "Scenario config (JSON)");
  app->add_option("--scenario", f.scenario, "Built-in scenario")
      ->check(CLI::IsMember({"ladder", "lattice"}));
  app->add_option("--p", f.p, "Ladder parameter (odd prime, p - 1 modes)");
  app->add_option("--rows", f.rows, "Lattice rows");
  app->add_option("--cols", f.cols, "Lattice columns");
}

void add_common_flags(CLI::App* app, CommonFlags& f, std::vector<std::string> formats) {
  app->add_option("--threshold", f.threshold, "Edge threshold for components and DOT output")
      ->capture_default_str();
  app->add_option("--search", f.search, "Phase-subset search")
      ->capture_default_str()
      ->check(CLI::IsMember({"exhaustive", "greedy"}));
  app->add_option("--threads", f.threads, "Search threads (0 = all cores)")->capture_default_str();
  app->add_option("--format", f.format, "Output format on stdout")
      ->capture_default_str()
      ->check(CLI::IsMember(std::move(formats)));
  app->add_option("--out", f.out, "Output prefix for written files");
}

std::string read_input(const std::string& path) {
  try {
    return read_file(path);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
}

void write_output(const std::filesystem::path& path, std::string_view contents) {
  try {
    write_file_atomic(path, contents);
  } catch (const std::exception& e) {
    throw IoError("cannot write " + path.string() + ": " + e.what());
  }
}

ScenarioConfig scenario_from_flags(const ScenarioFlags& f, std::optional<double> r) {
  ScenarioConfig config;
  if (!f.config_path.empty()) {
    if (!f.scenario.empty() || f.p || f.rows || f.cols) {
      throw CLI::ValidationError(
          "--config cannot be combined with --scenario, --p, --rows or --cols");
    }
    config = parse_scenario_config(read_input(f.config_path));
    if (r) config.override_r(*r);
  } else {
    if (f.scenario.empty()) throw CLI::RequiredError("--scenario or --config");
    if (!r) throw CLI::RequiredError("--r");
    config.kind = scenario_kind_from_string(f.scenario);
    config.r = *r;
    if (config.kind == ScenarioKind::kLadder) {
      if (!f.p) throw CLI::RequiredError("--p");
      config.p = f.p;
    } else {
      if (!f.rows || !f.cols) throw CLI::RequiredError("--rows and --cols");
      config.rows = f.rows;
      config.cols = f.cols;
    }
  }
  config.validate();
  return config;
}

AnalysisOptions analysis_options(const CommonFlags& f) {
  if (!(f.threshold >= 0.0) || !std::isfinite(f.threshold)) {
    throw CLI::ValidationError("--threshold must be a finite non-negative number");
  }
  AnalysisOptions options;
  options.threshold = f.threshold;
  options.search.mode = search_mode_from_string(f.search);
  options.search.threads =
      f.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : f.threads;
  return options;
}

int cmd_run(const ScenarioFlags& sf, std::optional<double> r, const CommonFlags& cf,
            std::ostream& out) {
  const ScenarioConfig config = scenario_from_flags(sf, r);
  const AnalysisOptions options = analysis_options(cf);
  const RunResult run = run_scenario(config, options);
  const GraphExport exported = export_closest(run, options);
  const std::string text = render_text_report(run, options);

  if (!cf.out.empty()) {
    write_output(cf.out + ".json", to_json(exported));
    write_output(cf.out + ".txt", text);
    write_output(cf.out + ".dot", export_dot(exported, options.threshold));
    if (auto h = export_hgraph(run)) write_output(cf.out + ".hgraph.json", to_json(*h));
  }
  if (cf.format == "json") {
    out << to_json(exported);
  } else if (cf.format == "dot") {
    out << export_dot(exported, options.threshold);
  } else {
    out << text;
  }
  return kOk;
}

std::vector<double> sweep_values(const std::vector<double>& rs, const std::vector<double>& range) {
  std::vector<double> values = rs;
  if (!range.empty()) {
    const double start = range[0], stop = range[1], step = range[2];
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
      throw CLI::ValidationError("--range needs START <= STOP and STEP > 0");
    }
    const long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw CLI::ValidationError("--range produces too many points");
    for (long k = 0; k < count; ++k) values.push_back(start + static_cast<double>(k) * step);
  }
  if (values.empty()) throw CLI::RequiredError("--r or --range");
  return values;
}

int cmd_sweep(const ScenarioFlags& sf, const std::vector<double>& rs,
              const std::vector<double>& range, const CommonFlags& cf, std::ostream& out) {
  const std::vector<double> values = sweep_values(rs, range);
  const ScenarioConfig config = scenario_from_flags(sf, values.front());
  const AnalysisOptions options = analysis_options(cf);
  const std::vector<SweepRow> rows = sweep(config, values, options);
  const std::string table = render_sweep_table(rows);
  const std::string json = sweep_to_json(rows);
  if (!cf.out.empty()) {
    write_output(cf.out + ".json", json);
    write_output(cf.out + ".txt", table);
  }
  out << (cf.format == "json" ? json : table);
  return kOk;
}

int cmd_analyze(const std::string& input, const CommonFlags& cf, std::ostream& out) {
  const GraphExport source = graph_export_from_json(read_input(input));
  const AnalysisOptions options = analysis_options(cf);
  std::optional<RealMatrix> target;
  if (source.metadata.scenario) {
    const Schedule schedule = build_schedule(*source.metadata.scenario);
    if (schedule.n() == source.z.n()) target = schedule.interaction_graph();
  }
  const AnalysisReport report = analyze(closest_cvcs(source.z, options.search), target, options);

  ExportMetadata meta;
  meta.scenario = source.metadata.scenario;
  meta.r = source.metadata.r;
  meta.db = source.metadata.db;
  meta.search = std::string(to_string(options.search.mode));
  meta.subset = report.phased.subset;
  meta.error = report.phased.error;
  meta.spectrum = report.phased.im_eigenvalues;
  meta.components = report.components;
  meta.threshold = options.threshold;
  meta.notes = source.metadata.notes;
  const GraphExport exported = make_export(report.phased.z_prime, std::move(meta));
  const std::string text = render_text_report(report, options, input);

  if (!cf.out.empty()) {
    write_output(cf.out + ".json", to_json(exported));
    write_output(cf.out + ".txt", text);
    write_output(cf.out + ".dot", export_dot(exported, options.threshold));
  }
  if (cf.format == "json") {
    out << to_json(exported);
  } else if (cf.format == "dot") {
    out << export_dot(exported, options.threshold);
  } else {
    out << text;
  }
  return kOk;
}

int cmd_export(const std::string& input, const ScenarioFlags& sf, std::optional<double> r,
               const std::string& state, const CommonFlags& cf, std::ostream& out) {
  std::optional<GraphExport> exported;
  if (!input.empty()) {
    if (!sf.config_path.empty() || !sf.scenario.empty()) {
      throw CLI::ValidationError("give either an input export or scenario flags, not both");
    }
    exported = graph_export_from_json(read_input(input));
  } else {
    const ScenarioConfig config = scenario_from_flags(sf, r);
    const AnalysisOptions options = analysis_options(cf);
    if (state == "hgraph") {
      const Schedule schedule = build_schedule(config);
      ExportMetadata meta;
      meta.state = "hgraph";
      meta.scenario = config;
      meta.r = config.r;
      meta.db = squeezing_db(config.r);
      exported = make_export(run_schedule(schedule), std::move(meta));
    } else {
      exported = export_closest(run_scenario(config, options), options);
    }
  }
  const std::string contents =
      cf.format == "dot" ? export_dot(*exported, cf.threshold) : to_json(*exported);
  if (!cf.out.empty()) write_output(cf.out + (cf.format == "dot" ? ".dot" : ".json"), contents);
  out << contents;
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closest continuous-variable cluster states of two-mode-squeezing schedules",
               "cvcs"};
  app.require_subcommand(1);

  ScenarioFlags run_sf, sweep_sf, export_sf;
  CommonFlags run_cf, sweep_cf, analyze_cf, export_cf;
  std::optional<double> run_r, export_r;
  std::vector<double> sweep_rs, sweep_range;
  std::string analyze_input, export_input, export_state = "closest";

  CLI::App* run = app.add_subcommand("run", "Run a scenario and report its closest CVCS");
  add_scenario_flags(run, run_sf);
  run->add_option("--r", run_r, "Squeezing parameter (overrides the config)");
  add_common_flags(run, run_cf, {"text", "json", "dot"});

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Tabulate error and component count over r");
  add_scenario_flags(sweep_cmd, sweep_sf);
  sweep_cmd->add_option("--r", sweep_rs, "Squeezing values");
  sweep_cmd->add_option("--range", sweep_range, "START STOP STEP")->expected(3);
  add_common_flags(sweep_cmd, sweep_cf, {"text", "json"});

  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "Search the closest CVCS of an exported state");
  analyze_cmd->add_option("input", analyze_input, "Graph export (JSON)")->required();
  add_common_flags(analyze_cmd, analyze_cf, {"text", "json", "dot"});

  CLI::App* export_cmd = app.add_subcommand("export", "Write a state as JSON or DOT");
  export_cmd->add_option("input", export_input, "Graph export (JSON) to convert");
  add_scenario_flags(export_cmd, export_sf);
  export_cmd->add_option("--r", export_r, "Squeezing parameter (overrides the config)");
  export_cmd->add_option("--state", export_state, "State to export from a scenario")
      ->capture_default_str()
      ->check(CLI::IsMember({"closest", "hgraph"}));
  export_cf.format = "json";
  add_common_flags(export_cmd, export_cf, {"json", "dot"});

  try {
    app.parse(argc, argv);
    if (*run) return cmd_run(run_sf, run_r, run_cf, out);
    if (*sweep_cmd) return cmd_sweep(sweep_sf, sweep_rs, sweep_range, sweep_cf, out);
    if (*analyze_cmd) return cmd_analyze(analyze_input, analyze_cf, out);
    return cmd_export(export_input, export_sf, export_r, export_state, export_cf, out);
  } catch (const CLI::CallForHelp&) {
    return app.exit(CLI::CallForHelp(), out, err);
  } catch (const CLI::CallForAllHelp&) {
    return app.exit(CLI::CallForAllHelp(), out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kConfig;
  } catch (const NumericalDegeneracy& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  }
}

}  // namespace cvcs::cli
