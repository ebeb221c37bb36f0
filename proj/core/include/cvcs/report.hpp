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

// End-to-end scenario runs and their serialized forms: the versioned JSON
// graph export, Graphviz DOT, the text report and sweep tables.

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvcs/analysis.hpp"
#include "cvcs/gaussian.hpp"
#include "cvcs/scenarios.hpp"

namespace cvcs {

inline constexpr int kExportSchemaVersion = 1;

/// 10 log10(e^{2r}).
double squeezing_db(double r);

struct ExportMetadata {
  /// "closest_cvcs" for phase-optimized states, "hgraph" before phase shifts.
  std::string state = "closest_cvcs";
  std::optional<ScenarioConfig> scenario;
  std::optional<double> r;
  std::optional<double> db;
  std::optional<std::string> search;
  std::vector<int> subset;
  std::optional<double> error;
  std::vector<double> spectrum;
  Partition components;
  std::optional<double> threshold;
  std::vector<std::string> notes;
};

/// Sparse, versioned export of a graph matrix. Diagonal entries of both parts
/// are always written; off-diagonal entries are written when nonzero.
struct GraphExport {
  int schema_version = kExportSchemaVersion;
  GraphZ z;
  std::vector<int> labels;
  ExportMetadata metadata;
};

GraphExport make_export(const GraphZ& z, ExportMetadata metadata = {});

std::string to_json(const GraphExport& graph);

/// Throws ConfigError on malformed input or an unknown schema_version.
GraphExport graph_export_from_json(std::string_view text);

/// Deterministic Graphviz rendering: every node, every self loop, and the
/// off-diagonal entries with |z_ij| >= threshold. Edge colours follow
/// (+1, -1, +i, -i, mixed) -> (red, blue, purple, green, gray).
std::string export_dot(const GraphExport& graph, double threshold);

struct RunResult {
  ScenarioConfig config;
  Schedule schedule;
  /// State before phase shifts; empty if the sequential update degenerated.
  std::optional<GraphZ> hgraph;
  RealMatrix target;
  AnalysisReport report;
  std::vector<std::string> notes;
};

/// Builds the schedule, evolves the vacuum, searches the closest CVCS from
/// the composed symplectic and analyzes it against the interaction graph.
RunResult run_scenario(const ScenarioConfig& config, const AnalysisOptions& options = {});

GraphExport export_closest(const RunResult& run, const AnalysisOptions& options);
std::optional<GraphExport> export_hgraph(const RunResult& run);

std::string render_text_report(const RunResult& run, const AnalysisOptions& options);

/// Report for a state that did not come from a scenario (the analyze verb).
std::string render_text_report(const AnalysisReport& report, const AnalysisOptions& options,
                               std::string_view source);

struct SweepRow {
  double r = 0.0;
  double db = 0.0;
  double error = 0.0;
  int components = 0;
};

/// One row per r, in the given order.
std::vector<SweepRow> sweep(const ScenarioConfig& config, std::span<const double> rs,
                            const AnalysisOptions& options = {});

std::string render_sweep_table(std::span<const SweepRow> rows);
std::string sweep_to_json(std::span<const SweepRow> rows);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace cvcs
