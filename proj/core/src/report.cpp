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

#include "cvcs/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "cvcs/errors.hpp"

namespace cvcs {
namespace {

using nlohmann::json;

constexpr const char* kLatticeScheduleNote =
    "lattice stages come from a greedy proper edge colouring (edges sorted by row, col, "
    "direction); other stage orderings produce different states, supply a custom config to change "
    "it";

std::string fmt(double value, const char* format = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

std::string fmt_complex(Complex w) {
  std::string s = fmt(w.real());
  s += w.imag() < 0 ? " - " : " + ";
  s += fmt(std::abs(w.imag()));
  s += "i";
  return s;
}

std::string join(const std::vector<int>& values, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

json conventions_json() {
  return {{"quadrature_order", Conventions::kQuadratureOrder},
          {"vacuum_variance", Conventions::kVacuumVariance},
          {"wavefunction", Conventions::kWavefunction},
          {"tms_sign", Conventions::kTmsSign},
          {"phase_alphabet", Conventions::kPhaseAlphabet},
          {"db", "10*log10(exp(2r))"}};
}

json triplets(const RealMatrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i; j < m.cols(); ++j) {
      if (i == j || m(i, j) != 0.0) out.push_back({i + 1, j + 1, m(i, j)});
    }
  }
  return out;
}

void fill_triplets(const json& list, int n, RealMatrix& m, const char* name) {
  if (!list.is_array())
    throw ConfigError(std::string("graph export: \"") + name + "\" must be an array");
  for (const json& t : list) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
        !t[2].is_number()) {
      throw ConfigError(std::string("graph export: malformed ") + name + " entry " + t.dump());
    }
    const int i = t[0].get<int>(), j = t[1].get<int>();
    if (i < 1 || j < 1 || i > n || j > n) {
      throw ConfigError(std::string("graph export: ") + name + " entry " + t.dump() +
                        " out of range");
    }
    m(i - 1, j - 1) = m(j - 1, i - 1) = t[2].get<double>();
  }
}

const char* colour_of(PhaseClass phase) {
  switch (phase) {
    case PhaseClass::kPlusOne:
      return "red";
    case PhaseClass::kMinusOne:
      return "blue";
    case PhaseClass::kPlusI:
      return "purple";
    case PhaseClass::kMinusI:
      return "green";
    case PhaseClass::kMixed:
      return "gray";
  }
  return "gray";
}

std::string describe_stage(const Stage& stage) {
  std::string out;
  for (std::size_t i = 0; i < stage.pairs.size(); ++i) {
    if (i) out += " ";
    out += "(" + std::to_string(stage.pairs[i].first) + "," +
           std::to_string(stage.pairs[i].second) + ")";
  }
  return out;
}

void render_analysis(std::ostream& os, const AnalysisReport& report,
                     const AnalysisOptions& options) {
  const PhasedState& ph = report.phased;
  os << "closest CVCS search: " << to_string(options.search.mode) << "\n";
  os << "  phase-shifted modes (-pi/2): {" << join(ph.subset) << "}\n";
  os << "  approximation error (spectral norm of Im Z'): " << fmt(ph.error, "%.6e") << "\n";
  os << "  largest Im Z' eigenvalues:";
  const std::size_t top = std::min<std::size_t>(5, ph.im_eigenvalues.size());
  for (std::size_t k = 0; k < top; ++k)
    os << " " << fmt(ph.im_eigenvalues[ph.im_eigenvalues.size() - 1 - k], "%.4e");
  os << "\n\n";

  const EdgeClassification& cls = report.classification;
  os << "edges with |z_ij| >= " << fmt(cls.threshold) << ": " << cls.edges.size() << "\n";
  for (const Edge& e : cls.edges) {
    os << "  (" << e.i << "," << e.j << ")  " << fmt_complex(e.weight)
       << "  |w|=" << fmt(e.magnitude, "%.4f") << "  class " << to_string(e.phase) << "\n";
  }
  double loop_min = INFINITY, loop_max = -INFINITY;
  for (const SelfLoop& l : cls.self_loops) {
    loop_min = std::min(loop_min, l.weight.imag());
    loop_max = std::max(loop_max, l.weight.imag());
  }
  os << "self loops: Im in [" << fmt(loop_min, "%.4g") << ", " << fmt(loop_max, "%.4g") << "]\n\n";

  os << "components of Re Z' at threshold " << fmt(cls.threshold) << ": "
     << report.components.size() << "\n";
  for (const auto& c : report.components) os << "  {" << join(c) << "}\n";
  os << "\n";

  if (report.target) {
    const TargetComparison& t = *report.target;
    os << "target comparison (uniform-weight interaction graph):\n";
    os << "  best scale c = " << fmt(t.scale, "%.6f") << ", residual = " << fmt(t.residual, "%.6f")
       << ", relative residual = " << fmt(t.relative_residual, "%.6f") << "\n";
    os << "  largest off-target |Re z_ij| = " << fmt(t.max_off_target, "%.6f") << "\n";
    os << "  shape: " << (t.match ? "MATCH" : "MISMATCH") << " (tolerance " << fmt(t.tolerance)
       << ")\n\n";
  }

  const Usefulness& v = report.verdict;
  os << "usefulness:\n";
  os << "  (1) real part is a connected graph: " << (v.connected ? "yes" : "no") << " ("
     << report.components.size() << " component" << (report.components.size() == 1 ? "" : "s")
     << ")\n";
  os << "  (2) small imaginary part (error <= " << fmt(v.im_tolerance)
     << "): " << (v.small_imaginary ? "yes" : "no") << "\n";
  os << "  verdict: " << (v.useful() ? "approximate useful CVCS" : "not known to be useful")
     << "\n";
}

}  // namespace

double squeezing_db(double r) { return 20.0 * r / std::numbers::ln10; }

// ---------------------------------------------------------------------------
// JSON export

GraphExport make_export(const GraphZ& z, ExportMetadata metadata) {
  std::vector<int> labels(z.n());
  for (int k = 0; k < z.n(); ++k) labels[k] = k + 1;
  return GraphExport{kExportSchemaVersion, z, std::move(labels), std::move(metadata)};
}

std::string to_json(const GraphExport& graph) {
  const ExportMetadata& m = graph.metadata;
  json meta;
  meta["state"] = m.state;
  if (m.scenario) meta["scenario"] = json::parse(serialize_scenario_config(*m.scenario));
  if (m.r) meta["r"] = *m.r;
  if (m.db) meta["db"] = *m.db;
  if (m.search) meta["search"] = *m.search;
  meta["subset"] = m.subset;
  if (m.error) meta["error"] = *m.error;
  meta["spectrum"] = m.spectrum;
  meta["components"] = m.components;
  if (m.threshold) meta["threshold"] = *m.threshold;
  meta["conventions"] = conventions_json();
  meta["notes"] = m.notes;

  json j;
  j["schema_version"] = graph.schema_version;
  j["n"] = graph.z.n();
  j["labels"] = graph.labels;
  j["re_edges"] = triplets(graph.z.re());
  j["im_edges"] = triplets(graph.z.im());
  j["metadata"] = std::move(meta);
  return j.dump(2) + "\n";
}

GraphExport graph_export_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("graph export: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("graph export must be a JSON object");
  try {
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer()) {
      throw ConfigError("graph export: missing integer schema_version");
    }
    const int version = j.at("schema_version").get<int>();
    if (version != kExportSchemaVersion) {
      throw ConfigError("graph export: unknown schema_version " + std::to_string(version));
    }
    if (!j.contains("n") || !j.at("n").is_number_integer() || j.at("n").get<int>() < 1) {
      throw ConfigError("graph export: \"n\" must be a positive integer");
    }
    const int n = j.at("n").get<int>();
    RealMatrix re = RealMatrix::Zero(n, n), im = RealMatrix::Zero(n, n);
    fill_triplets(j.at("re_edges"), n, re, "re_edges");
    fill_triplets(j.at("im_edges"), n, im, "im_edges");
    ComplexMatrix z(n, n);
    z.real() = re;
    z.imag() = im;

    GraphExport out = make_export(GraphZ(std::move(z)));
    if (j.contains("labels")) out.labels = j.at("labels").get<std::vector<int>>();
    if (static_cast<int>(out.labels.size()) != n)
      throw ConfigError("graph export: labels length differs from n");

    if (j.contains("metadata")) {
      const json& meta = j.at("metadata");
      ExportMetadata& m = out.metadata;
      m.state = meta.value("state", std::string("closest_cvcs"));
      if (meta.contains("scenario")) m.scenario = parse_scenario_config(meta.at("scenario").dump());
      if (meta.contains("r")) m.r = meta.at("r").get<double>();
      if (meta.contains("db")) m.db = meta.at("db").get<double>();
      if (meta.contains("search")) m.search = meta.at("search").get<std::string>();
      if (meta.contains("subset")) m.subset = meta.at("subset").get<std::vector<int>>();
      if (meta.contains("error")) m.error = meta.at("error").get<double>();
      if (meta.contains("spectrum")) m.spectrum = meta.at("spectrum").get<std::vector<double>>();
      if (meta.contains("components")) m.components = meta.at("components").get<Partition>();
      if (meta.contains("threshold")) m.threshold = meta.at("threshold").get<double>();
      if (meta.contains("notes")) m.notes = meta.at("notes").get<std::vector<std::string>>();
    }
    return out;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("graph export: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("graph export: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// DOT

std::string export_dot(const GraphExport& graph, double threshold) {
  const EdgeClassification cls = classify_edges(graph.z, threshold);
  std::ostringstream os;
  os << "graph Z {\n";
  os << "  // schema_version " << graph.schema_version << ", state " << graph.metadata.state
     << "\n";
  os << "  // colours: +1 red, -1 blue, +i purple, -i green, mixed gray; threshold "
     << fmt(threshold) << "\n";
  os << "  // " << Conventions::kTmsSign << "\n";
  os << "  node [shape=circle];\n";
  for (int k = 0; k < graph.z.n(); ++k) os << "  " << graph.labels[k] << ";\n";
  for (const SelfLoop& l : cls.self_loops) {
    os << "  " << graph.labels[l.mode - 1] << " -- " << graph.labels[l.mode - 1] << " [re=\""
       << fmt(l.weight.real(), "%.17g") << "\", im=\"" << fmt(l.weight.imag(), "%.17g")
       << "\", magnitude=\"" << fmt(std::abs(l.weight), "%.17g") << "\", phase=\""
       << to_string(l.phase) << "\", color=\"" << colour_of(l.phase) << "\", self_loop=true];\n";
  }
  for (const Edge& e : cls.edges) {
    os << "  " << graph.labels[e.i - 1] << " -- " << graph.labels[e.j - 1] << " [re=\""
       << fmt(e.weight.real(), "%.17g") << "\", im=\"" << fmt(e.weight.imag(), "%.17g")
       << "\", magnitude=\"" << fmt(e.magnitude, "%.17g") << "\", phase=\"" << to_string(e.phase)
       << "\", color=\"" << colour_of(e.phase) << "\", penwidth=\""
       << fmt(1.0 + 4.0 * std::min(e.magnitude, 1.0), "%.3f") << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Scenario runs

RunResult run_scenario(const ScenarioConfig& config, const AnalysisOptions& options) {
  Schedule schedule = build_schedule(config);
  RealMatrix target = schedule.interaction_graph();
  std::vector<std::string> notes;
  if (config.kind == ScenarioKind::kLattice) notes.emplace_back(kLatticeScheduleNote);

  std::optional<GraphZ> hgraph;
  try {
    hgraph = run_schedule(schedule);
  } catch (const NumericalDegeneracy& e) {
    notes.push_back(std::string("H-graph state not exported: ") + e.what());
  }

  PhasedState phased = closest_cvcs(schedule_symplectic(schedule), options.search);
  AnalysisReport report = analyze(std::move(phased), target, options);
  return RunResult{
      config,          std::move(schedule), std::move(hgraph), std::move(target), std::move(report),
      std::move(notes)};
}

GraphExport export_closest(const RunResult& run, const AnalysisOptions& options) {
  ExportMetadata m;
  m.state = "closest_cvcs";
  m.scenario = run.config;
  m.r = run.config.r;
  m.db = squeezing_db(run.config.r);
  m.search = std::string(to_string(options.search.mode));
  m.subset = run.report.phased.subset;
  m.error = run.report.phased.error;
  m.spectrum = run.report.phased.im_eigenvalues;
  m.components = run.report.components;
  m.threshold = options.threshold;
  m.notes = run.notes;
  return make_export(run.report.phased.z_prime, std::move(m));
}

std::optional<GraphExport> export_hgraph(const RunResult& run) {
  if (!run.hgraph) return std::nullopt;
  ExportMetadata m;
  m.state = "hgraph";
  m.scenario = run.config;
  m.r = run.config.r;
  m.db = squeezing_db(run.config.r);
  m.notes = run.notes;
  return make_export(*run.hgraph, std::move(m));
}

std::string render_text_report(const RunResult& run, const AnalysisOptions& options) {
  std::ostringstream os;
  const ScenarioConfig& c = run.config;
  os << "scenario: " << to_string(c.kind);
  if (c.kind == ScenarioKind::kLadder) os << " p=" << *c.p;
  if (c.kind == ScenarioKind::kLattice) os << " " << *c.rows << "x" << *c.cols;
  os << "  modes=" << run.schedule.n() << "  gates=" << run.schedule.gate_count() << "\n";
  os << "squeezing: r=" << fmt(c.r) << " (" << fmt(squeezing_db(c.r), "%.2f")
     << " dB, dB = 10 log10(e^{2r}))\n";
  os << "conventions: " << Conventions::kTmsSign << "; " << Conventions::kPhaseAlphabet << "\n";
  for (const std::string& note : run.notes) os << "note: " << note << "\n";
  os << "\nstages (applied in order to the vacuum):\n";
  for (std::size_t s = 0; s < run.schedule.stages().size(); ++s) {
    const Stage& stage = run.schedule.stages()[s];
    os << "  " << s + 1 << ". r=" << fmt(stage.r) << "  " << describe_stage(stage) << "\n";
  }
  os << "\n";
  render_analysis(os, run.report, options);
  return os.str();
}

std::string render_text_report(const AnalysisReport& report, const AnalysisOptions& options,
                               std::string_view source) {
  std::ostringstream os;
  os << "source: " << source << "  modes=" << report.phased.z_prime.n() << "\n";
  os << "conventions: " << Conventions::kTmsSign << "; " << Conventions::kPhaseAlphabet << "\n\n";
  render_analysis(os, report, options);
  return os.str();
}

// ---------------------------------------------------------------------------
// Sweeps

std::vector<SweepRow> sweep(const ScenarioConfig& config, std::span<const double> rs,
                            const AnalysisOptions& options) {
  if (rs.empty()) throw InvalidArgument("sweep: need at least one r value");
  std::vector<SweepRow> rows;
  rows.reserve(rs.size());
  for (double r : rs) {
    ScenarioConfig c = config;
    c.override_r(r);
    const Schedule schedule = build_schedule(c);
    const PhasedState phased = closest_cvcs(schedule_symplectic(schedule), options.search);
    const Partition comps = connected_components(phased.z_prime, options.threshold);
    rows.push_back({r, squeezing_db(r), phased.error, static_cast<int>(comps.size())});
  }
  return rows;
}

std::string render_sweep_table(std::span<const SweepRow> rows) {
  std::ostringstream os;
  os << "        r       dB         error  components\n";
  for (const SweepRow& row : rows) {
    char line[128];
    std::snprintf(line, sizeof line, "%9.4f %8.3f %13.6e %11d\n", row.r, row.db, row.error,
                  row.components);
    os << line;
  }
  return os.str();
}

std::string sweep_to_json(std::span<const SweepRow> rows) {
  json out = json::array();
  for (const SweepRow& row : rows) {
    out.push_back(
        {{"r", row.r}, {"db", row.db}, {"error", row.error}, {"components", row.components}});
  }
  return out.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Files

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace cvcs
