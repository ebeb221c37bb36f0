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

#include "cvcs/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <set>
#include <sstream>

#include "cvcs/errors.hpp"

namespace cvcs {
namespace {

using nlohmann::json;

std::string describe(const ModePair& pair) {
  std::ostringstream os;
  os << "(" << pair.first << "," << pair.second << ")";
  return os.str();
}

void validate_stages(int n, const std::vector<Stage>& stages) {
  for (std::size_t s = 0; s < stages.size(); ++s) {
    std::set<int> seen;
    if (!std::isfinite(stages[s].r)) {
      throw ConfigError("stage " + std::to_string(s + 1) + ": squeezing parameter must be finite");
    }
    for (const ModePair& pair : stages[s].pairs) {
      if (pair.first == pair.second) {
        throw ConfigError("stage " + std::to_string(s + 1) + ": pair " + describe(pair) +
                          " repeats a mode");
      }
      if (pair.first < 1 || pair.second > n) {
        throw ConfigError("stage " + std::to_string(s + 1) + ": pair " + describe(pair) +
                          " has a mode outside 1.." + std::to_string(n));
      }
      for (int mode : {pair.first, pair.second}) {
        if (!seen.insert(mode).second) {
          throw ConfigError("stage " + std::to_string(s + 1) + ": mode " + std::to_string(mode) +
                            " appears in more than one pair (pairs in a stage must be disjoint)");
        }
      }
    }
  }
}

int max_label(const std::vector<Stage>& stages) {
  int n = 0;
  for (const Stage& stage : stages)
    for (const ModePair& pair : stage.pairs) n = std::max(n, pair.second);
  return n;
}

ModePair parse_pair(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw ConfigError("each pair must be a two-element integer array, got " + j.dump());
  }
  const int a = j[0].get<int>();
  const int b = j[1].get<int>();
  if (a == b)
    throw ConfigError("pair [" + std::to_string(a) + "," + std::to_string(b) + "] repeats a mode");
  return ModePair(a, b);
}

Stage parse_stage(const json& j, double default_r) {
  Stage stage;
  stage.r = default_r;
  const json* pairs = &j;
  if (j.is_object()) {
    if (!j.contains("pairs")) throw ConfigError("stage object is missing \"pairs\"");
    pairs = &j.at("pairs");
    if (j.contains("r")) {
      if (!j.at("r").is_number()) throw ConfigError("stage \"r\" must be a number");
      stage.r = j.at("r").get<double>();
    }
  }
  if (!pairs->is_array()) throw ConfigError("stage pairs must be an array");
  for (const json& p : *pairs) stage.pairs.push_back(parse_pair(p));
  return stage;
}

std::optional<int> optional_int(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number_integer())
    throw ConfigError(std::string("\"") + key + "\" must be an integer");
  return j.at(key).get<int>();
}

}  // namespace

// ---------------------------------------------------------------------------
// Schedule

Schedule::Schedule(int n, std::vector<Stage> stages) : n_(n), stages_(std::move(stages)) {
  if (n_ < 2) throw ConfigError("a schedule needs at least two modes");
  validate_stages(n_, stages_);
}

int Schedule::gate_count() const {
  int count = 0;
  for (const Stage& stage : stages_) count += static_cast<int>(stage.pairs.size());
  return count;
}

std::vector<ModePair> Schedule::edges() const {
  std::set<ModePair> unique;
  for (const Stage& stage : stages_) unique.insert(stage.pairs.begin(), stage.pairs.end());
  return {unique.begin(), unique.end()};
}

RealMatrix Schedule::interaction_graph() const {
  RealMatrix a = RealMatrix::Zero(n_, n_);
  for (const ModePair& e : edges()) {
    a(e.first - 1, e.second - 1) = 1.0;
    a(e.second - 1, e.first - 1) = 1.0;
  }
  return a;
}

// ---------------------------------------------------------------------------
// ScenarioConfig

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kLadder:
      return "ladder";
    case ScenarioKind::kLattice:
      return "lattice";
    case ScenarioKind::kCustom:
      return "custom";
  }
  return "unknown";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
  if (name == "ladder") return ScenarioKind::kLadder;
  if (name == "lattice") return ScenarioKind::kLattice;
  if (name == "custom") return ScenarioKind::kCustom;
  throw ConfigError("unknown scenario kind \"" + std::string(name) +
                    "\" (expected ladder, lattice or custom)");
}

void ScenarioConfig::validate() const {
  if (schema_version != kScenarioSchemaVersion) {
    throw ConfigError("unsupported scenario schema_version " + std::to_string(schema_version));
  }
  if (!std::isfinite(r)) throw ConfigError("squeezing parameter r must be finite");
  switch (kind) {
    case ScenarioKind::kLadder:
      if (!p) throw ConfigError("ladder scenario requires \"p\"");
      if (*p < 5 || !is_prime(*p)) {
        throw ConfigError("ladder scenario requires an odd prime p >= 5, got " +
                          std::to_string(*p));
      }
      break;
    case ScenarioKind::kLattice:
      if (!rows || !cols) throw ConfigError("lattice scenario requires \"rows\" and \"cols\"");
      if (*rows < 2 || *cols < 2) {
        throw ConfigError("lattice scenario requires rows, cols >= 2, got " +
                          std::to_string(*rows) + "x" + std::to_string(*cols));
      }
      break;
    case ScenarioKind::kCustom: {
      if (stages.empty()) throw ConfigError("custom scenario has no gates: empty stage list");
      int gates = 0;
      for (const Stage& s : stages) gates += static_cast<int>(s.pairs.size());
      if (gates == 0) throw ConfigError("custom scenario has no gates: every stage is empty");
      const int n = modes.value_or(max_label(stages));
      if (modes && *modes < max_label(stages)) {
        throw ConfigError("\"modes\" = " + std::to_string(*modes) +
                          " is smaller than the largest mode label");
      }
      validate_stages(n, stages);
      break;
    }
  }
}

void ScenarioConfig::override_r(double value) {
  r = value;
  for (Stage& stage : stages) stage.r = value;
}

ScenarioConfig parse_scenario_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed scenario config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario config must be a JSON object");

  ScenarioConfig config;
  try {
    if (j.contains("schema_version")) {
      if (!j.at("schema_version").is_number_integer())
        throw ConfigError("\"schema_version\" must be an integer");
      config.schema_version = j.at("schema_version").get<int>();
    }
    if (!j.contains("kind") || !j.at("kind").is_string())
      throw ConfigError("scenario config requires string \"kind\"");
    config.kind = scenario_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("r")) {
      if (!j.at("r").is_number()) throw ConfigError("\"r\" must be a number");
      config.r = j.at("r").get<double>();
    }
    config.p = optional_int(j, "p");
    config.rows = optional_int(j, "rows");
    config.cols = optional_int(j, "cols");
    config.modes = optional_int(j, "modes");
    if (j.contains("stages")) {
      if (!j.at("stages").is_array()) throw ConfigError("\"stages\" must be an array");
      for (const json& s : j.at("stages")) config.stages.push_back(parse_stage(s, config.r));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid scenario config: ") + e.what());
  }
  config.validate();
  return config;
}

std::string serialize_scenario_config(const ScenarioConfig& config) {
  json j;
  j["schema_version"] = config.schema_version;
  j["kind"] = std::string(to_string(config.kind));
  j["r"] = config.r;
  if (config.p) j["p"] = *config.p;
  if (config.rows) j["rows"] = *config.rows;
  if (config.cols) j["cols"] = *config.cols;
  if (config.modes) j["modes"] = *config.modes;
  if (!config.stages.empty()) {
    json stages = json::array();
    for (const Stage& stage : config.stages) {
      json pairs = json::array();
      for (const ModePair& p : stage.pairs) pairs.push_back({p.first, p.second});
      stages.push_back({{"pairs", pairs}, {"r", stage.r}});
    }
    j["stages"] = stages;
  }
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Generators

bool is_prime(int value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (int d = 3; d * d <= value; d += 2)
    if (value % d == 0) return false;
  return true;
}

Schedule ladder_schedule(int p, double r) {
  if (p < 5 || !is_prime(p)) {
    throw ConfigError("ladder_schedule: p must be an odd prime >= 5, got " + std::to_string(p));
  }
  const int n = p - 1;
  std::vector<Stage> stages;
  for (int sum : {p, p - 2, p + 2}) {
    Stage stage;
    stage.r = r;
    for (int k = 1; k <= n; ++k) {
      const int partner = sum - k;
      if (partner > k && partner <= n) stage.pairs.emplace_back(k, partner);
    }
    stages.push_back(std::move(stage));
  }
  return Schedule(n, std::move(stages));
}

Schedule lattice_schedule(int rows, int cols, double r) {
  if (rows < 2 || cols < 2) {
    throw ConfigError("lattice_schedule: rows and cols must be >= 2, got " + std::to_string(rows) +
                      "x" + std::to_string(cols));
  }
  const int n = rows * cols;
  auto label = [cols](int row, int col) { return row * cols + col + 1; };

  std::vector<ModePair> edges;
  for (int row = 0; row < rows; ++row) {
    for (int col = 0; col < cols; ++col) {
      if (col + 1 < cols) edges.emplace_back(label(row, col), label(row, col + 1));
      if (row + 1 < rows) edges.emplace_back(label(row, col), label(row + 1, col));
    }
  }

  // Greedy colouring: each edge takes the lowest colour free at both ends.
  std::vector<std::vector<bool>> used(n + 1);
  std::vector<Stage> stages;
  for (const ModePair& e : edges) {
    std::size_t colour = 0;
    auto busy = [&](int mode) { return colour < used[mode].size() && used[mode][colour]; };
    while (busy(e.first) || busy(e.second)) ++colour;
    for (int mode : {e.first, e.second}) {
      if (used[mode].size() <= colour) used[mode].resize(colour + 1, false);
      used[mode][colour] = true;
    }
    if (stages.size() <= colour) stages.resize(colour + 1, Stage{{}, r});
    stages[colour].pairs.push_back(e);
  }
  return Schedule(n, std::move(stages));
}

Schedule build_schedule(const ScenarioConfig& config) {
  config.validate();
  switch (config.kind) {
    case ScenarioKind::kLadder:
      return ladder_schedule(*config.p, config.r);
    case ScenarioKind::kLattice:
      return lattice_schedule(*config.rows, *config.cols, config.r);
    case ScenarioKind::kCustom:
      return Schedule(config.modes.value_or(max_label(config.stages)), config.stages);
  }
  throw ConfigError("unknown scenario kind");
}

GraphZ run_schedule(const Schedule& schedule) {
  GraphZ z = vacuum_state(schedule.n());
  for (const Stage& stage : schedule.stages()) {
    for (const ModePair& pair : stage.pairs) {
      z = apply_symplectic(tms_symplectic(schedule.n(), pair.first, pair.second, stage.r), z);
    }
  }
  return z;
}

Symplectic schedule_symplectic(const Schedule& schedule) {
  Symplectic total = Symplectic::identity(schedule.n());
  for (const Stage& stage : schedule.stages()) {
    for (const ModePair& pair : stage.pairs) {
      total = tms_symplectic(schedule.n(), pair.first, pair.second, stage.r) * total;
    }
  }
  return total;
}

}  // namespace cvcs
