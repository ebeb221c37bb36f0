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

// Travel-scenario gate schedules: ordered stages of simultaneous two-mode
// squeezers acting on disjoint mode pairs, starting from the vacuum.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cvcs/gaussian.hpp"

namespace cvcs {

/// Unordered pair of 1-based mode labels, stored with first < second.
struct ModePair {
  int first = 0;
  int second = 0;

  ModePair() = default;
  ModePair(int a, int b) : first(a < b ? a : b), second(a < b ? b : a) {}

  friend auto operator<=>(const ModePair&, const ModePair&) = default;
};

struct Stage {
  std::vector<ModePair> pairs;
  double r = 0.0;
};

/// Ordered stages on n modes. Stage order is significant (gates in different
/// stages do not commute in general); pairs inside a stage are disjoint.
class Schedule {
 public:
  Schedule(int n, std::vector<Stage> stages);

  int n() const { return n_; }
  const std::vector<Stage>& stages() const { return stages_; }
  int gate_count() const;

  /// Union of all stage pairs, sorted and de-duplicated.
  std::vector<ModePair> edges() const;

  /// 0/1 adjacency of edges().
  RealMatrix interaction_graph() const;

 private:
  int n_;
  std::vector<Stage> stages_;
};

enum class ScenarioKind { kLadder, kLattice, kCustom };

std::string_view to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(std::string_view name);

inline constexpr int kScenarioSchemaVersion = 1;

/// Parsed scenario config. Ladder uses p, lattice uses rows/cols, custom uses
/// explicit stages (optionally with per-stage r and an explicit mode count).
struct ScenarioConfig {
  int schema_version = kScenarioSchemaVersion;
  ScenarioKind kind = ScenarioKind::kLadder;
  std::optional<int> p;
  std::optional<int> rows;
  std::optional<int> cols;
  double r = 0.0;
  std::optional<int> modes;
  std::vector<Stage> stages;

  /// Throws ConfigError when the fields are inconsistent with kind.
  void validate() const;

  /// Sets r on the config and on every custom stage.
  void override_r(double value);
};

/// Parses the JSON scenario schema:
///   {"schema_version": 1, "kind": "ladder"|"lattice"|"custom",
///    "p": 17, "rows": 4, "cols": 4, "r": 4.15, "modes": 16,
///    "stages": [{"pairs": [[1, 2], [3, 4]], "r": 0.5}, ...]}
/// A stage may also be written as a bare list of pairs.
ScenarioConfig parse_scenario_config(std::string_view text);

std::string serialize_scenario_config(const ScenarioConfig& config);

bool is_prime(int value);

/// Three stages on p - 1 modes: pairs with k + k' = p, then p - 2, then p + 2.
Schedule ladder_schedule(int p, double r);

/// rows x cols grid (row-major labels), edges split into stages by greedy
/// proper edge colouring over edges sorted by (row, col, direction) with the
/// rightward edge before the downward one. Stage index = colour index.
Schedule lattice_schedule(int rows, int cols, double r);

Schedule build_schedule(const ScenarioConfig& config);

/// Applies every gate of the schedule, stage by stage, to the vacuum through
/// successive linear-fractional updates of Z.
GraphZ run_schedule(const Schedule& schedule);

/// Product of all gate symplectics (later stages on the left). Applying it
/// to the vacuum once gives the same state as run_schedule, and keeps the
/// information needed to phase-shift strongly squeezed states accurately.
Symplectic schedule_symplectic(const Schedule& schedule);

}  // namespace cvcs
