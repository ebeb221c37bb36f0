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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cvcs/analysis.hpp"
#include "cvcs/errors.hpp"
#include "support.hpp"

namespace cvcs {
namespace {

using testing::max_abs_diff;

std::vector<ModePair> pairs_of(const Stage& stage) { return stage.pairs; }

bool is_matching(const Stage& stage) {
  std::set<int> seen;
  for (const ModePair& p : stage.pairs) {
    if (!seen.insert(p.first).second || !seen.insert(p.second).second) return false;
  }
  return true;
}

std::set<ModePair> target_edges(const RealMatrix& a) {
  std::set<ModePair> edges;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != 0.0) edges.emplace(i + 1, j + 1);
  return edges;
}

TEST(Ladder, SeventeenHasThreeStagesOfSums) {
  const Schedule s = ladder_schedule(17, 0.5);
  EXPECT_EQ(s.n(), 16);
  ASSERT_EQ(s.stages().size(), 3u);
  const int sums[3] = {17, 15, 19};
  const std::size_t sizes[3] = {8, 7, 7};
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(s.stages()[k].pairs.size(), sizes[k]);
    for (const ModePair& p : s.stages()[k].pairs) EXPECT_EQ(p.first + p.second, sums[k]);
  }
  EXPECT_EQ(s.gate_count(), 22);
  EXPECT_EQ(s.stages()[0].pairs.front(), ModePair(1, 16));
  EXPECT_EQ(s.stages()[0].pairs.back(), ModePair(8, 9));
  EXPECT_EQ(s.stages()[1].pairs.front(), ModePair(1, 14));
  EXPECT_EQ(s.stages()[1].pairs.back(), ModePair(7, 8));
  EXPECT_EQ(s.stages()[2].pairs.front(), ModePair(3, 16));
  EXPECT_EQ(s.stages()[2].pairs.back(), ModePair(9, 10));
}

TEST(Ladder, FiveEnumeratesDirectly) {
  const Schedule s = ladder_schedule(5, 0.2);
  ASSERT_EQ(s.stages().size(), 3u);
  EXPECT_EQ(pairs_of(s.stages()[0]), (std::vector<ModePair>{{1, 4}, {2, 3}}));
  EXPECT_EQ(pairs_of(s.stages()[1]), (std::vector<ModePair>{{1, 2}}));
  EXPECT_EQ(pairs_of(s.stages()[2]), (std::vector<ModePair>{{3, 4}}));
}

TEST(Ladder, EdgeUnionIsTwoByEightLadder) {
  for (int p : {5, 7, 11, 13, 17}) {
    const Schedule s = ladder_schedule(p, 0.3);
    const std::vector<ModePair> edges = s.edges();
    EXPECT_EQ(std::set<ModePair>(edges.begin(), edges.end()),
              target_edges(target_graph(TargetKind::kLadder, 2, (p - 1) / 2)))
        << "p=" << p;
  }
}

TEST(Ladder, RejectsNonPrimes) {
  EXPECT_THROW(ladder_schedule(16, 0.1), ConfigError);
  EXPECT_THROW(ladder_schedule(15, 0.1), ConfigError);
  EXPECT_THROW(ladder_schedule(2, 0.1), ConfigError);
}

TEST(Lattice, FourByFourColouring) {
  const Schedule s = lattice_schedule(4, 4, 0.2);
  EXPECT_EQ(s.n(), 16);
  EXPECT_EQ(s.gate_count(), 24);
  for (const Stage& stage : s.stages()) EXPECT_TRUE(is_matching(stage));
  const std::vector<ModePair> edges = s.edges();
  EXPECT_EQ(std::set<ModePair>(edges.begin(), edges.end()),
            target_edges(target_graph(TargetKind::kLattice, 4, 4)));
}

TEST(Lattice, TwoByEightIsLadderShaped) {
  const Schedule s = lattice_schedule(2, 8, 0.2);
  EXPECT_EQ(s.gate_count(), 22);
  const RealMatrix a = s.interaction_graph();
  EXPECT_EQ(a.sum(), 44.0);
}

TEST(Lattice, SquareNeedsTwoStages) {
  const Schedule s = lattice_schedule(2, 2, 0.2);
  ASSERT_EQ(s.stages().size(), 2u);
  for (const Stage& stage : s.stages()) EXPECT_EQ(stage.pairs.size(), 2u);
}

TEST(Lattice, RejectsDegenerateGrids) {
  EXPECT_THROW(lattice_schedule(1, 1, 0.2), ConfigError);
  EXPECT_THROW(lattice_schedule(0, 4, 0.2), ConfigError);
}

TEST(Schedule, RejectsOverlapAndRange) {
  EXPECT_THROW(Schedule(4, {Stage{{{1, 2}, {2, 3}}, 0.1}}), ConfigError);
  EXPECT_THROW(Schedule(4, {Stage{{{1, 5}}, 0.1}}), ConfigError);
  EXPECT_THROW(Schedule(4, {Stage{{{0, 1}}, 0.1}}), ConfigError);
  EXPECT_THROW(Schedule(1, {}), ConfigError);
}

TEST(Config, LadderParses) {
  const ScenarioConfig c =
      parse_scenario_config(R"({"schema_version": 1, "kind": "ladder", "p": 17, "r": 4.15})");
  EXPECT_EQ(c.kind, ScenarioKind::kLadder);
  EXPECT_EQ(*c.p, 17);
  EXPECT_DOUBLE_EQ(c.r, 4.15);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(build_schedule(c).gate_count(), 22);
}

TEST(Config, CustomStagesBothForms) {
  const ScenarioConfig c = parse_scenario_config(
      R"({"kind": "custom", "modes": 4, "r": 0.3, "stages": [{"pairs": [[1, 2], [3, 4]], "r": 0.5}, [[2, 3]]]})");
  const Schedule s = build_schedule(c);
  ASSERT_EQ(s.stages().size(), 2u);
  EXPECT_DOUBLE_EQ(s.stages()[0].r, 0.5);
  EXPECT_DOUBLE_EQ(s.stages()[1].r, 0.3);
}

TEST(Config, RoundTripsThroughSerialization) {
  const ScenarioConfig c = parse_scenario_config(
      R"({"kind": "custom", "modes": 5, "r": 0.3, "stages": [{"pairs": [[1, 2], [3, 5]], "r": 0.5}]})");
  const ScenarioConfig back = parse_scenario_config(serialize_scenario_config(c));
  EXPECT_EQ(serialize_scenario_config(back), serialize_scenario_config(c));
  EXPECT_EQ(back.stages.size(), 1u);
  EXPECT_EQ(*back.modes, 5);
}

TEST(Config, Errors) {
  auto fails = [](const std::string& text, const std::string& fragment) {
    try {
      build_schedule(parse_scenario_config(text));
    } catch (const ConfigError& e) {
      return std::string(e.what()).find(fragment) != std::string::npos;
    }
    return false;
  };
  EXPECT_TRUE(fails(R"({"kind": "custom", "r": 0.1, "stages": [[[3, 1], [3, 2]]]})", "3"));
  EXPECT_TRUE(fails(R"({"kind": "custom", "r": 0.1, "stages": []})", "no gates"));
  EXPECT_TRUE(fails(R"({"kind": "ladder", "p": 16, "r": 0.1})", "16"));
  EXPECT_TRUE(fails(R"({"kind": "lattice", "rows": 4, "r": 0.1})", "cols"));
  EXPECT_TRUE(fails(R"({"kind": "moebius", "r": 0.1})", "moebius"));
  EXPECT_TRUE(
      fails(R"({"kind": "ladder", "p": 17, "r": 0.1, "schema_version": 9})", "schema_version"));
  EXPECT_TRUE(fails(R"({"kind": "ladder", "p": 17)", "malformed"));
}

TEST(Config, OverrideRAppliesToStages) {
  ScenarioConfig c = parse_scenario_config(
      R"({"kind": "custom", "r": 0.1, "stages": [{"pairs": [[1, 2]], "r": 0.7}]})");
  c.override_r(2.0);
  EXPECT_DOUBLE_EQ(build_schedule(c).stages()[0].r, 2.0);
}

TEST(RunSchedule, SingleStageIsTwoModeSqueezer) {
  const Schedule s(2, {Stage{{{1, 2}}, 0.8}});
  EXPECT_LT(max_abs_diff(run_schedule(s).z(),
                         apply_symplectic(tms_symplectic(2, 1, 2, 0.8), vacuum_state(2)).z()),
            1e-14);
}

TEST(RunSchedule, ZeroSqueezingLadderIsVacuum) {
  EXPECT_EQ(max_abs_diff(run_schedule(ladder_schedule(17, 0.0)).z(), vacuum_state(16).z()), 0.0);
}

TEST(RunSchedule, LowSqueezingLadderMatchesOracle) {
  const Schedule s = ladder_schedule(17, 0.15);
  const GraphZ z = run_schedule(s);
  // Two-mode squeezers from the vacuum only ever produce H-graph states.
  EXPECT_EQ(z.re().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GT(z.im().cwiseAbs().maxCoeff() - 1.0, 1e-2);
  EXPECT_LT(max_abs_diff(z.z(), testing::oracle_graph_50(s)), 1e-10);
}

TEST(RunSchedule, ComposedSymplecticGivesSameState) {
  for (double r : {0.15, 1.0}) {
    const Schedule s = lattice_schedule(3, 3, r);
    const GraphZ stepwise = run_schedule(s);
    const GraphZ composed = apply_symplectic(schedule_symplectic(s), vacuum_state(9));
    EXPECT_LT(max_abs_diff(stepwise.z(), composed.z()),
              1e-10 * std::max(1.0, testing::max_abs(composed.z())));
  }
}

TEST(RunSchedule, InvariantUnderPermutationWithinStages) {
  std::mt19937_64 rng(5);
  for (const Schedule& base :
       {ladder_schedule(17, 0.15), ladder_schedule(13, 1.0), lattice_schedule(4, 4, 0.4)}) {
    const GraphZ reference = run_schedule(base);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Stage> stages = base.stages();
      for (Stage& stage : stages) std::shuffle(stage.pairs.begin(), stage.pairs.end(), rng);
      const GraphZ permuted = run_schedule(Schedule(base.n(), stages));
      EXPECT_LE(max_abs_diff(permuted.z(), reference.z()), 1e-10);
    }
  }
}

TEST(RunSchedule, ReversingLadderStagesChangesState) {
  for (double r : {0.15, 1.0}) {
    const Schedule base = ladder_schedule(17, r);
    std::vector<Stage> reversed(base.stages().rbegin(), base.stages().rend());
    EXPECT_GE(max_abs_diff(run_schedule(Schedule(16, reversed)).z(), run_schedule(base).z()), 1e-3)
        << "r=" << r;
  }
}

}  // namespace
}  // namespace cvcs
