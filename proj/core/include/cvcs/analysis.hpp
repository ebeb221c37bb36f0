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

// Closest continuous-variable cluster state (CVCS) search and the numbers
// used to judge whether a state is a useful cluster-state approximation.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cvcs/gaussian.hpp"

namespace cvcs {

enum class SearchMode { kExhaustive, kGreedy };

std::string_view to_string(SearchMode mode);
SearchMode search_mode_from_string(std::string_view name);

/// Largest mode count accepted by the exhaustive 2^n subset search.
inline constexpr int kMaxExhaustiveModes = 24;

struct SearchOptions {
  SearchMode mode = SearchMode::kExhaustive;
  /// Worker threads for the exhaustive search. The result does not depend
  /// on this value.
  unsigned threads = 1;
};

/// Result of the closest-CVCS search.
struct PhasedState {
  /// Sorted 1-based labels of the modes rotated by -pi/2.
  std::vector<int> subset;
  GraphZ z_prime;
  /// Spectral norm of Im(z_prime), computed from the phase-shifted frame
  /// rather than from the rounded z_prime.
  double error = 0.0;
  /// Eigenvalues of Im(z_prime), ascending, from the same frame.
  std::vector<double> im_eigenvalues;
};

/// Searches subsets T of modes, rotating each mode in T by -pi/2, for the
/// state whose Im(Z') has the smallest spectral norm. Ties (errors equal to
/// ~1e-11 relative) go to the smaller subset, then to the lexicographically
/// smaller sorted label list.
///
/// Exhaustive mode enumerates all 2^n subsets and refuses n > 24. Greedy mode
/// starts from the empty set and repeatedly toggles the single mode that
/// lowers the error most, stopping when no toggle helps.
PhasedState closest_cvcs(const GraphZ& z, const SearchOptions& options = {});

/// Same search for the state `preparation` applied to the vacuum. Each
/// candidate is evaluated from the composed symplectic, which stays accurate
/// for strongly squeezed states whose Z cannot be phase-shifted reliably in
/// double precision. Only the winning subset is turned into a graph matrix;
/// NumericalDegeneracy is thrown if that step is too ill-conditioned.
PhasedState closest_cvcs(const Symplectic& preparation, const SearchOptions& options = {});

/// Rotates the given 1-based modes by -pi/2.
GraphZ apply_phase_subset(const GraphZ& z, std::span<const int> subset);

struct ApproximationError {
  double spectral_norm = 0.0;
  std::vector<double> eigenvalues;  // of Im(Z), ascending
};

ApproximationError approximation_error(const GraphZ& z);

/// Nearest of {+1, -1, +i, -i} by argument within pi/8, else mixed.
enum class PhaseClass { kPlusOne, kMinusOne, kPlusI, kMinusI, kMixed };

std::string_view to_string(PhaseClass phase);
PhaseClass phase_class(Complex weight);

inline constexpr double kDefaultEdgeThreshold = 0.1;

struct Edge {
  int i = 0;
  int j = 0;
  Complex weight;
  double magnitude = 0.0;
  PhaseClass phase = PhaseClass::kMixed;
};

struct SelfLoop {
  int mode = 0;
  Complex weight;
  PhaseClass phase = PhaseClass::kMixed;
  bool above_threshold = false;
};

struct EdgeClassification {
  double threshold = 0.0;
  /// Off-diagonal entries with |z_ij| >= threshold, i < j, row-major order.
  std::vector<Edge> edges;
  /// Off-diagonal pairs below the threshold.
  std::vector<std::pair<int, int>> below_threshold;
  /// Every diagonal entry, flagged against the threshold.
  std::vector<SelfLoop> self_loops;
};

EdgeClassification classify_edges(const GraphZ& z, double threshold);

/// Node sets (1-based, each sorted; ordered by smallest member).
using Partition = std::vector<std::vector<int>>;

/// Components of the graph with an edge wherever |Re z_ij| >= threshold.
Partition connected_components(const GraphZ& z, double threshold);
Partition connected_components(const RealMatrix& weights, double threshold);

enum class TargetKind { kLadder, kLattice };

/// Uniform-weight target adjacency. Ladder: dims = (2, rungs), labelled like
/// ladder_schedule with p = 2 * rungs + 1 (mode k's rung partner is p - k).
/// Lattice: dims = (rows, cols), row-major labels.
RealMatrix target_graph(TargetKind kind, int dim1, int dim2);

inline constexpr double kDefaultMatchTolerance = 0.2;

struct TargetComparison {
  /// c minimizing ||Re Z' - c A||_F.
  double scale = 0.0;
  double residual = 0.0;
  /// residual / ||Re Z'||_F (0 when Re Z' vanishes and matches).
  double relative_residual = 0.0;
  /// Largest |Re z_ij|, i != j, where the target has no edge.
  double max_off_target = 0.0;
  double tolerance = kDefaultMatchTolerance;
  bool match = false;
};

TargetComparison compare_to_target(const GraphZ& z_prime, const RealMatrix& target,
                                   double tolerance = kDefaultMatchTolerance);

struct BipartiteSelfInverse {
  bool holds = false;
  bool bipartite = false;
  bool self_inverse = false;
  /// 0/1 side per mode when bipartite.
  std::vector<int> side;
  /// Empty when holds; otherwise names the violated condition.
  std::string violation;
};

BipartiteSelfInverse is_bipartite_self_inverse(const RealMatrix& adjacency);

/// Controlled-Z gates along a weighted graph: Z' = Z + A.
GraphZ cz_apply(const GraphZ& z, const RealMatrix& adjacency);

struct Usefulness {
  /// Condition (1): thresholded Re(Z') is one connected graph.
  bool connected = false;
  /// Condition (2): spectral norm of Im(Z') <= im_tolerance.
  bool small_imaginary = false;
  double im_tolerance = 0.0;
  bool useful() const { return connected && small_imaginary; }
};

struct AnalysisOptions {
  SearchOptions search;
  double threshold = kDefaultEdgeThreshold;
  double im_tolerance = 1e-2;
  double match_tolerance = kDefaultMatchTolerance;
};

struct AnalysisReport {
  PhasedState phased;
  EdgeClassification classification;
  Partition components;
  std::optional<TargetComparison> target;
  Usefulness verdict;
};

/// Bundles classification, components, optional target comparison and the
/// usefulness verdict for an already phase-optimized state.
AnalysisReport analyze(PhasedState phased, const std::optional<RealMatrix>& target,
                       const AnalysisOptions& options = {});

}  // namespace cvcs
