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

#include "cvcs/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <thread>

#include "cvcs/errors.hpp"

namespace cvcs {
namespace {

// A state written as Z = Q P^{-1} together with the real symmetric form
// H = (P^dag Q - Q^dag P) / 2i, so that Im Z = P^{-dag} H P^{-1}. For a
// symplectic S acting on the vacuum P = A + iB, Q = C + iD and H = I; for a
// plain graph P = I, Q = Z and H = Im Z. Rotating mode k by -pi/2 maps
// (q_k, p_k) -> (-p_k, q_k), which swaps row k of P with minus row k of Q and
// leaves H unchanged.
struct Frame {
  ComplexMatrix p;
  ComplexMatrix q;
  /// Empty when H = I.
  std::optional<RealMatrix> form;

  int n() const { return static_cast<int>(p.rows()); }
};

Frame frame_of(const GraphZ& z) { return {ComplexMatrix::Identity(z.n(), z.n()), z.z(), z.im()}; }

Frame frame_of(const Symplectic& s) {
  const Complex i(0.0, 1.0);
  return {s.a().cast<Complex>() + i * s.b().cast<Complex>(),
          s.c().cast<Complex>() + i * s.d().cast<Complex>(), std::nullopt};
}

using Membership = std::vector<char>;

std::vector<int> labels_of(const Membership& in_subset) {
  std::vector<int> labels;
  for (std::size_t k = 0; k < in_subset.size(); ++k)
    if (in_subset[k]) labels.push_back(static_cast<int>(k) + 1);
  return labels;
}

Membership membership_of_mask(std::uint64_t mask, int n) {
  Membership m(n, 0);
  for (int k = 0; k < n; ++k) m[k] = static_cast<char>((mask >> k) & 1u);
  return m;
}

// Errors agreeing to ~1.5e-11 relative compare equal; everything after that
// is a total order, so the reduction is independent of evaluation order.
std::uint64_t quantize(double error) {
  if (!(error >= 0.0) || !std::isfinite(error)) return std::numeric_limits<std::uint64_t>::max();
  return (std::bit_cast<std::uint64_t>(error) + (std::uint64_t{1} << 15)) >> 16;
}

class SubsetEvaluator {
 public:
  explicit SubsetEvaluator(const Frame& frame)
      : frame_(frame),
        mt_(frame.n(), frame.n()),
        nt_(frame.n(), frame.n()),
        lu_(frame.n()),
        eig_(frame.n()),
        svd_(frame.n(), frame.n()) {}

  // Symmetrized Z' for the given membership.
  const ComplexMatrix& phased(const Membership& in_subset) {
    fill(in_subset);
    lu_.compute(mt_);
    const double rcond = lu_.rcond();
    if (!(rcond * kMaxConditionNumber >= 1.0)) {
      std::ostringstream os;
      os << "closest_cvcs: phase-shift update is numerically singular for subset {";
      const auto labels = labels_of(in_subset);
      for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
      os << "} (estimated condition number " << (rcond > 0 ? 1.0 / rcond : INFINITY) << ")";
      throw NumericalDegeneracy(os.str());
    }
    zt_ = lu_.solve(nt_);
    z_ = (zt_ + zt_.transpose()) * 0.5;
    return z_;
  }

  // Eigenvalues of Im Z', ascending. With H = I they are 1 / sigma_k(M)^2,
  // which keeps the tiny ones accurate for strongly squeezed states.
  std::vector<double> im_eigenvalues(const Membership& in_subset) {
    std::vector<double> out(frame_.n());
    if (!frame_.form) {
      fill(in_subset);
      svd_.compute(mt_);
      const auto& sv = svd_.singularValues();  // descending
      for (int k = 0; k < frame_.n(); ++k) out[k] = 1.0 / (sv(k) * sv(k));
      return out;
    }
    im_part(in_subset);
    eig_.compute(im_, Eigen::EigenvaluesOnly);
    if (eig_.info() != Eigen::Success)
      throw NumericalDegeneracy("closest_cvcs: eigensolver failed");
    for (int k = 0; k < frame_.n(); ++k) out[k] = eig_.eigenvalues()(k);
    return out;
  }

  // Largest eigenvalue of Im Z' = X^dag H X with X = M^{-1}. Z' itself is
  // never formed, so ill-conditioned losing candidates cost nothing in
  // accuracy.
  double error(const Membership& in_subset) {
    im_part(in_subset);
    if (!im_.allFinite()) return std::numeric_limits<double>::infinity();
    eig_.compute(im_, Eigen::EigenvaluesOnly);
    if (eig_.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const auto& ev = eig_.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(frame_.n() - 1)));
  }

 private:
  void im_part(const Membership& in_subset) {
    fill(in_subset);
    lu_.compute(mt_);
    x_ = lu_.inverse().transpose();
    if (frame_.form) {
      im_ = (x_.adjoint() * (*frame_.form).cast<Complex>() * x_).real();
    } else {
      im_ = (x_.adjoint() * x_).real();
    }
  }

  void fill(const Membership& in_subset) {
    const int n = frame_.n();
    for (int k = 0; k < n; ++k) {
      if (in_subset[k]) {
        mt_.col(k) = -frame_.q.row(k).transpose();
        nt_.col(k) = frame_.p.row(k).transpose();
      } else {
        mt_.col(k) = frame_.p.row(k).transpose();
        nt_.col(k) = frame_.q.row(k).transpose();
      }
    }
  }

  const Frame& frame_;
  ComplexMatrix mt_;
  ComplexMatrix nt_;
  ComplexMatrix zt_;
  ComplexMatrix z_;
  ComplexMatrix x_;
  RealMatrix im_;
  Eigen::PartialPivLU<ComplexMatrix> lu_;
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig_;
  Eigen::JacobiSVD<ComplexMatrix> svd_;
};

struct MaskCandidate {
  std::uint64_t key = std::numeric_limits<std::uint64_t>::max();
  int size = 0;
  std::uint64_t mask = 0;
  bool valid = false;
};

bool better(const MaskCandidate& a, const MaskCandidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.key != b.key) return a.key < b.key;
  if (a.size != b.size) return a.size < b.size;
  // Same size: the set holding the lowest differing label sorts first.
  const std::uint64_t diff = a.mask ^ b.mask;
  if (diff == 0) return false;
  return (a.mask & (diff & (~diff + 1))) != 0;
}

std::vector<int> exhaustive_search(const Frame& frame, unsigned threads) {
  const int n = frame.n();
  const std::uint64_t total = std::uint64_t{1} << n;
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(threads == 0 ? 1 : threads, 1, total));

  std::vector<MaskCandidate> best(workers);
  std::vector<std::exception_ptr> failures(workers);
  auto work = [&](unsigned w) {
    try {
      SubsetEvaluator eval(frame);
      const std::uint64_t begin = total * w / workers;
      const std::uint64_t end = total * (w + 1) / workers;
      Membership in_subset(n, 0);
      for (std::uint64_t mask = begin; mask < end; ++mask) {
        for (int k = 0; k < n; ++k) in_subset[k] = static_cast<char>((mask >> k) & 1u);
        MaskCandidate c{quantize(eval.error(in_subset)), std::popcount(mask), mask, true};
        if (better(c, best[w])) best[w] = c;
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  MaskCandidate winner;
  for (const auto& c : best)
    if (better(c, winner)) winner = c;
  return labels_of(membership_of_mask(winner.mask, n));
}

struct SetCandidate {
  std::uint64_t key = std::numeric_limits<std::uint64_t>::max();
  std::vector<int> labels;
};

bool better(const SetCandidate& a, const SetCandidate& b) {
  if (a.key != b.key) return a.key < b.key;
  if (a.labels.size() != b.labels.size()) return a.labels.size() < b.labels.size();
  return a.labels < b.labels;
}

std::vector<int> greedy_search(const Frame& frame) {
  const int n = frame.n();
  SubsetEvaluator eval(frame);
  Membership current(n, 0);
  SetCandidate incumbent{quantize(eval.error(current)), {}};
  for (;;) {
    SetCandidate best_move;
    int best_mode = -1;
    for (int k = 0; k < n; ++k) {
      current[k] ^= 1;
      SetCandidate c{quantize(eval.error(current)), labels_of(current)};
      current[k] ^= 1;
      if (best_mode < 0 || better(c, best_move)) {
        best_move = std::move(c);
        best_mode = k;
      }
    }
    if (best_mode < 0 || best_move.key >= incumbent.key) break;
    current[best_mode] ^= 1;
    incumbent = std::move(best_move);
  }
  return incumbent.labels;
}

PhasedState search(const Frame& frame, const SearchOptions& options) {
  const int n = frame.n();
  std::vector<int> subset;
  switch (options.mode) {
    case SearchMode::kExhaustive:
      if (n > kMaxExhaustiveModes) {
        throw InvalidArgument("closest_cvcs: exhaustive search is limited to " +
                              std::to_string(kMaxExhaustiveModes) + " modes (got " +
                              std::to_string(n) + "); use the greedy search mode");
      }
      subset = exhaustive_search(frame, options.threads);
      break;
    case SearchMode::kGreedy:
      subset = greedy_search(frame);
      break;
  }

  Membership in_subset(n, 0);
  for (int label : subset) in_subset[label - 1] = 1;
  SubsetEvaluator eval(frame);
  GraphZ z_prime(eval.phased(in_subset));
  std::vector<double> eigenvalues = eval.im_eigenvalues(in_subset);
  const double error = std::max(std::abs(eigenvalues.front()), std::abs(eigenvalues.back()));
  return PhasedState{std::move(subset), std::move(z_prime), error, std::move(eigenvalues)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Closest CVCS

std::string_view to_string(SearchMode mode) {
  return mode == SearchMode::kExhaustive ? "exhaustive" : "greedy";
}

SearchMode search_mode_from_string(std::string_view name) {
  if (name == "exhaustive") return SearchMode::kExhaustive;
  if (name == "greedy") return SearchMode::kGreedy;
  throw InvalidArgument("unknown search mode \"" + std::string(name) +
                        "\" (expected exhaustive or greedy)");
}

PhasedState closest_cvcs(const GraphZ& z, const SearchOptions& options) {
  return search(frame_of(z), options);
}

PhasedState closest_cvcs(const Symplectic& preparation, const SearchOptions& options) {
  return search(frame_of(preparation), options);
}

GraphZ apply_phase_subset(const GraphZ& z, std::span<const int> subset) {
  std::vector<double> thetas(z.n(), 0.0);
  for (int label : subset) {
    if (label < 1 || label > z.n())
      throw InvalidArgument("apply_phase_subset: mode label out of range");
    thetas[label - 1] = -std::numbers::pi / 2;
  }
  return apply_symplectic(phase_shift_symplectic(thetas), z);
}

ApproximationError approximation_error(const GraphZ& z) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(z.im(), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
    throw NumericalDegeneracy("approximation_error: eigensolver failed");
  const Eigen::VectorXd& ev = eig.eigenvalues();
  ApproximationError out;
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  out.spectral_norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return out;
}

// ---------------------------------------------------------------------------
// Edges and components

std::string_view to_string(PhaseClass phase) {
  switch (phase) {
    case PhaseClass::kPlusOne:
      return "+1";
    case PhaseClass::kMinusOne:
      return "-1";
    case PhaseClass::kPlusI:
      return "+i";
    case PhaseClass::kMinusI:
      return "-i";
    case PhaseClass::kMixed:
      return "mixed";
  }
  return "mixed";
}

PhaseClass phase_class(Complex weight) {
  if (weight == Complex(0.0, 0.0)) return PhaseClass::kMixed;
  constexpr double kPi = std::numbers::pi;
  constexpr double kBin = kPi / 8;
  const double arg = std::arg(weight);  // (-pi, pi]
  if (std::abs(arg) <= kBin) return PhaseClass::kPlusOne;
  if (kPi - std::abs(arg) <= kBin) return PhaseClass::kMinusOne;
  if (std::abs(arg - kPi / 2) <= kBin) return PhaseClass::kPlusI;
  if (std::abs(arg + kPi / 2) <= kBin) return PhaseClass::kMinusI;
  return PhaseClass::kMixed;
}

EdgeClassification classify_edges(const GraphZ& z, double threshold) {
  if (!(threshold >= 0.0)) throw InvalidArgument("classify_edges: threshold must be >= 0");
  EdgeClassification out;
  out.threshold = threshold;
  const int n = z.n();
  for (int i = 0; i < n; ++i) {
    const Complex w = z.z()(i, i);
    out.self_loops.push_back({i + 1, w, phase_class(w), std::abs(w) >= threshold});
    for (int j = i + 1; j < n; ++j) {
      const Complex e = z.z()(i, j);
      if (std::abs(e) >= threshold) {
        out.edges.push_back({i + 1, j + 1, e, std::abs(e), phase_class(e)});
      } else {
        out.below_threshold.emplace_back(i + 1, j + 1);
      }
    }
  }
  return out;
}

Partition connected_components(const RealMatrix& weights, double threshold) {
  if (weights.rows() != weights.cols())
    throw InvalidArgument("connected_components: matrix must be square");
  if (!(threshold >= 0.0)) throw InvalidArgument("connected_components: threshold must be >= 0");
  const int n = static_cast<int>(weights.rows());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(weights(i, j)) >= threshold) {
        const int a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  Partition out;
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[root]].push_back(i + 1);
  }
  return out;
}

Partition connected_components(const GraphZ& z, double threshold) {
  return connected_components(z.re(), threshold);
}

// ---------------------------------------------------------------------------
// Targets

RealMatrix target_graph(TargetKind kind, int dim1, int dim2) {
  if (kind == TargetKind::kLadder) {
    if (dim1 != 2 || dim2 < 2) {
      throw InvalidArgument("target_graph: ladder dims must be (2, rungs >= 2)");
    }
    const int n = 2 * dim2;
    const int p = n + 1;
    RealMatrix a = RealMatrix::Zero(n, n);
    for (int sum : {p, p - 2, p + 2}) {
      for (int k = 1; k <= n; ++k) {
        const int partner = sum - k;
        if (partner > k && partner <= n) a(k - 1, partner - 1) = a(partner - 1, k - 1) = 1.0;
      }
    }
    return a;
  }
  if (dim1 < 2 || dim2 < 2) throw InvalidArgument("target_graph: lattice dims must be >= 2");
  const int n = dim1 * dim2;
  RealMatrix a = RealMatrix::Zero(n, n);
  for (int row = 0; row < dim1; ++row) {
    for (int col = 0; col < dim2; ++col) {
      const int k = row * dim2 + col;
      if (col + 1 < dim2) a(k, k + 1) = a(k + 1, k) = 1.0;
      if (row + 1 < dim1) a(k, k + dim2) = a(k + dim2, k) = 1.0;
    }
  }
  return a;
}

TargetComparison compare_to_target(const GraphZ& z_prime, const RealMatrix& target,
                                   double tolerance) {
  if (target.rows() != z_prime.n() || target.cols() != z_prime.n()) {
    throw InvalidArgument("compare_to_target: target dimensions do not match the state");
  }
  const RealMatrix re = z_prime.re();
  TargetComparison out;
  out.tolerance = tolerance;
  const double norm_a2 = target.squaredNorm();
  out.scale = norm_a2 > 0 ? (re.cwiseProduct(target)).sum() / norm_a2 : 0.0;
  out.residual = (re - out.scale * target).norm();
  const double norm_re = re.norm();
  if (norm_re > 0) {
    out.relative_residual = out.residual / norm_re;
  } else {
    out.relative_residual = norm_a2 > 0 ? 1.0 : 0.0;
  }
  for (int i = 0; i < re.rows(); ++i)
    for (int j = 0; j < re.cols(); ++j)
      if (i != j && target(i, j) == 0.0)
        out.max_off_target = std::max(out.max_off_target, std::abs(re(i, j)));
  out.match = out.relative_residual <= tolerance && out.scale != 0.0;
  return out;
}

BipartiteSelfInverse is_bipartite_self_inverse(const RealMatrix& adjacency) {
  if (adjacency.rows() != adjacency.cols())
    throw InvalidArgument("is_bipartite_self_inverse: matrix must be square");
  const int n = static_cast<int>(adjacency.rows());
  BipartiteSelfInverse out;

  const double defect = (adjacency * adjacency - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  out.self_inverse = defect <= 1e-10;

  out.bipartite = true;
  std::vector<int> side(n, -1);
  std::string odd_cycle;
  for (int start = 0; start < n && out.bipartite; ++start) {
    if (side[start] >= 0) continue;
    side[start] = 0;
    std::queue<int> frontier;
    frontier.push(start);
    while (!frontier.empty() && out.bipartite) {
      const int u = frontier.front();
      frontier.pop();
      for (int v = 0; v < n; ++v) {
        if (adjacency(u, v) == 0.0) continue;
        if (u == v) {
          out.bipartite = false;
          odd_cycle = "self loop at mode " + std::to_string(u + 1);
          break;
        }
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          frontier.push(v);
        } else if (side[v] == side[u]) {
          out.bipartite = false;
          odd_cycle = "odd cycle through edge (" + std::to_string(u + 1) + "," +
                      std::to_string(v + 1) + ")";
          break;
        }
      }
    }
  }

  out.holds = out.bipartite && out.self_inverse;
  if (out.bipartite) out.side = std::move(side);
  if (!out.bipartite) {
    out.violation = "not bipartite: " + odd_cycle;
  } else if (!out.self_inverse) {
    std::ostringstream os;
    os << "not self-inverse: max |A^2 - I| = " << defect;
    out.violation = os.str();
  }
  return out;
}

GraphZ cz_apply(const GraphZ& z, const RealMatrix& adjacency) {
  if (adjacency.rows() != z.n() || adjacency.cols() != z.n()) {
    throw InvalidArgument("cz_apply: adjacency dimensions do not match the state");
  }
  return GraphZ(z.z() + adjacency.cast<Complex>());
}

AnalysisReport analyze(PhasedState phased, const std::optional<RealMatrix>& target,
                       const AnalysisOptions& options) {
  AnalysisReport report{std::move(phased), {}, {}, std::nullopt, {}};
  report.classification = classify_edges(report.phased.z_prime, options.threshold);
  report.components = connected_components(report.phased.z_prime, options.threshold);
  if (target)
    report.target = compare_to_target(report.phased.z_prime, *target, options.match_tolerance);
  report.verdict.connected = report.components.size() == 1;
  report.verdict.im_tolerance = options.im_tolerance;
  report.verdict.small_imaginary = report.phased.error <= options.im_tolerance;
  return report;
}

}  // namespace cvcs
