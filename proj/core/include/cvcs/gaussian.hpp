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

// Gaussian pure states in the graphical-calculus representation.
//
// Conventions used throughout the library:
//   * quadratures ordered (q_1..q_n, p_1..p_n), Omega = {0, I; -I, 0};
//   * vacuum variance 1/2 (hbar = 1), so the vacuum graph is Z = i I;
//   * wavefunction psi(q) ~ exp((i/2) q^T Z q), giving the update rule
//     Z' = (C + D Z)(A + B Z)^{-1} for a symplectic S = {A, B; C, D};
//   * two-mode squeezing generated by i(a_i^dag a_j^dag - a_i a_j).
//
// Mode indices in the public API are 1-based.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>

namespace cvcs {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Human-readable statement of the conventions above, stamped into exports.
struct Conventions {
  static constexpr const char* kQuadratureOrder = "(q1..qn, p1..pn), Omega = {0,I;-I,0}";
  static constexpr const char* kVacuumVariance = "1/2 (hbar = 1); vacuum Z = iI";
  static constexpr const char* kWavefunction = "psi(q) ~ exp((i/2) q^T Z q); Z' = (C+DZ)(A+BZ)^-1";
  static constexpr const char* kTmsSign =
      "generator i(a_i^dag a_j^dag - a_i a_j); A_ij = +sinh r, D_ij = -sinh r";
  static constexpr const char* kPhaseAlphabet = "per-mode phase shift in {0, -pi/2}";
};

/// Complex symmetric graph matrix Z = V + iU of an n-mode Gaussian pure state.
///
/// Construction checks squareness, finiteness and symmetry (to 1e-12 relative
/// to the largest entry) and stores the symmetrized matrix. Positivity of
/// Im(Z) is a physical requirement that cannot always be certified in double
/// precision for extremely squeezed states; query it with
/// has_positive_definite_imag().
class GraphZ {
 public:
  explicit GraphZ(ComplexMatrix z);

  int n() const { return static_cast<int>(z_.rows()); }
  const ComplexMatrix& z() const { return z_; }
  RealMatrix re() const { return z_.real(); }
  RealMatrix im() const { return z_.imag(); }

  /// Entry by 1-based mode labels.
  Complex at(int i, int j) const;

 private:
  ComplexMatrix z_;
};

bool has_positive_definite_imag(const GraphZ& z);

/// Real 2n x 2n symplectic matrix in (q, p) block form {A, B; C, D}.
class Symplectic {
 public:
  /// Validates shape and S Omega S^T = Omega to 1e-10 relative to max|S|^2.
  explicit Symplectic(RealMatrix s);

  static Symplectic identity(int n);

  int n() const { return static_cast<int>(s_.rows() / 2); }
  const RealMatrix& matrix() const { return s_; }

  RealMatrix a() const { return s_.topLeftCorner(n(), n()); }
  RealMatrix b() const { return s_.topRightCorner(n(), n()); }
  RealMatrix c() const { return s_.bottomLeftCorner(n(), n()); }
  RealMatrix d() const { return s_.bottomRightCorner(n(), n()); }

  /// Composition: (lhs * rhs) applies rhs first.
  friend Symplectic operator*(const Symplectic& lhs, const Symplectic& rhs);

  Symplectic inverse() const;

  /// max |S Omega S^T - Omega|.
  double residual() const;

 private:
  struct Unchecked {};
  Symplectic(RealMatrix s, Unchecked) : s_(std::move(s)) {}

  RealMatrix s_;
};

RealMatrix symplectic_form(int n);

/// Real symmetric 2n x 2n covariance matrix (vacuum = I/2).
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(RealMatrix sigma);

  int n() const { return static_cast<int>(sigma_.rows() / 2); }
  const RealMatrix& sigma() const { return sigma_; }

  /// det(2 sigma); equals 1 for pure states.
  double purity_determinant() const;

 private:
  RealMatrix sigma_;
};

/// Real symmetric adjacency G of a multimode-squeezing Hamiltonian.
class HGraph {
 public:
  explicit HGraph(RealMatrix g);

  /// G = r * A for an unweighted adjacency A.
  static HGraph from_adjacency(const RealMatrix& adjacency, double r);

  int n() const { return static_cast<int>(g_.rows()); }
  const RealMatrix& g() const { return g_; }

 private:
  RealMatrix g_;
};

GraphZ vacuum_state(int n);

/// Two-mode squeezer on modes i != j (1-based) with squeezing parameter r.
Symplectic tms_symplectic(int n, int i, int j, double r);

/// Independent per-mode phase rotations; thetas.size() is the mode count.
Symplectic phase_shift_symplectic(std::span<const double> thetas);

/// Z' = (C + D Z)(A + B Z)^{-1}, symmetrized.
/// Throws NumericalDegeneracy when cond(A + B Z) exceeds kMaxConditionNumber.
GraphZ apply_symplectic(const Symplectic& s, const GraphZ& z);

inline constexpr double kMaxConditionNumber = 1e12;

CovarianceMatrix covariance_from_graph(const GraphZ& z);

/// Inverse of covariance_from_graph. Rejects mixed states (|det(2 sigma) - 1| > 1e-8).
GraphZ graph_from_covariance(const CovarianceMatrix& sigma);

/// sigma' = S sigma S^T.
CovarianceMatrix evolve_covariance(const Symplectic& s, const CovarianceMatrix& sigma);

/// Z = i expm(2G), evaluated through the eigendecomposition of G.
GraphZ hgraph_state(const HGraph& g);

}  // namespace cvcs
