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

#include "cvcs/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cvcs/errors.hpp"

namespace cvcs {
namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kSymplecticTolerance = 1e-10;
constexpr double kPurityTolerance = 1e-8;

template <typename Matrix>
double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Matrix>
void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << " must be a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw InvalidArgument(os.str());
  }
}

template <typename Matrix>
void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw InvalidArgument(std::string(what) + " has non-finite entries");
}

template <typename Matrix>
void require_symmetric(const Matrix& m, const char* what) {
  const double asym = max_abs(Matrix(m - m.transpose()));
  if (asym > kSymmetryTolerance * std::max(1.0, max_abs(m))) {
    std::ostringstream os;
    os << what << " is not symmetric (max |M - M^T| = " << asym << ")";
    throw InvalidArgument(os.str());
  }
}

void require_mode(int n, int i, const char* name) {
  if (i < 1 || i > n) {
    std::ostringstream os;
    os << "mode index " << name << "=" << i << " out of range 1.." << n;
    throw InvalidArgument(os.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// GraphZ

GraphZ::GraphZ(ComplexMatrix z) {
  require_square(z, "graph matrix Z");
  require_finite(z, "graph matrix Z");
  require_symmetric(z, "graph matrix Z");
  z_ = (z + z.transpose()) * 0.5;
}

Complex GraphZ::at(int i, int j) const {
  require_mode(n(), i, "i");
  require_mode(n(), j, "j");
  return z_(i - 1, j - 1);
}

bool has_positive_definite_imag(const GraphZ& z) {
  Eigen::LLT<RealMatrix> llt(z.im());
  return llt.info() == Eigen::Success;
}

// ---------------------------------------------------------------------------
// Symplectic

RealMatrix symplectic_form(int n) {
  RealMatrix omega = RealMatrix::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return omega;
}

Symplectic::Symplectic(RealMatrix s) : s_(std::move(s)) {
  require_square(s_, "symplectic matrix");
  if (s_.rows() % 2 != 0) throw InvalidArgument("symplectic matrix must have even dimension");
  require_finite(s_, "symplectic matrix");
  const double scale = std::max(1.0, max_abs(s_));
  if (residual() > kSymplecticTolerance * scale * scale) {
    std::ostringstream os;
    os << "matrix is not symplectic (residual " << residual() << ")";
    throw InvalidArgument(os.str());
  }
}

Symplectic Symplectic::identity(int n) {
  if (n < 1) throw InvalidArgument("mode count must be positive");
  return Symplectic(RealMatrix::Identity(2 * n, 2 * n), Unchecked{});
}

Symplectic operator*(const Symplectic& lhs, const Symplectic& rhs) {
  if (lhs.n() != rhs.n()) throw InvalidArgument("symplectic composition: mode counts differ");
  return Symplectic(lhs.s_ * rhs.s_, Symplectic::Unchecked{});
}

Symplectic Symplectic::inverse() const {
  // S^{-1} = -Omega S^T Omega for symplectic S.
  const RealMatrix omega = symplectic_form(n());
  return Symplectic(-omega * s_.transpose() * omega, Unchecked{});
}

double Symplectic::residual() const {
  const RealMatrix omega = symplectic_form(n());
  return max_abs(RealMatrix(s_ * omega * s_.transpose() - omega));
}

// ---------------------------------------------------------------------------
// CovarianceMatrix, HGraph

CovarianceMatrix::CovarianceMatrix(RealMatrix sigma) : sigma_(std::move(sigma)) {
  require_square(sigma_, "covariance matrix");
  if (sigma_.rows() % 2 != 0) throw InvalidArgument("covariance matrix must have even dimension");
  require_finite(sigma_, "covariance matrix");
  require_symmetric(sigma_, "covariance matrix");
  sigma_ = (sigma_ + sigma_.transpose()) * 0.5;
}

double CovarianceMatrix::purity_determinant() const {
  return RealMatrix(2.0 * sigma_).partialPivLu().determinant();
}

HGraph::HGraph(RealMatrix g) : g_(std::move(g)) {
  require_square(g_, "H-graph adjacency");
  require_finite(g_, "H-graph adjacency");
  require_symmetric(g_, "H-graph adjacency");
}

HGraph HGraph::from_adjacency(const RealMatrix& adjacency, double r) {
  return HGraph(r * adjacency);
}

// ---------------------------------------------------------------------------
// States and gates

GraphZ vacuum_state(int n) {
  if (n < 1) throw InvalidArgument("vacuum_state: mode count must be positive");
  return GraphZ(Complex(0.0, 1.0) * ComplexMatrix::Identity(n, n));
}

Symplectic tms_symplectic(int n, int i, int j, double r) {
  if (n < 2) throw InvalidArgument("tms_symplectic: need at least two modes");
  require_mode(n, i, "i");
  require_mode(n, j, "j");
  if (i == j) throw InvalidArgument("tms_symplectic: i == j is single-mode squeezing, not TMS");
  if (!std::isfinite(r))
    throw InvalidArgument("tms_symplectic: squeezing parameter must be finite");

  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  RealMatrix s = RealMatrix::Identity(2 * n, 2 * n);
  const int a = i - 1, b = j - 1;
  s(a, a) = s(b, b) = ch;
  s(a, b) = s(b, a) = sh;
  s(n + a, n + a) = s(n + b, n + b) = ch;
  s(n + a, n + b) = s(n + b, n + a) = -sh;
  return Symplectic(std::move(s));
}

Symplectic phase_shift_symplectic(std::span<const double> thetas) {
  const int n = static_cast<int>(thetas.size());
  if (n < 1) throw InvalidArgument("phase_shift_symplectic: need at least one angle");
  RealMatrix s = RealMatrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    if (!std::isfinite(thetas[k]))
      throw InvalidArgument("phase_shift_symplectic: non-finite angle");
    const double c = std::cos(thetas[k]);
    const double sn = std::sin(thetas[k]);
    s(k, k) = c;
    s(k, n + k) = sn;
    s(n + k, k) = -sn;
    s(n + k, n + k) = c;
  }
  return Symplectic(std::move(s));
}

GraphZ apply_symplectic(const Symplectic& s, const GraphZ& z) {
  if (s.n() != z.n()) {
    std::ostringstream os;
    os << "apply_symplectic: symplectic acts on " << s.n() << " modes, state has " << z.n();
    throw InvalidArgument(os.str());
  }
  const ComplexMatrix denom = s.a().cast<Complex>() + s.b().cast<Complex>() * z.z();
  const ComplexMatrix numer = s.c().cast<Complex>() + s.d().cast<Complex>() * z.z();

  // Z' is symmetric, so Z'^T = (A + BZ)^{-T} (C + DZ)^T.
  Eigen::PartialPivLU<ComplexMatrix> lu(denom.transpose());
  const double rcond = lu.rcond();
  if (!(rcond * kMaxConditionNumber >= 1.0)) {
    std::ostringstream os;
    os << "apply_symplectic: A + B Z is numerically singular (estimated condition number "
       << (rcond > 0 ? 1.0 / rcond : INFINITY) << " > " << kMaxConditionNumber
       << "); squeezing too extreme for double precision";
    throw NumericalDegeneracy(os.str());
  }
  ComplexMatrix zt = lu.solve(numer.transpose());
  return GraphZ((zt + zt.transpose()) * 0.5);
}

// ---------------------------------------------------------------------------
// Covariance oracle

CovarianceMatrix covariance_from_graph(const GraphZ& z) {
  const int n = z.n();
  const RealMatrix u = z.im();
  const RealMatrix v = z.re();
  Eigen::LLT<RealMatrix> llt(u);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("covariance_from_graph: Im(Z) is not positive definite");
  }
  const RealMatrix u_inv = llt.solve(RealMatrix::Identity(n, n));
  RealMatrix sigma(2 * n, 2 * n);
  sigma.topLeftCorner(n, n) = u_inv;
  sigma.topRightCorner(n, n) = u_inv * v;
  sigma.bottomLeftCorner(n, n) = v * u_inv;
  sigma.bottomRightCorner(n, n) = u + v * u_inv * v;
  sigma *= 0.5;
  return CovarianceMatrix((sigma + sigma.transpose()) * 0.5);
}

GraphZ graph_from_covariance(const CovarianceMatrix& sigma) {
  const double det = sigma.purity_determinant();
  if (!(std::abs(det - 1.0) <= kPurityTolerance)) {
    std::ostringstream os;
    os << "graph_from_covariance: state is not pure (det(2 sigma) = " << det << ")";
    throw InvalidArgument(os.str());
  }
  const int n = sigma.n();
  const RealMatrix two_qq = 2.0 * sigma.sigma().topLeftCorner(n, n);
  const RealMatrix two_qp = 2.0 * sigma.sigma().topRightCorner(n, n);
  Eigen::LLT<RealMatrix> llt(two_qq);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("graph_from_covariance: q-q block is not positive definite");
  }
  RealMatrix u = llt.solve(RealMatrix::Identity(n, n));
  u = (u + u.transpose()) * 0.5;
  RealMatrix v = u * two_qp;
  v = (v + v.transpose()) * 0.5;
  ComplexMatrix z(n, n);
  z.real() = v;
  z.imag() = u;
  return GraphZ(std::move(z));
}

CovarianceMatrix evolve_covariance(const Symplectic& s, const CovarianceMatrix& sigma) {
  if (s.n() != sigma.n()) throw InvalidArgument("evolve_covariance: mode counts differ");
  RealMatrix out = s.matrix() * sigma.sigma() * s.matrix().transpose();
  return CovarianceMatrix((out + out.transpose()) * 0.5);
}

GraphZ hgraph_state(const HGraph& g) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(g.g());
  if (eig.info() != Eigen::Success) throw NumericalDegeneracy("hgraph_state: eigensolver failed");
  const Eigen::VectorXd expd = (2.0 * eig.eigenvalues()).array().exp();
  const RealMatrix e = eig.eigenvectors() * expd.asDiagonal() * eig.eigenvectors().transpose();
  ComplexMatrix z = ComplexMatrix::Zero(g.n(), g.n());
  z.imag() = (e + e.transpose()) * 0.5;
  return GraphZ(std::move(z));
}

}  // namespace cvcs
