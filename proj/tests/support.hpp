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

// Shared fixtures for the test binaries: random states and gate sequences,
// plus a 50-digit covariance-matrix oracle that never touches the graph
// update rule under test.

#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "cvcs/gaussian.hpp"
#include "cvcs/scenarios.hpp"

namespace cvcs::testing {

using Real50 = boost::multiprecision::cpp_bin_float_50;
using Matrix50 = Eigen::Matrix<Real50, Eigen::Dynamic, Eigen::Dynamic>;

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs(const ComplexMatrix& a) { return a.cwiseAbs().maxCoeff(); }

/// Random pure state: Im = M M^T + 0.2 I, Re symmetric with entries in [-1, 1].
inline GraphZ random_graph(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealMatrix m(n, n), v(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = u(rng);
      v(i, j) = u(rng);
    }
  }
  ComplexMatrix z(n, n);
  z.real() = (v + v.transpose()) * 0.5;
  z.imag() = m * m.transpose() + 0.2 * RealMatrix::Identity(n, n);
  return GraphZ(z);
}

/// One two-mode gate per stage, so stage order equals gate order.
inline Schedule random_schedule(std::mt19937_64& rng, int max_modes, int max_gates, double max_r) {
  std::uniform_int_distribution<int> modes(2, max_modes);
  const int n = modes(rng);
  std::uniform_int_distribution<int> gates(1, max_gates);
  std::uniform_int_distribution<int> mode(1, n);
  std::uniform_real_distribution<double> r(0.0, max_r);
  std::vector<Stage> stages;
  const int count = gates(rng);
  for (int g = 0; g < count; ++g) {
    int i = mode(rng), j = mode(rng);
    while (j == i) j = mode(rng);
    stages.push_back(Stage{{ModePair(i, j)}, r(rng)});
  }
  return Schedule(n, std::move(stages));
}

/// Random symplectic built from two-mode squeezers, phase rotations and
/// single-mode squeezers.
inline Symplectic random_symplectic(std::mt19937_64& rng, int n, int factors, double max_r) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> mode(1, n);
  std::uniform_real_distribution<double> r(-max_r, max_r);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  Symplectic s = Symplectic::identity(n);
  for (int f = 0; f < factors; ++f) {
    const int k = kind(rng);
    if (k == 0 && n >= 2) {
      int i = mode(rng), j = mode(rng);
      while (j == i) j = mode(rng);
      s = tms_symplectic(n, i, j, r(rng)) * s;
    } else if (k == 1) {
      std::vector<double> thetas(n);
      for (double& t : thetas) t = angle(rng);
      s = phase_shift_symplectic(thetas) * s;
    } else {
      const int m = mode(rng) - 1;
      const double x = r(rng);
      RealMatrix sq = RealMatrix::Identity(2 * n, 2 * n);
      sq(m, m) = std::exp(-x);
      sq(n + m, n + m) = std::exp(x);
      s = Symplectic(sq) * s;
    }
  }
  return s;
}

/// Two-mode squeezer written out from its cosh/sinh blocks in 50 digits.
inline Matrix50 tms_50(int n, int i, int j, const Real50& r) {
  Matrix50 s = Matrix50::Identity(2 * n, 2 * n);
  const Real50 c = cosh(r), sh = sinh(r);
  const int a = i - 1, b = j - 1;
  s(a, a) = s(b, b) = c;
  s(a, b) = s(b, a) = sh;
  s(n + a, n + a) = s(n + b, n + b) = c;
  s(n + a, n + b) = s(n + b, n + a) = -sh;
  return s;
}

/// sigma' = S sigma S^T from the vacuum, then U = (2 sigma_qq)^-1 and
/// V = U 2 sigma_qp, all in 50-digit arithmetic.
inline ComplexMatrix oracle_graph_50(const Matrix50& s) {
  const int n = static_cast<int>(s.rows() / 2);
  const Matrix50 sigma = Real50(0.5) * s * s.transpose();
  const Matrix50 two_qq = Real50(2) * sigma.topLeftCorner(n, n);
  const Matrix50 two_qp = Real50(2) * sigma.topRightCorner(n, n);
  const Matrix50 u = two_qq.fullPivLu().inverse();
  const Matrix50 v = u * two_qp;
  ComplexMatrix z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      z(i, j) = Complex(static_cast<double>((v(i, j) + v(j, i)) / 2),
                        static_cast<double>((u(i, j) + u(j, i)) / 2));
    }
  }
  return z;
}

inline ComplexMatrix oracle_graph_50(const Schedule& schedule) {
  const int n = schedule.n();
  Matrix50 s = Matrix50::Identity(2 * n, 2 * n);
  for (const Stage& stage : schedule.stages()) {
    for (const ModePair& p : stage.pairs) s = tms_50(n, p.first, p.second, Real50(stage.r)) * s;
  }
  return oracle_graph_50(s);
}

}  // namespace cvcs::testing
