// Copyright 2026 The ccmw Authors
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

// Test-side helpers and reference oracles. The oracles use Eigen and plain
// enumeration so they share no code with the library under test.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "numerics.hpp"
#include "quantum_state.hpp"

namespace ccmw::testing {

using Cx = std::complex<double>;
using EMat = Eigen::MatrixXcd;

inline EMat to_eigen(const ComplexMatrix& m) {
  EMat e(m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
  return e;
}

inline ComplexMatrix from_eigen(const EMat& e) {
  ComplexMatrix m(static_cast<int>(e.rows()));
  for (int i = 0; i < e.rows(); ++i)
    for (int j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

// Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal removed.
inline EMat haar_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  EMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Cx(n(rng), n(rng));
  Eigen::HouseholderQR<EMat> qr(g);
  EMat q = qr.householderQ();
  EMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Cx z = r(j, j);
    q.col(j) *= z / std::abs(z);
  }
  return q;
}

// Random full-rank state: G G^dagger / Tr, G Ginibre.
inline EMat ginibre_state(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  EMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Cx(n(rng), n(rng));
  EMat rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

inline DensityMatrix random_density(int d, std::mt19937_64& rng) {
  return DensityMatrix::from_matrix(from_eigen(ginibre_state(d, rng)));
}

inline EMat random_pure_projector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) v(i) = Cx(n(rng), n(rng));
  v.normalize();
  return v * v.adjoint();
}

inline double l1_offdiag(const EMat& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j) s += std::abs(m(i, j));
  return s;
}

inline double energy_of(const EMat& rho, const EMat& h) { return (rho * h).trace().real(); }

// Tr[rho H] minus the passive energy, from Eigen's eigensolver.
inline double ergotropy_oracle(const EMat& rho, const EMat& h) {
  Eigen::SelfAdjointEigenSolver<EMat> er(rho);
  Eigen::SelfAdjointEigenSolver<EMat> eh(h);
  const auto s = er.eigenvalues();  // ascending
  const auto e = eh.eigenvalues();  // ascending
  const int d = static_cast<int>(rho.rows());
  double passive = 0.0;
  for (int k = 0; k < d; ++k) passive += s(d - 1 - k) * e(k);
  return energy_of(rho, h) - passive;
}

// Largest energy drop over permutations of the diagonal populations, by
// explicit enumeration.
inline double permutation_gain_oracle(const std::vector<double>& populations,
                                      const std::vector<double>& levels) {
  const int d = static_cast<int>(levels.size());
  std::vector<int> p(d);
  std::iota(p.begin(), p.end(), 0);
  double before = 0.0;
  for (int i = 0; i < d; ++i) before += populations[i] * levels[i];
  double lowest = std::numeric_limits<double>::infinity();
  do {
    double e = 0.0;
    for (int i = 0; i < d; ++i) e += populations[i] * levels[p[i]];
    lowest = std::min(lowest, e);
  } while (std::next_permutation(p.begin(), p.end()));
  return before - lowest;
}

// Pure-qubit oracle for the CCMW: grid over the relative phase and both
// modulus orderings at coherence C, energies from the explicit 2x2 matrix.
inline double qubit_ccmw_oracle(double c, double h1, double h3, double h2, double theta,
                                int phase_steps = 20000) {
  EMat h(2, 2);
  h << h1, std::polar(h2, -theta), std::polar(h2, theta), h3;
  const double a = std::sqrt((1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))) / 2.0);
  const double b = c / (2.0 * a);
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (int swap = 0; swap < 2; ++swap) {
    const double x0 = swap ? b : a;
    const double x1 = swap ? a : b;
    for (int k = 0; k < phase_steps; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / phase_steps;
      Eigen::Vector2cd v(x0, std::polar(x1, phi));
      const double e = (v.adjoint() * h * v)(0, 0).real();
      hi = std::max(hi, e);
      lo = std::min(lo, e);
    }
  }
  return hi - lo;
}

// Walks the nonnegative part of the qutrit isocoherent circle: the unit
// sphere cut by x0 + x1 + x2 = sqrt(1 + C).
inline void for_each_qutrit_moduli(double c, int steps,
                                   const std::function<void(const double*)>& visit) {
  const double s = std::sqrt(1.0 + c);
  const double r2 = 1.0 - s * s / 3.0;
  const double r = r2 < 1e-14 ? 0.0 : std::sqrt(r2);
  const double u[3] = {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0};
  const double v[3] = {1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0), -2.0 / std::sqrt(6.0)};
  for (int k = 0; k < steps; ++k) {
    const double t = 2.0 * std::numbers::pi * k / steps;
    double x[3];
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      x[i] = s / 3.0 + r * (std::cos(t) * u[i] + std::sin(t) * v[i]);
      if (x[i] < -1e-15) ok = false;
      x[i] = std::max(0.0, x[i]);
    }
    if (ok) visit(x);
  }
  // Exact points where one modulus vanishes; isolated vertices at C = 0.
  const double disc = 2.0 - s * s;
  if (disc < 0.0) return;
  const double a = (s + std::sqrt(disc)) / 2.0;
  const double b = (s - std::sqrt(disc)) / 2.0;
  for (int zero = 0; zero < 3; ++zero)
    for (int flip = 0; flip < 2; ++flip) {
      double x[3];
      x[zero] = 0.0;
      x[(zero + 1) % 3] = flip ? b : a;
      x[(zero + 2) % 3] = flip ? a : b;
      visit(x);
    }
}

// Pure qutrit CCMW for a diagonal H: phases drop out of the energy.
inline double qutrit_diagonal_oracle(double c, const double eps[3], int steps = 400000) {
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for_each_qutrit_moduli(c, steps, [&](const double* x) {
    const double e = eps[0] * x[0] * x[0] + eps[1] * x[1] * x[1] + eps[2] * x[2] * x[2];
    hi = std::max(hi, e);
    lo = std::min(lo, e);
  });
  return hi - lo;
}

// Pure qutrit CCMW for the nearest-neighbour ladder alpha (|i><i+1| + h.c.):
// highest energy over the circle with phases (0, 0, 0), lowest with
// (0, pi, 0), each evaluated as <psi|H|psi> from the explicit matrix.
inline double qutrit_ladder_oracle(double c, double alpha, int steps = 400000) {
  EMat h = EMat::Zero(3, 3);
  h(0, 1) = h(1, 0) = h(1, 2) = h(2, 1) = alpha;
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for_each_qutrit_moduli(c, steps, [&](const double* x) {
    Eigen::Vector3cd up(x[0], x[1], x[2]);
    Eigen::Vector3cd alt(x[0], -x[1], x[2]);
    hi = std::max(hi, (up.adjoint() * h * up)(0, 0).real());
    lo = std::min(lo, (alt.adjoint() * h * alt)(0, 0).real());
  });
  return hi - lo;
}

}  // namespace ccmw::testing
