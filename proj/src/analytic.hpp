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

#pragma once

// Closed-form coherence-constrained maximal work and the constraint geometry
// behind it: isocoherent ellipses, qutrit tangency points, and the p-q
// parabola reduction for the off-diagonal qutrit.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "hamiltonians.hpp"
#include "quantum_state.hpp"

namespace ccmw {

// |h1 - h3| sqrt(1 - C^2) + 2 h2 C, C in [0, 1].
double xi2(double coherence, double h1, double h3, double h2);

struct QubitOptimalPair {
  PureState initial;
  PureState final;
  int delta;     // sign(h1 - h3), +1 when the diagonal entries coincide
  double theta;  // Hamiltonian phase: H_01 = h2 e^{-i theta}
};

// Optimal pure initial/final qubit states at coherence C. The initial state
// carries relative phase theta, the final one theta + pi, so both
// off-diagonal terms contribute with full weight.
QubitOptimalPair optimal_qubit_pair(double coherence, const BatteryHamiltonian& h);

// CCMW for J_z^3 at coherence C in [0, 2].
double xi3_diagonal(double coherence);

struct TangencyPoints {
  double y0;
  double x_plus;
  double x_minus;
};

// Touching points of the circles of extremal radius with the scaled qutrit
// ellipse. x is the coordinate of level 2 (gap weight 2), y of level 1.
TangencyPoints qutrit_tangency(double coherence);

// Left-hand side of the scaled J_z^3 ellipse x^2/2 + y^2 + xy/sqrt2 - ... .
double scaled_qutrit_ellipse_residual(double coherence, double x, double y);

// x dF/dy - y dF/dx: vanishes where the ellipse normal is radial.
double qutrit_normal_residual(double coherence, double x, double y);

struct EllipseSpec {
  int dim;
  double coherence;
  std::vector<double> weights;  // gap weights for coordinates 1..dim-1; all ones if unscaled

  static EllipseSpec unscaled(int dim, double coherence);
};

// Residual of the (optionally scaled) isocoherent ellipse at a point of
// coordinates 1..dim-1. Zero on the projection of the unit sphere intersected
// with sum_i x_i = sqrt(1 + C); nonnegativity of the moduli is not checked.
double ellipse_residual(const EllipseSpec& spec, std::span<const double> point);

double isocoherent_ellipse_residual(int dim, double coherence, std::span<const double> point);

// n points (x1, x2) evenly spaced in angle around the qutrit ellipse.
std::vector<std::array<double, 2>> qutrit_ellipse_points(double coherence, int n);

// Piecewise CCMW for the off-diagonal qutrit J^3 with coupling alpha.
double xi3_offdiagonal(double coherence, double alpha);

// Minimum of q on q = (p - sqrt(1+C)/2)^2 + (C-1)/4 over p^2 >= 4q, q >= 0.
double pq_min_q(double coherence);

// 4 alpha (1 - 1/d): maximal-coherence work for the nearest-neighbour ladder.
double max_coherence_scaling(int d, double alpha);

// Closed form for (H, C) when one is known: every qubit Hamiltonian, a qutrit
// diagonal Hamiltonian with equally spaced levels, and the uniform qutrit
// ladder. Returns nullopt otherwise.
std::optional<double> analytic_ccmw(const BatteryHamiltonian& h, double coherence);

bool has_analytic_ccmw(const BatteryHamiltonian& h);

}  // namespace ccmw
