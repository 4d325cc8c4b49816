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

#include <gtest/gtest.h>

#include "analytic.hpp"
#include "error.hpp"
#include "frozen.hpp"
#include "hamiltonians.hpp"
#include "support.hpp"

namespace ccmw::testing {
namespace {

double grid(int k, int n, double hi) { return hi * k / (n - 1); }

TEST(Xi2, HandValues) {
  EXPECT_EQ(xi2(0.0, 1.0, -1.0, 0.0), 2.0);
  EXPECT_NEAR(xi2(0.5, 0.0, 0.0, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(xi2(0.6, 2.0, 0.0, 1.0), frozen::kQubitGapC06, 1e-14);
  EXPECT_THROW(xi2(1.1, 1.0, 0.0, 0.0), Error);
  EXPECT_THROW(xi2(0.5, 1.0, 0.0, -1.0), Error);
}

TEST(Xi2, DecreasingWithoutTransverseField) {
  for (double h1 : {1.0, -0.5, 3.0}) {
    double prev = xi2(0.0, h1, 0.2, 0.0);
    for (int k = 1; k < 100; ++k) {
      const double v = xi2(k / 100.0, h1, 0.2, 0.0);
      EXPECT_LT(v, prev) << k;
      prev = v;
    }
  }
}

TEST(Xi2, LinearForDegenerateDiagonal) {
  for (int k = 0; k <= 20; ++k) {
    const double c = k / 20.0;
    EXPECT_EQ(xi2(c, 0.7, 0.7, 1.3), 2.0 * 1.3 * c);
  }
}

TEST(Xi2, MatchesQubitOracle) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  for (int t = 0; t < 10; ++t) {
    const double h1 = u(rng), h3 = u(rng), h2 = std::abs(u(rng)), th = ang(rng);
    for (int k = 0; k <= 10; ++k) {
      const double c = k / 10.0;
      EXPECT_NEAR(xi2(c, h1, h3, h2), qubit_ccmw_oracle(c, h1, h3, h2, th), 1e-6)
          << h1 << " " << h3 << " " << h2 << " " << c;
    }
  }
}

TEST(OptimalQubitPair, BasisStatesForSigmaZ) {
  const auto sz = qubit_hamiltonian(1.0, -1.0, 0.0, 0.0);
  const auto pair = optimal_qubit_pair(0.0, sz);
  EXPECT_NEAR(std::abs(pair.initial.amplitudes()[0]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(pair.final.amplitudes()[1]), 1.0, 1e-15);
  EXPECT_EQ(pair.delta, 1);
  const auto full = optimal_qubit_pair(1.0, sz);
  EXPECT_NEAR(energy(full.initial, sz.op()) - energy(full.final, sz.op()), 0.0, 1e-15);
  EXPECT_EQ(optimal_qubit_pair(0.3, qubit_hamiltonian(0.5, 0.5, 1.0, 0.0)).delta, 1);
  EXPECT_EQ(optimal_qubit_pair(0.3, qubit_hamiltonian(-0.5, 0.5, 1.0, 0.0)).delta, -1);
}

TEST(OptimalQubitPair, AgreesWithXi2OnRandomDraws) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int t = 0; t < 1000; ++t) {
    const double c = u01(rng);
    const double h1 = u(rng), h3 = u(rng), h2 = std::abs(u(rng)), th = ang(rng);
    const auto h = qubit_hamiltonian(h1, h3, h2, th);
    const auto pair = optimal_qubit_pair(c, h);
    const double work = energy(pair.initial, h.op()) - energy(pair.final, h.op());
    EXPECT_NEAR(work, xi2(c, h1, h3, h2), 1e-10);
    const auto a = pair.initial.amplitudes();
    const auto b = pair.final.amplitudes();
    EXPECT_NEAR(std::norm(a[0]), std::norm(b[1]), 1e-12);
    EXPECT_NEAR(std::norm(a[1]), std::norm(b[0]), 1e-12);
    EXPECT_NEAR(l1_coherence(DensityMatrix::from_pure(pair.initial)).value(), c, 1e-10);
    EXPECT_NEAR(l1_coherence(DensityMatrix::from_pure(pair.final)).value(), c, 1e-10);
  }
}

TEST(Xi3Diagonal, EndpointsAndFrozenMidpoint) {
  EXPECT_NEAR(xi3_diagonal(0.0), 2.0, 1e-15);
  EXPECT_NEAR(xi3_diagonal(2.0), 0.0, 1e-7);
  EXPECT_NEAR(xi3_diagonal(1.0), frozen::kXi3DiagonalC1, 1e-12);
  EXPECT_THROW(xi3_diagonal(2.1), Error);
  EXPECT_THROW(xi3_diagonal(-0.1), Error);
}

TEST(Xi3Diagonal, NonincreasingOn201Points) {
  double prev = xi3_diagonal(0.0);
  for (int k = 1; k <= 200; ++k) {
    const double v = xi3_diagonal(grid(k, 201, 2.0));
    EXPECT_LE(v, prev) << k;
    prev = v;
  }
}

TEST(Xi3Diagonal, MatchesCircleOracle) {
  const double eps[3] = {-1.0, 0.0, 1.0};
  for (int k = 0; k <= 20; ++k) {
    const double c = grid(k, 21, 2.0);
    EXPECT_NEAR(xi3_diagonal(c), qutrit_diagonal_oracle(c, eps), 1e-6) << c;
  }
}

TEST(Tangency, HandValues) {
  const auto t0 = qutrit_tangency(0.0);
  EXPECT_NEAR(t0.y0, 0.0, 1e-15);
  EXPECT_NEAR(t0.x_plus, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(t0.x_minus, 0.0, 1e-15);
  const auto t2 = qutrit_tangency(2.0);
  EXPECT_NEAR(t2.x_plus, t2.x_minus, 1e-7);
  EXPECT_NEAR(qutrit_tangency(1.0).y0, frozen::kTangencyY0C1, 1e-15);
}

TEST(Tangency, DistanceGapIsXi3On201Points) {
  for (int k = 0; k <= 200; ++k) {
    const double c = grid(k, 201, 2.0);
    const auto t = qutrit_tangency(c);
    const double gap = (t.x_plus * t.x_plus + t.y0 * t.y0) - (t.x_minus * t.x_minus + t.y0 * t.y0);
    EXPECT_NEAR(gap, xi3_diagonal(c), 1e-10) << c;
    for (double x : {t.x_plus, t.x_minus}) {
      EXPECT_NEAR(scaled_qutrit_ellipse_residual(c, x, t.y0), 0.0, 1e-9) << c;
      EXPECT_NEAR(qutrit_normal_residual(c, x, t.y0), 0.0, 1e-9) << c;
    }
  }
}

TEST(Ellipse, ResidualHandValues) {
  const double origin[] = {0.0, 0.0};
  EXPECT_NEAR(isocoherent_ellipse_residual(3, 0.0, origin), 0.0, 1e-15);
  const double u = 1.0 / std::sqrt(3.0);
  const double uniform[] = {u, u};
  EXPECT_NEAR(isocoherent_ellipse_residual(3, 2.0, uniform), 0.0, 1e-15);
  const double off[] = {0.9, 0.9};
  EXPECT_GT(std::abs(isocoherent_ellipse_residual(3, 1.0, off)), 0.1);
  const double wrong_size[] = {0.1};
  EXPECT_THROW(isocoherent_ellipse_residual(3, 1.0, wrong_size), Error);
}

TEST(Ellipse, ZeroOnRandomFixedCoherenceStates) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int d = 2; d <= 8; ++d)
    for (int t = 0; t < 100; ++t) {
      std::vector<double> x(d);
      double norm = 0.0;
      for (double& v : x) {
        v = u01(rng);
        norm += v * v;
      }
      double sum = 0.0;
      for (double& v : x) sum += (v /= std::sqrt(norm));
      const double c = sum * sum - 1.0;
      EXPECT_NEAR(isocoherent_ellipse_residual(d, c, std::span(x).subspan(1)), 0.0, 1e-12) << d;
    }
}

TEST(Ellipse, EmittedPointsLieOnTheLocus) {
  double prev_extent = std::numeric_limits<double>::infinity();
  for (double c : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const auto pts = qutrit_ellipse_points(c, 512);
    ASSERT_EQ(pts.size(), 512u);
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      EXPECT_LT(std::abs(isocoherent_ellipse_residual(3, c, p)), 1e-9) << c;
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    EXPECT_LT(hi - lo, prev_extent) << c;
    prev_extent = hi - lo;
  }
  for (const auto& p : qutrit_ellipse_points(2.0, 512)) {
    EXPECT_NEAR(p[0], 1.0 / std::sqrt(3.0), 1e-7);
    EXPECT_NEAR(p[1], 1.0 / std::sqrt(3.0), 1e-7);
  }
  bool through_origin = false;
  for (const auto& p : qutrit_ellipse_points(0.0, 512))
    through_origin |= std::hypot(p[0], p[1]) < 1e-2;
  EXPECT_TRUE(through_origin);
}

TEST(Xi3OffDiagonal, BranchValuesAndContinuity) {
  EXPECT_EQ(xi3_offdiagonal(1.0, 1.0), 2.0);
  EXPECT_NEAR(xi3_offdiagonal(5.0 / 3.0, 1.0), 8.0 / 3.0, 1e-15);
  EXPECT_NEAR(xi3_offdiagonal(2.0, 1.0), frozen::kScalingD3, 1e-15);
  // Each branch formula evaluated on both sides of its boundary.
  auto f = [](double c) {
    const double g = std::sqrt(1.0 + c) - std::sqrt(1.0 - c / 2.0);
    return 2.0 / 9.0 * g * g;
  };
  const double c53 = 5.0 / 3.0;
  EXPECT_LT(std::abs((c53 + 1.0) - 2.0 * (c53 - f(c53))), 1e-12);
  EXPECT_LT(std::abs(xi3_offdiagonal(std::nextafter(1.0, 2.0), 1.0) - xi3_offdiagonal(1.0, 1.0)),
            1e-12);
  EXPECT_LT(std::abs(xi3_offdiagonal(std::nextafter(c53, 2.0), 1.0) - xi3_offdiagonal(c53, 1.0)),
            1e-12);
  EXPECT_THROW(xi3_offdiagonal(1.0, 0.0), Error);
}

TEST(Xi3OffDiagonal, ParabolaRouteOn201Points) {
  for (double alpha : {0.5, 1.0, 2.0})
    for (int k = 0; k <= 200; ++k) {
      const double c = grid(k, 201, 2.0);
      EXPECT_NEAR(4.0 * alpha * (c / 2.0 - pq_min_q(c)), xi3_offdiagonal(c, alpha), 1e-12) << c;
    }
  EXPECT_EQ(pq_min_q(0.3), 0.0);
  EXPECT_EQ(pq_min_q(1.0), 0.0);
  EXPECT_NEAR(pq_min_q(1.2), 0.05, 1e-15);
  EXPECT_NEAR(pq_min_q(2.0), 1.0 / 3.0, 1e-15);
}

TEST(Xi3OffDiagonal, MatchesLadderOracle) {
  for (double alpha : {1.0, 0.5})
    for (int k = 0; k <= 20; ++k) {
      const double c = grid(k, 21, 2.0);
      EXPECT_NEAR(xi3_offdiagonal(c, alpha), qutrit_ladder_oracle(c, alpha), 1e-6) << c;
    }
}

TEST(Scaling, HandValues) {
  EXPECT_EQ(max_coherence_scaling(2, 1.0), 2.0);
  EXPECT_EQ(max_coherence_scaling(2, 1.0), xi2(1.0, 0.0, 0.0, 1.0));
  EXPECT_NEAR(max_coherence_scaling(3, 1.0), frozen::kScalingD3, 1e-15);
  EXPECT_NEAR(max_coherence_scaling(6, 1.0), frozen::kScalingD6, 1e-15);
  EXPECT_THROW(max_coherence_scaling(1, 1.0), Error);
}

TEST(AnalyticDispatch, KnownAndUnknownPairs) {
  EXPECT_NEAR(*analytic_ccmw(qubit_hamiltonian(2, 0, 1, 0.4), 0.6), frozen::kQubitGapC06, 1e-14);
  EXPECT_EQ(*analytic_ccmw(jz(3), 1.0), xi3_diagonal(1.0));
  const double shifted[] = {0.0, 2.0, 4.0};
  EXPECT_NEAR(*analytic_ccmw(custom_diagonal(shifted), 1.0), 2.0 * xi3_diagonal(1.0), 1e-15);
  EXPECT_EQ(*analytic_ccmw(jx(3), 1.5), xi3_offdiagonal(1.5, 1.0));
  EXPECT_EQ(*analytic_ccmw(j_offdiagonal(3, 0.0, 2.0), 0.5), xi3_offdiagonal(0.5, 2.0));
  EXPECT_FALSE(analytic_ccmw(jz(5), 1.0).has_value());
  EXPECT_FALSE(has_analytic_ccmw(jz(4)));
  EXPECT_FALSE(has_analytic_ccmw(j_mixed(3, 1.0, 0.0, 1.0)));
  const double uneven[] = {0.0, 1.0, 3.0};
  EXPECT_FALSE(has_analytic_ccmw(custom_diagonal(uneven)));
  EXPECT_TRUE(has_analytic_ccmw(jy(3)));
}

}  // namespace
}  // namespace ccmw::testing
