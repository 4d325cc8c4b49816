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

#include "analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace ccmw {
namespace {

constexpr double kRangeSlack = 1e-12;

double checked_coherence(double c, double cmax, const char* what) {
  if (!std::isfinite(c) || c < -kRangeSlack || c > cmax + kRangeSlack) {
    std::ostringstream os;
    os << what << ": coherence " << c << " outside [0, " << cmax << "]";
    fail(Errc::kOutOfRange, os.str());
  }
  return std::clamp(c, 0.0, cmax);
}

double safe_sqrt(double x) { return std::sqrt(std::max(x, 0.0)); }

}  // namespace

double xi2(double coherence, double h1, double h3, double h2) {
  const double c = checked_coherence(coherence, 1.0, "xi2");
  require(h2 >= 0.0, Errc::kInvalidArgument, "xi2: h2 must be nonnegative");
  return std::abs(h1 - h3) * safe_sqrt(1.0 - c * c) + 2.0 * h2 * c;
}

QubitOptimalPair optimal_qubit_pair(double coherence, const BatteryHamiltonian& h) {
  require(h.dim() == 2, Errc::kDimensionMismatch, "optimal_qubit_pair needs a qubit Hamiltonian");
  const double c = checked_coherence(coherence, 1.0, "optimal_qubit_pair");
  const auto& m = h.matrix();
  const double h1 = m(0, 0).real();
  const double h3 = m(1, 1).real();
  const double theta = std::abs(m(0, 1)) > 0.0 ? -std::arg(m(0, 1)) : 0.0;
  const int delta = h1 < h3 ? -1 : 1;
  const double r = safe_sqrt(1.0 - c * c);
  const double p0 = (1.0 + delta * r) / 2.0;
  const double p1 = (1.0 - delta * r) / 2.0;

  const std::array<double, 2> mod_in{safe_sqrt(p0), safe_sqrt(p1)};
  const std::array<double, 2> mod_out{safe_sqrt(p1), safe_sqrt(p0)};
  const std::array<double, 2> ph_in{0.0, theta};
  const std::array<double, 2> ph_out{0.0, theta + std::numbers::pi};
  return {pure_from_polar(mod_in, ph_in), pure_from_polar(mod_out, ph_out), delta, theta};
}

double xi3_diagonal(double coherence) {
  const double c = checked_coherence(coherence, 2.0, "xi3_diagonal");
  const double f3 = std::sqrt(1.0 + c) * safe_sqrt(1.0 - c / 3.0);
  return safe_sqrt((1.0 + f3 + c / 3.0) * (1.0 + f3 - c));
}

TangencyPoints qutrit_tangency(double coherence) {
  const double c = checked_coherence(coherence, 2.0, "qutrit_tangency");
  const double s = std::sqrt(1.0 + c);
  const double r = safe_sqrt(1.0 - c / 3.0);
  const double centre = (s + r) / (2.0 * std::numbers::sqrt2);
  const double half_width = safe_sqrt((1.0 - c + s * r) / 4.0);
  return {(s - r) / 2.0, centre + half_width, centre - half_width};
}

double scaled_qutrit_ellipse_residual(double coherence, double x, double y) {
  const double s = std::sqrt(1.0 + coherence);
  const double r2 = std::numbers::sqrt2;
  return x * x / 2.0 + y * y + x * y / r2 - s * (x / r2 + y) + coherence / 2.0;
}

double qutrit_normal_residual(double coherence, double x, double y) {
  const double s = std::sqrt(1.0 + coherence);
  const double r2 = std::numbers::sqrt2;
  const double fx = x + y / r2 - s / r2;
  const double fy = 2.0 * y + x / r2 - s;
  return x * fy - y * fx;
}

EllipseSpec EllipseSpec::unscaled(int dim, double coherence) {
  return {dim, coherence, std::vector<double>(std::max(dim - 1, 0), 1.0)};
}

double ellipse_residual(const EllipseSpec& spec, std::span<const double> point) {
  require(spec.dim >= 2, Errc::kOutOfRange, "ellipse dimension must be at least 2");
  checked_coherence(spec.coherence, max_coherence(spec.dim), "ellipse_residual");
  const std::size_t n = std::size_t(spec.dim - 1);
  require(point.size() == n && spec.weights.size() == n, Errc::kDimensionMismatch,
          "ellipse point must have dim - 1 coordinates");
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(spec.weights[i] > 0.0, Errc::kInvalidArgument, "ellipse weights must be positive");
    u[i] = point[i] / std::sqrt(spec.weights[i]);
  }
  double squares = 0.0, cross = 0.0, linear = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    squares += u[i] * u[i];
    linear += u[i];
    for (std::size_t j = 0; j < i; ++j) cross += u[i] * u[j];
  }
  return squares + cross - std::sqrt(1.0 + spec.coherence) * linear + spec.coherence / 2.0;
}

double isocoherent_ellipse_residual(int dim, double coherence, std::span<const double> point) {
  return ellipse_residual(EllipseSpec::unscaled(dim, coherence), point);
}

std::vector<std::array<double, 2>> qutrit_ellipse_points(double coherence, int n) {
  const double c = checked_coherence(coherence, 2.0, "qutrit_ellipse_points");
  require(n >= 1, Errc::kInvalidArgument, "need at least one ellipse point");
  // Circle where the unit sphere meets sum_i x_i = s, centred at (s/3)(1,1,1).
  const double s = std::sqrt(1.0 + c);
  const double centre = s / 3.0;
  const double radius = safe_sqrt(1.0 - s * s / 3.0);
  // Orthonormal basis of the plane orthogonal to (1,1,1), coordinates 1 and 2.
  const std::array<double, 2> e1{-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  const std::array<double, 2> e2{1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0)};
  std::vector<std::array<double, 2>> pts(n);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n;
    const double a = radius * std::cos(t);
    const double b = radius * std::sin(t);
    pts[k] = {centre + a * e1[0] + b * e2[0], centre + a * e1[1] + b * e2[1]};
  }
  return pts;
}

double xi3_offdiagonal(double coherence, double alpha) {
  const double c = checked_coherence(coherence, 2.0, "xi3_offdiagonal");
  require(alpha > 0.0, Errc::kInvalidArgument, "xi3_offdiagonal: alpha must be positive");
  if (c <= 1.0) return 2.0 * alpha * c;
  if (c <= 5.0 / 3.0) return alpha * (c + 1.0);
  const double gap = std::sqrt(1.0 + c) - safe_sqrt(1.0 - c / 2.0);
  const double f = (2.0 / 9.0) * gap * gap;
  return 2.0 * alpha * (c - f);
}

double pq_min_q(double coherence) {
  const double c = checked_coherence(coherence, 2.0, "pq_min_q");
  const double s = std::sqrt(1.0 + c);
  // Vertex of the parabola at p = s/2, q = (C - 1)/4.
  const double vertex_q = (c - 1.0) / 4.0;
  const double vertex_p = s / 2.0;
  if (vertex_q < 0.0) {
    // The parabola crosses q = 0 at p = (s -+ sqrt(1 - C))/2; both satisfy p^2 >= 0.
    return 0.0;
  }
  if (vertex_p * vertex_p >= 4.0 * vertex_q) return vertex_q;
  // Otherwise the minimum sits on p^2 = 4q: 3p^2 - 4sp + 2C = 0, smaller root.
  const double p = (2.0 * s - 2.0 * safe_sqrt(1.0 - c / 2.0)) / 3.0;
  return p * p / 4.0;
}

double max_coherence_scaling(int d, double alpha) {
  require(d >= 2, Errc::kOutOfRange, "dimension must be at least 2");
  require(alpha > 0.0, Errc::kInvalidArgument, "alpha must be positive");
  return 4.0 * alpha * (1.0 - 1.0 / d);
}

namespace {

constexpr double kMatchTolerance = 1e-12;

// Spacing of a qutrit diagonal Hamiltonian whose levels are equally spaced.
std::optional<double> equal_spacing(const ComplexMatrix& m) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(m(i, j)) > kMatchTolerance) return std::nullopt;
  std::array<double, 3> e{m(0, 0).real(), m(1, 1).real(), m(2, 2).real()};
  std::sort(e.begin(), e.end());
  if (std::abs((e[1] - e[0]) - (e[2] - e[1])) > kMatchTolerance) return std::nullopt;
  return e[1] - e[0];
}

// Coupling of a qutrit Hamiltonian with zero diagonal, equal-modulus nearest
// neighbour couplings and no 0-2 element.
std::optional<double> ladder_coupling(const ComplexMatrix& m) {
  for (int i = 0; i < 3; ++i)
    if (std::abs(m(i, i)) > kMatchTolerance) return std::nullopt;
  if (std::abs(m(0, 2)) > kMatchTolerance) return std::nullopt;
  const double a = std::abs(m(1, 0));
  const double b = std::abs(m(2, 1));
  if (std::abs(a - b) > kMatchTolerance || a <= 0.0) return std::nullopt;
  return a;
}

}  // namespace

std::optional<double> analytic_ccmw(const BatteryHamiltonian& h, double coherence) {
  const auto& m = h.matrix();
  if (h.dim() == 2) return xi2(coherence, m(0, 0).real(), m(1, 1).real(), std::abs(m(0, 1)));
  if (h.dim() != 3) return std::nullopt;
  if (auto spacing = equal_spacing(m)) {
    if (*spacing == 0.0) {
      checked_coherence(coherence, 2.0, "analytic_ccmw");
      return 0.0;
    }
    return *spacing * xi3_diagonal(coherence);
  }
  if (auto alpha = ladder_coupling(m)) return xi3_offdiagonal(coherence, *alpha);
  return std::nullopt;
}

bool has_analytic_ccmw(const BatteryHamiltonian& h) {
  if (h.dim() == 2) return true;
  if (h.dim() != 3) return false;
  return equal_spacing(h.matrix()).has_value() || ladder_coupling(h.matrix()).has_value();
}

}  // namespace ccmw
