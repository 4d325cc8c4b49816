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

#include <span>
#include <vector>

#include "numerics.hpp"

namespace ccmw {

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kRoundoffEigenvalue = 1e-13;

// Largest l1 coherence a d-level state can carry, attained by the uniform
// superposition.
inline double max_coherence(int dim) { return dim - 1.0; }

class CoherenceValue {
 public:
  // Accepts values up to (dim - 1) + slack; anything in the slack band is
  // clamped onto the boundary.
  CoherenceValue(double value, int dim, double slack = 1e-9);

  double value() const noexcept { return value_; }
  int dim() const noexcept { return dim_; }
  double scaled() const noexcept { return value_ / max_coherence(dim_); }

  static CoherenceValue from_scaled(double scaled, int dim);

 private:
  double value_;
  int dim_;
};

class PureState {
 public:
  static PureState from_amplitudes(std::vector<Complex> amplitudes, double tol = kNormTolerance);

  int dim() const noexcept { return static_cast<int>(amps_.size()); }
  const std::vector<Complex>& amplitudes() const noexcept { return amps_; }
  ComplexMatrix projector() const;

 private:
  explicit PureState(std::vector<Complex> a) : amps_(std::move(a)) {}
  std::vector<Complex> amps_;
};

class DensityMatrix {
 public:
  // Checks Hermiticity, unit trace and positivity. Eigenvalues in
  // [-kPsdTolerance, -kRoundoffEigenvalue) are clamped to zero and the state renormalized.
  static DensityMatrix from_matrix(const ComplexMatrix& m);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int dim);

  const HermitianOperator& op() const noexcept { return op_; }
  const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
  int dim() const noexcept { return op_.dim(); }

  // Convex combination w * a + (1 - w) * b.
  static DensityMatrix mix(double w, const DensityMatrix& a, const DensityMatrix& b);

 private:
  explicit DensityMatrix(HermitianOperator op) : op_(std::move(op)) {}
  HermitianOperator op_;
};

// sum_{i != j} |m_ij| on a raw matrix.
double off_diagonal_l1(const ComplexMatrix& m);

CoherenceValue l1_coherence(const DensityMatrix& state);

// Tr[rho H]; throws if the imaginary residual exceeds 1e-10.
double energy(const DensityMatrix& state, const HermitianOperator& h);
double energy(const PureState& psi, const HermitianOperator& h);

// Moduli must be square-normalized within 1e-8. The phase of the first entry
// with nonzero modulus is removed so the result carries no global phase.
PureState pure_from_polar(std::span<const double> moduli, std::span<const double> phases);

// diag(weights / sum(weights)) conjugated by U.
DensityMatrix density_from_spectrum(std::span<const double> weights, const UnitaryMatrix& u);

double purity(const DensityMatrix& state);

// Eigenvalues of the state, ascending.
std::vector<double> spectrum(const DensityMatrix& state);

}  // namespace ccmw
