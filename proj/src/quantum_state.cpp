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

#include "quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace ccmw {

CoherenceValue::CoherenceValue(double value, int dim, double slack) : value_(value), dim_(dim) {
  require(dim >= 1, Errc::kOutOfRange, "dimension must be positive");
  require(std::isfinite(value), Errc::kInvalidArgument, "coherence must be finite");
  const double cmax = max_coherence(dim);
  if (value < -slack || value > cmax + slack) {
    std::ostringstream os;
    os << "coherence " << value << " outside admissible range [0, " << cmax << "] for d=" << dim;
    fail(Errc::kOutOfRange, os.str());
  }
  value_ = std::clamp(value, 0.0, cmax);
}

CoherenceValue CoherenceValue::from_scaled(double scaled, int dim) {
  return CoherenceValue(scaled * max_coherence(dim), dim);
}

PureState PureState::from_amplitudes(std::vector<Complex> amplitudes, double tol) {
  require(!amplitudes.empty() && amplitudes.size() <= std::size_t(kMaxDim), Errc::kOutOfRange,
          "pure state dimension must be in [1, 8]");
  double n2 = 0.0;
  for (const auto& a : amplitudes) {
    require(std::isfinite(a.real()) && std::isfinite(a.imag()), Errc::kInvalidArgument,
            "amplitudes must be finite");
    n2 += std::norm(a);
  }
  if (std::abs(n2 - 1.0) > tol) {
    std::ostringstream os;
    os << "state is not normalized: sum |a_i|^2 = " << n2;
    fail(Errc::kInvalidState, os.str());
  }
  return PureState(std::move(amplitudes));
}

ComplexMatrix PureState::projector() const {
  const int n = dim();
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = amps_[i] * std::conj(amps_[j]);
  return m;
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m) {
  auto op = HermitianOperator::from_matrix(m);
  const double tr = op.matrix().trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "density matrix trace is " << tr << ", expected 1";
    fail(Errc::kInvalidState, os.str());
  }
  auto eig = eigendecompose(op);
  const double lowest = eig.values.front();
  if (lowest < -kPsdTolerance) {
    std::ostringstream os;
    os << "density matrix is not positive semidefinite: eigenvalue " << lowest;
    fail(Errc::kInvalidState, os.str());
  }
  // Rounding-level negatives are left alone.
  if (lowest < -kRoundoffEigenvalue) {
    std::vector<double> w = eig.values;
    for (auto& x : w) x = std::max(x, 0.0);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= total;
    std::ostringstream os;
    os << "clamped density-matrix eigenvalue " << lowest << " to zero";
    log_warning(os.str());
    return DensityMatrix(
        HermitianOperator::from_matrix(conjugate_diagonal(eig.vectors.matrix(), w)));
  }
  return DensityMatrix(std::move(op));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return from_matrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= 1.0 / dim;
  return from_matrix(m);
}

DensityMatrix DensityMatrix::mix(double w, const DensityMatrix& a, const DensityMatrix& b) {
  require(w >= 0.0 && w <= 1.0, Errc::kOutOfRange, "mixing weight must be in [0, 1]");
  return from_matrix(a.matrix() * Complex(w) + b.matrix() * Complex(1.0 - w));
}

double off_diagonal_l1(const ComplexMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (i != j) s += std::abs(m(i, j));
  return s;
}

CoherenceValue l1_coherence(const DensityMatrix& state) {
  return CoherenceValue(off_diagonal_l1(state.matrix()), state.dim());
}

double energy(const DensityMatrix& state, const HermitianOperator& h) {
  require(state.dim() == h.dim(), Errc::kDimensionMismatch,
          "state and Hamiltonian dimensions differ");
  const Complex e = trace_of_product(state.matrix(), h.matrix());
  require(std::abs(e.imag()) <= 1e-10, Errc::kInternal, "energy has a non-negligible imaginary part");
  return e.real();
}

double energy(const PureState& psi, const HermitianOperator& h) {
  require(psi.dim() == h.dim(), Errc::kDimensionMismatch,
          "state and Hamiltonian dimensions differ");
  const auto& a = psi.amplitudes();
  const auto& m = h.matrix();
  Complex e = 0.0;
  for (int i = 0; i < psi.dim(); ++i)
    for (int j = 0; j < psi.dim(); ++j) e += std::conj(a[i]) * m(i, j) * a[j];
  return e.real();
}

PureState pure_from_polar(std::span<const double> moduli, std::span<const double> phases) {
  require(moduli.size() == phases.size(), Errc::kDimensionMismatch,
          "moduli and phases must have equal length");
  double n2 = 0.0;
  for (double x : moduli) {
    require(x >= 0.0 && std::isfinite(x), Errc::kInvalidArgument, "moduli must be nonnegative");
    n2 += x * x;
  }
  if (std::abs(n2 - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "moduli are not normalized: sum x_i^2 = " << n2;
    fail(Errc::kInvalidState, os.str());
  }
  const auto first = std::find_if(moduli.begin(), moduli.end(), [](double x) { return x > 0.0; });
  const double gauge = first == moduli.end() ? 0.0 : phases[first - moduli.begin()];
  std::vector<Complex> amps(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) amps[i] = std::polar(moduli[i], phases[i] - gauge);
  return PureState::from_amplitudes(std::move(amps), 1e-8);
}

DensityMatrix density_from_spectrum(std::span<const double> weights, const UnitaryMatrix& u) {
  require(weights.size() == std::size_t(u.dim()), Errc::kDimensionMismatch,
          "weight count does not match the unitary dimension");
  double total = 0.0;
  for (double w : weights) {
    require(w >= 0.0 && std::isfinite(w), Errc::kInvalidArgument, "weights must be nonnegative");
    total += w;
  }
  require(total > 0.0, Errc::kInvalidArgument, "at least one weight must be positive");
  std::vector<double> p(weights.begin(), weights.end());
  for (auto& x : p) x /= total;
  return DensityMatrix::from_matrix(conjugate_diagonal(u.matrix(), p));
}

double purity(const DensityMatrix& state) {
  return trace_of_product(state.matrix(), state.matrix()).real();
}

std::vector<double> spectrum(const DensityMatrix& state) { return eigendecompose(state.op()).values; }

}  // namespace ccmw
