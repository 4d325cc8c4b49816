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

#include "passivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace ccmw {

PermPhaseUnitary::PermPhaseUnitary(std::vector<int> permutation, std::vector<double> phases)
    : perm_(std::move(permutation)), phases_(std::move(phases)) {
  const int d = dim();
  require(d >= 1 && d <= kMaxDim, Errc::kOutOfRange, "permutation length must be in [1, 8]");
  require(phases_.size() == perm_.size(), Errc::kDimensionMismatch,
          "need one phase per basis state");
  std::vector<bool> seen(d, false);
  for (int p : perm_) {
    require(p >= 0 && p < d && !seen[p], Errc::kInvalidArgument, "permutation is not a bijection");
    seen[p] = true;
  }
  for (double w : phases_) require(std::isfinite(w), Errc::kInvalidArgument, "phases must be finite");
}

UnitaryMatrix PermPhaseUnitary::matrix() const {
  ComplexMatrix m(dim());
  for (int i = 0; i < dim(); ++i) m(perm_[i], i) = std::polar(1.0, phases_[i]);
  return UnitaryMatrix::from_matrix(m, 1e-12);
}

ComplexMatrix PermPhaseUnitary::conjugate(const ComplexMatrix& rho) const {
  require(rho.dim() == dim(), Errc::kDimensionMismatch, "state dimension differs");
  ComplexMatrix r(dim());
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      r(perm_[i], perm_[j]) = std::polar(1.0, phases_[i] - phases_[j]) * rho(i, j);
  return r;
}

PermPhaseUnitary perm_phase_unitary(std::vector<int> permutation, std::vector<double> phases) {
  return PermPhaseUnitary(std::move(permutation), std::move(phases));
}

double ergotropy(const DensityMatrix& rho, const HermitianOperator& h) {
  require(rho.dim() == h.dim(), Errc::kDimensionMismatch, "state and Hamiltonian dimensions differ");
  std::vector<double> s = spectrum(rho);
  std::reverse(s.begin(), s.end());
  const Eigensystem es = eigendecompose(h);
  double passive = 0.0;
  for (int k = 0; k < rho.dim(); ++k) passive += s[k] * es.values[k];
  return std::max(0.0, energy(rho, h) - passive);
}

DensityMatrix passive_state(const DensityMatrix& rho, const HermitianOperator& h) {
  require(rho.dim() == h.dim(), Errc::kDimensionMismatch, "state and Hamiltonian dimensions differ");
  std::vector<double> s = spectrum(rho);
  std::reverse(s.begin(), s.end());
  for (double& x : s) x = std::max(x, 0.0);
  return density_from_spectrum(s, eigendecompose(h).vectors);
}

namespace {

std::vector<double> diagonal_levels(const BatteryHamiltonian& h) {
  const auto& m = h.matrix();
  for (int i = 0; i < h.dim(); ++i)
    for (int j = 0; j < h.dim(); ++j)
      if (i != j && std::abs(m(i, j)) > 1e-12)
        fail(Errc::kInvalidArgument, "passivity test needs a diagonal Hamiltonian");
  std::vector<double> e(h.dim());
  for (int i = 0; i < h.dim(); ++i) e[i] = m(i, i).real();
  return e;
}

}  // namespace

bool is_isocoherent_passive(const DensityMatrix& rho, const BatteryHamiltonian& h) {
  require(rho.dim() == h.dim(), Errc::kDimensionMismatch, "state and Hamiltonian dimensions differ");
  const std::vector<double> e = diagonal_levels(h);
  const auto& m = rho.matrix();
  for (int i = 0; i < h.dim(); ++i)
    for (int j = 0; j < h.dim(); ++j)
      if (e[i] < e[j] && m(i, i).real() < m(j, j).real() - kPopulationTieTolerance) return false;
  return true;
}

double isocoherent_gain(const DensityMatrix& rho, const BatteryHamiltonian& h) {
  require(rho.dim() == h.dim(), Errc::kDimensionMismatch, "state and Hamiltonian dimensions differ");
  std::vector<double> e = diagonal_levels(h);
  const auto& m = rho.matrix();
  std::vector<double> pop(h.dim());
  double before = 0.0;
  for (int i = 0; i < h.dim(); ++i) {
    pop[i] = m(i, i).real();
    before += pop[i] * e[i];
  }
  std::sort(e.begin(), e.end());
  std::sort(pop.begin(), pop.end(), std::greater<>());
  double after = 0.0;
  for (int i = 0; i < h.dim(); ++i) after += pop[i] * e[i];
  return std::max(0.0, before - after);
}

BruteForceReport passivity_bruteforce(const DensityMatrix& rho, const BatteryHamiltonian& h) {
  const int d = h.dim();
  require(rho.dim() == d, Errc::kDimensionMismatch, "state and Hamiltonian dimensions differ");
  if (d > kMaxBruteForceDim) {
    std::ostringstream os;
    os << "brute-force passivity enumerates d! permutations; d=" << d << " exceeds "
       << kMaxBruteForceDim;
    fail(Errc::kOutOfRange, os.str());
  }
  const std::vector<double> e = diagonal_levels(h);
  const auto& m = rho.matrix();
  std::vector<double> pop(d);
  double e0 = 0.0;
  for (int i = 0; i < d; ++i) {
    pop[i] = m(i, i).real();
    e0 += e[i] * pop[i];
  }

  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  BruteForceReport best{true, 0.0, perm};
  do {
    double after = 0.0;
    for (int i = 0; i < d; ++i) after += e[perm[i]] * pop[i];
    const double gain = e0 - after;
    if (gain > best.best_gain) {
      best.best_gain = gain;
      best.best_permutation = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Phases drop out for a diagonal Hamiltonian.
  std::vector<double> phases(d);
  for (int i = 0; i < d; ++i) phases[i] = 0.7 * (i + 1);
  const PermPhaseUnitary u(best.best_permutation, phases);
  const double with_phases = e0 - trace_of_product(u.conjugate(m), h.matrix()).real();
  double scale = 1.0;
  for (double x : e) scale = std::max(scale, std::abs(x));
  if (std::abs(with_phases - best.best_gain) > 1e-12 * scale)
    fail(Errc::kInternal, "permutation-phase energy depends on the phases");

  best.is_passive = best.best_gain <= kPopulationTieTolerance;
  return best;
}

}  // namespace ccmw
