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

// Unconstrained ergotropy, permutation-phase unitaries and the passivity test
// restricted to them.

#include <vector>

#include "hamiltonians.hpp"
#include "quantum_state.hpp"

namespace ccmw {

inline constexpr double kPopulationTieTolerance = 1e-12;
inline constexpr int kMaxBruteForceDim = 6;

class PermPhaseUnitary {
 public:
  // Maps |i> to e^{i phases[i]} |permutation[i]>.
  PermPhaseUnitary(std::vector<int> permutation, std::vector<double> phases);

  int dim() const noexcept { return static_cast<int>(perm_.size()); }
  const std::vector<int>& permutation() const noexcept { return perm_; }
  const std::vector<double>& phases() const noexcept { return phases_; }

  UnitaryMatrix matrix() const;
  // U rho U^dagger without forming U.
  ComplexMatrix conjugate(const ComplexMatrix& rho) const;

 private:
  std::vector<int> perm_;
  std::vector<double> phases_;
};

PermPhaseUnitary perm_phase_unitary(std::vector<int> permutation, std::vector<double> phases);

// Tr[rho H] - sum_k s_k e_k, s descending, e ascending.
double ergotropy(const DensityMatrix& rho, const HermitianOperator& h);

// sum_k s_k |e_k><e_k| in the eigenbasis of H.
DensityMatrix passive_state(const DensityMatrix& rho, const HermitianOperator& h);

// Populations anti-ordered with the (diagonal) energies.
bool is_isocoherent_passive(const DensityMatrix& rho, const BatteryHamiltonian& h);

// Largest energy drop over permutation-phase unitaries for a diagonal H:
// populations rearranged against the energies.
double isocoherent_gain(const DensityMatrix& rho, const BatteryHamiltonian& h);

struct BruteForceReport {
  bool is_passive;
  double best_gain;
  std::vector<int> best_permutation;
};

// Enumerates all d! permutations, d <= 6.
BruteForceReport passivity_bruteforce(const DensityMatrix& rho, const BatteryHamiltonian& h);

}  // namespace ccmw
