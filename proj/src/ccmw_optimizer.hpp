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

// Numerical CCMW: maximize Tr[(rho_in - rho_f) H] over states of fixed l1
// coherence, in mixed (unitary orbit of a diagonal seed) and pure form.

#include <string>
#include <vector>

#include "hamiltonians.hpp"
#include "isres.hpp"
#include "quantum_state.hpp"

namespace ccmw {

enum class CcmwMode { kMixed, kPure };

std::string_view to_string(CcmwMode m);
CcmwMode parse_mode(std::string_view s);

struct CcmwEstimate {
  int dimension = 0;
  double coherence = 0.0;
  std::string hamiltonian_id;
  double value = 0.0;
  DensityMatrix witness_initial;
  DensityMatrix witness_final;
  CcmwMode mode = CcmwMode::kPure;
  // max |l1(witness) - C| over both witnesses.
  double constraint_violation = 0.0;
  bool feasible = false;
  OptimizationResult optimizer;
};

// Budgets: 200k evaluations per run for d <= 4, 500k for d <= 6, 1M above.
OptimizerConfig default_optimizer_config(int dim);

// Parameters: d weights in [0, 1], then two blocks of d^2 generator angles in
// [-pi, pi). Objective -Tr[(rho_in - rho_f) H], residuals l1(rho) - C.
OptimizationProblem mixed_problem(const BatteryHamiltonian& h, double coherence,
                                  double tolerance = 1e-6);

// Parameters per state: d moduli in [0, 1] (normalized internally), then d - 1
// relative phases in [0, 2 pi). Residuals (sum of moduli)^2 - 1 - C.
OptimizationProblem pure_problem(const BatteryHamiltonian& h, double coherence,
                                 double tolerance = 1e-6);

CcmwEstimate ccmw_mixed(const BatteryHamiltonian& h, int dim, double coherence,
                        const OptimizerConfig& config);
CcmwEstimate ccmw_pure(const BatteryHamiltonian& h, int dim, double coherence,
                       const OptimizerConfig& config);
CcmwEstimate ccmw_estimate(CcmwMode mode, const BatteryHamiltonian& h, int dim, double coherence,
                           const OptimizerConfig& config);

struct VerifyRow {
  double coherence;
  double analytic;
  double numeric;
  double gap;  // numeric - analytic
  bool feasible;
};

// Throws kUnsupported when no closed form is known for h.
std::vector<VerifyRow> verify_against_analytic(const BatteryHamiltonian& h, int dim,
                                               const std::vector<double>& coherence_grid,
                                               const OptimizerConfig& config,
                                               CcmwMode mode = CcmwMode::kPure);

}  // namespace ccmw
