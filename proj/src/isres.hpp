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

// Improved stochastic ranking evolution strategy for bound- and
// equality-constrained minimization.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ccmw {

// Writes the objective and one residual per equality constraint.
using Evaluator =
    std::function<void(std::span<const double> x, double& objective, std::span<double> residuals)>;

struct OptimizationProblem {
  int num_params = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  // Parameters flagged periodic wrap around their box instead of being resampled.
  std::vector<bool> periodic;
  // Optional starting point, inserted as the first individual of every run.
  std::vector<double> seed_point;
  int num_constraints = 0;
  Evaluator evaluate;
  double constraint_tolerance = 1e-6;

  static OptimizationProblem from_functions(
      std::vector<double> lower, std::vector<double> upper,
      std::function<double(std::span<const double>)> objective,
      std::vector<std::function<double(std::span<const double>)>> equality_constraints,
      double constraint_tolerance = 1e-6);

  void validate() const;
};

struct OptimizerConfig {
  int population = 0;  // 0 selects 20 * num_params
  std::int64_t max_evaluations = 200000;
  std::uint64_t seed = 1;
  int restarts = 8;
  int threads = 1;
  double ranking_probability = 0.45;
  double differential_gamma = 0.85;
  double smoothing = 0.2;
  // Stop a run once the best value moved less than stall_tolerance over
  // stall_generations generations, or every step size fell below sigma_floor.
  int stall_generations = 150;
  double stall_tolerance = 1e-10;
  double sigma_floor = 1e-9;
  // Equality tolerance used for ranking starts at initial_tolerance and
  // shrinks geometrically to the problem tolerance over anneal_fraction of
  // the generation budget. Zero ranks with the problem tolerance throughout.
  double initial_tolerance = 1e-1;
  double anneal_fraction = 0.8;
  // Newton projection of the final point onto the constraint manifold.
  bool restore_feasibility = true;
  // ccmw_mixed only: seed the mixed search with the pure-state optimum.
  bool pure_warm_start = true;
};

enum class StopReason { kBudget, kStalled, kSigmaCollapse };

std::string_view to_string(StopReason r);

struct OptimizationResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  double max_constraint_violation = 0.0;
  std::int64_t evaluations_used = 0;
  std::uint64_t seed = 0;
  bool converged = false;  // best point satisfies every constraint within tolerance
  StopReason stop_reason = StopReason::kBudget;
  int run_index = 0;
};

// One run with config.seed; restarts and threads are ignored.
OptimizationResult isres_single(const OptimizationProblem& problem, const OptimizerConfig& config);

// config.restarts runs seeded seed, seed + 1, ...; best feasible wins, ties to
// the lowest run index, least infeasible if none is feasible.
OptimizationResult isres_minimize(const OptimizationProblem& problem, const OptimizerConfig& config);

// Damped minimum-norm Newton steps on the residuals, respecting bounds.
// Returns true when every residual ends within tolerance.
bool restore_feasibility(const OptimizationProblem& problem, std::vector<double>& x,
                         int max_iterations = 40);

}  // namespace ccmw
