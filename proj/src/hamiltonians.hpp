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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "numerics.hpp"

namespace ccmw {

enum class Structure {
  kQubitGeneral,
  kDiagonal,
  kOffDiagonal,
  kMixed,
  kCustomDiagonal,
};

std::string_view to_string(Structure s);

// Which constructor produced the operator; used for the canonical spec string.
enum class HamiltonianKind {
  kQubit,
  kJz,
  kJx,
  kJy,
  kOffDiagonal,
  kMixed,
  kCustomDiagonal,
};

class BatteryHamiltonian {
 public:
  BatteryHamiltonian(HamiltonianKind kind, Structure structure, HermitianOperator op,
                     std::map<std::string, double> params, std::vector<double> levels = {});

  const HermitianOperator& op() const noexcept { return op_; }
  const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
  int dim() const noexcept { return op_.dim(); }
  HamiltonianKind kind() const noexcept { return kind_; }
  Structure structure() const noexcept { return structure_; }

  const std::map<std::string, double>& params() const noexcept { return params_; }
  std::optional<double> param(std::string_view name) const;

  // Custom-diagonal spectrum in basis order (empty for other kinds).
  const std::vector<double>& levels() const noexcept { return levels_; }
  // epsilon_j - epsilon_i for a diagonal Hamiltonian.
  double level_gap(int i, int j) const;

  // Canonical "kind[:p1,p2,...]" form accepted by parse_hamiltonian.
  std::string id() const;

 private:
  HamiltonianKind kind_;
  Structure structure_;
  HermitianOperator op_;
  std::map<std::string, double> params_;
  std::vector<double> levels_;
};

inline constexpr int kMinBatteryDim = 2;
inline constexpr int kMaxBatteryDim = 8;

BatteryHamiltonian qubit_hamiltonian(double h1, double h3, double h2, double theta);
BatteryHamiltonian jz(int d);
BatteryHamiltonian jx(int d);
BatteryHamiltonian jy(int d);
BatteryHamiltonian j_offdiagonal(int d, double alpha1, double alpha2);
BatteryHamiltonian j_mixed(int d, double alpha1, double alpha2, double alpha3);
BatteryHamiltonian custom_diagonal(std::span<const double> epsilons);

// Parses "jz", "jx", "jy", "joff:a1,a2", "jmixed:a1,a2,a3", "qubit:h1,h3,h2,theta"
// or "diag:e0,e1,...". `dim` selects the size of the J-family operators and
// must agree with the implied size of qubit/diag specs.
BatteryHamiltonian parse_hamiltonian(std::string_view spec, int dim);

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

}  // namespace ccmw
