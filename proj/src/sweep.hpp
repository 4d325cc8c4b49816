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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccmw_optimizer.hpp"
#include "hamiltonians.hpp"
#include "quantum_state.hpp"

namespace ccmw {

enum class SweepMode { kAnalytic, kNumericPure, kNumericMixed };

std::string_view to_string(SweepMode m);
SweepMode parse_sweep_mode(std::string_view s);

struct CoherenceGrid {
  int count = 21;
  bool scaled = true;
  // Unscaled grids span [0, max]; defaults to the smallest d - 1 of the sweep.
  std::optional<double> max;
};

// Fields left empty keep the per-dimension defaults.
struct OptimizerOverrides {
  std::optional<int> population;
  std::optional<std::int64_t> max_evaluations;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<double> initial_tolerance;
  std::optional<double> anneal_fraction;
  std::optional<bool> pure_warm_start;

  OptimizerConfig apply(OptimizerConfig base) const;
};

struct SweepConfig {
  std::vector<int> dimensions;
  std::string hamiltonian;  // spec string, see parse_hamiltonian
  CoherenceGrid grid;
  OptimizerOverrides optimizer;
  std::vector<SweepMode> modes;
  std::string output_path;
  // wall_time_ms is written as 0 unless timing is on, so bodies reproduce byte for byte.
  bool timing = false;

  void validate() const;
};

// Accepts the JSON document described in the README. Throws kParse or
// kInvalidArgument with a message naming the offending field.
SweepConfig parse_sweep_config(std::string_view json_text);
SweepConfig load_sweep_config(const std::string& path);

std::vector<double> coherence_points(int dim, const CoherenceGrid& grid, int min_dim);

struct SweepRecord {
  int dimension = 0;
  std::string hamiltonian_id;
  double coherence = 0.0;
  double scaled_coherence = 0.0;
  SweepMode mode = SweepMode::kAnalytic;
  double value = 0.0;
  double constraint_violation = 0.0;
  std::uint64_t seed = 0;
  double wall_time_ms = 0.0;
  bool feasible = true;

  bool operator==(const SweepRecord&) const = default;
};

// Rows come back in (dimension, grid point, mode) order whatever the thread count.
std::vector<SweepRecord> run_sweep(const SweepConfig& config, int threads = 1);

inline constexpr std::string_view kCsvMagic = "# ccmw-csv v1";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& rows,
                     std::string_view generated_at);
std::vector<SweepRecord> read_sweep_csv(std::istream& in);

// RFC 4180 field quoting and splitting.
std::string csv_field(std::string_view s);
std::vector<std::string> split_csv_line(std::string_view line);

std::string utc_timestamp();

struct VerifyReport {
  std::vector<VerifyRow> rows;
  double max_abs_gap = 0.0;
  bool all_feasible = true;
  bool passed = false;
};

VerifyReport run_verify(const BatteryHamiltonian& h, int points, double tolerance,
                        const OptimizerConfig& config, CcmwMode mode);

struct EllipseRow {
  double coherence;
  int index;
  double x1;
  double x2;
  double residual;
};

inline constexpr int kEllipsePoints = 512;
inline constexpr std::string_view kEllipseMagic = "# ccmw-ellipse v1";

std::vector<EllipseRow> ellipse_rows(const std::vector<double>& coherences,
                                     int points = kEllipsePoints);
void write_ellipse_csv(std::ostream& out, const std::vector<EllipseRow>& rows);

// {"dim": d, "real": [...], "imag": [...]}, row-major; imag may be omitted.
DensityMatrix parse_state_json(std::string_view json_text);

struct PassiveReport {
  bool passive = false;
  double gain = 0.0;
  bool cross_checked = false;  // brute force ran (d <= 6)
  bool agrees = true;
  double brute_force_gain = 0.0;
};

PassiveReport passive_check(const DensityMatrix& rho, const BatteryHamiltonian& h);

}  // namespace ccmw
