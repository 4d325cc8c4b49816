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

// ccmw: command-line front end over the C interface.
//
//   ccmw [--seed N] [--threads N] sweep --config cfg.json [--out path]
//   ccmw verify --ham jz --dim 3 --points 21 [--tol 2e-3] [--mode pure|mixed]
//   ccmw ellipse --coherences 0,0.5,1 --out ellipse.csv
//   ccmw passive --state rho.json --ham jz
//
// Exit codes: 0 success, 1 verification failure, 2 usage or config error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccmw/ccmw.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct HamiltonianDeleter {
  void operator()(ccmw_hamiltonian* h) const { ccmw_hamiltonian_free(h); }
};
struct StateDeleter {
  void operator()(ccmw_state* s) const { ccmw_state_free(s); }
};
struct ReportDeleter {
  void operator()(ccmw_verify_report* r) const { ccmw_verify_report_free(r); }
};
using HamiltonianPtr = std::unique_ptr<ccmw_hamiltonian, HamiltonianDeleter>;
using StatePtr = std::unique_ptr<ccmw_state, StateDeleter>;
using ReportPtr = std::unique_ptr<ccmw_verify_report, ReportDeleter>;

int report_failure(const char* what, ccmw_status s) {
  std::fprintf(stderr, "ccmw: %s: %s: %s\n", what, ccmw_status_string(s), ccmw_last_error());
  return kExitUsage;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

struct Globals {
  std::optional<std::uint64_t> seed;
  int threads = 1;
};

int cmd_sweep(const Globals& g, const std::string& config_path, const std::string& out_path) {
  std::string json;
  if (!read_file(config_path, json)) {
    std::fprintf(stderr, "ccmw: cannot read config '%s'\n", config_path.c_str());
    return kExitUsage;
  }
  ccmw_sweep_options opts{};
  opts.has_seed = g.seed.has_value();
  opts.seed = g.seed.value_or(0);
  opts.threads = g.threads;
  opts.output_path = out_path.empty() ? nullptr : out_path.c_str();
  std::size_t rows = 0;
  std::size_t infeasible = 0;
  if (ccmw_status s = ccmw_sweep_run(json.c_str(), &opts, &rows, &infeasible); s != CCMW_OK)
    return report_failure("sweep", s);
  std::fprintf(stderr, "ccmw: %zu rows, %zu flagged infeasible\n", rows, infeasible);
  return kExitOk;
}

int cmd_verify(const Globals& g, const std::string& spec, int dim, int points, double tol,
               const std::string& mode_name) {
  HamiltonianPtr h;
  {
    ccmw_hamiltonian* raw = nullptr;
    if (ccmw_status s = ccmw_hamiltonian_parse(spec.c_str(), dim, &raw); s != CCMW_OK)
      return report_failure("verify", s);
    h.reset(raw);
  }
  ccmw_optimizer_config cfg{};
  if (ccmw_status s = ccmw_optimizer_config_default(dim, &cfg); s != CCMW_OK)
    return report_failure("verify", s);
  if (g.seed) cfg.seed = *g.seed;
  cfg.threads = g.threads;
  const ccmw_mode mode = mode_name == "mixed" ? CCMW_MODE_MIXED : CCMW_MODE_PURE;

  ccmw_verify_report* raw = nullptr;
  if (ccmw_status s = ccmw_verify_run(h.get(), points, tol, mode, &cfg, &raw); s != CCMW_OK)
    return report_failure("verify", s);
  ReportPtr report(raw);

  std::printf("%12s %14s %14s %12s %s\n", "coherence", "analytic", "numeric", "gap", "feasible");
  for (std::size_t i = 0; i < ccmw_verify_report_size(report.get()); ++i) {
    ccmw_verify_row row{};
    ccmw_verify_report_row(report.get(), i, &row);
    std::printf("%12.6f %14.9f %14.9f %12.3e %s\n", row.coherence, row.analytic, row.numeric,
                row.gap, row.feasible ? "yes" : "no");
  }
  const bool ok = ccmw_verify_report_passed(report.get()) != 0;
  std::printf("max |gap| %.3e, tolerance %.3e: %s\n", ccmw_verify_report_max_gap(report.get()), tol,
              ok ? "PASS" : "FAIL");
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_ellipse(const std::vector<double>& coherences, const std::string& out) {
  if (ccmw_status s = ccmw_ellipse_write(coherences.data(), coherences.size(), out.c_str());
      s != CCMW_OK)
    return report_failure("ellipse", s);
  return kExitOk;
}

int cmd_passive(const std::string& state_path, const std::string& spec) {
  std::string json;
  if (!read_file(state_path, json)) {
    std::fprintf(stderr, "ccmw: cannot read state '%s'\n", state_path.c_str());
    return kExitUsage;
  }
  StatePtr state;
  {
    ccmw_state* raw = nullptr;
    if (ccmw_status s = ccmw_state_from_json(json.c_str(), &raw); s != CCMW_OK)
      return report_failure("passive", s);
    state.reset(raw);
  }
  HamiltonianPtr h;
  {
    ccmw_hamiltonian* raw = nullptr;
    const int dim = ccmw_state_dim(state.get());
    if (ccmw_status s = ccmw_hamiltonian_parse(spec.c_str(), dim, &raw); s != CCMW_OK)
      return report_failure("passive", s);
    h.reset(raw);
  }
  ccmw_passive_result r{};
  if (ccmw_status s = ccmw_passive_check(state.get(), h.get(), &r); s != CCMW_OK)
    return report_failure("passive", s);
  std::printf("%s, gain %.10g\n", r.passive ? "passive" : "active", r.gain);
  if (r.cross_checked)
    std::printf("brute force: gain %.10g, %s\n", r.brute_force_gain,
                r.agrees ? "agrees" : "DISAGREES");
  else
    std::printf("brute force: skipped (d > 6)\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence-constrained maximal work for qudit batteries"};
  app.set_version_flag("--version", std::string(ccmw_version()));
  app.require_subcommand(1);

  Globals g;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Base seed for the optimizer");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 256));

  auto* sweep = app.add_subcommand("sweep", "Run a JSON-configured sweep and write CSV");
  std::string config_path;
  std::string sweep_out;
  sweep->add_option("--config", config_path, "Sweep config (JSON)")->required();
  sweep->add_option("--out", sweep_out, "Output path, overrides the config; '-' for stdout");

  auto* verify = app.add_subcommand("verify", "Compare numerics with the closed form");
  std::string ham;
  int dim = 0;
  int points = 21;
  double tol = 2e-3;
  std::string mode = "pure";
  verify->add_option("--ham", ham, "Hamiltonian spec, e.g. jz or qubit:1,-1,0,0")->required();
  verify->add_option("--dim", dim, "Dimension")->required();
  verify->add_option("--points", points, "Grid points over [0, d-1]")->required()->check(
      CLI::Range(2, 100000));
  verify->add_option("--tol", tol, "Largest accepted |gap|")->check(CLI::PositiveNumber);
  verify->add_option("--mode", mode, "Search space")->check(CLI::IsMember({"pure", "mixed"}));

  auto* ellipse = app.add_subcommand("ellipse", "Qutrit isocoherent ellipse loci");
  std::vector<double> coherences;
  std::string ellipse_out;
  ellipse->add_option("--coherences", coherences, "Comma-separated list in [0, 2]")
      ->required()
      ->delimiter(',');
  ellipse->add_option("--out", ellipse_out, "Output CSV; '-' for stdout")->required();

  auto* passive = app.add_subcommand("passive", "Isocoherent passivity of a state");
  std::string state_path;
  std::string passive_ham;
  passive->add_option("--state", state_path, "State file (JSON)")->required();
  passive->add_option("--ham", passive_ham, "Diagonal Hamiltonian spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (*seed_opt) g.seed = seed;

  if (*sweep) return cmd_sweep(g, config_path, sweep_out);
  if (*verify) return cmd_verify(g, ham, dim, points, tol, mode);
  if (*ellipse) return cmd_ellipse(coherences, ellipse_out);
  if (*passive) return cmd_passive(state_path, passive_ham);
  return kExitUsage;
}
