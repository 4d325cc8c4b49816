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

#include "ccmw_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "analytic.hpp"
#include "error.hpp"

namespace ccmw {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_inputs(const BatteryHamiltonian& h, int dim, double coherence) {
  require(dim >= kMinBatteryDim && dim <= kMaxBatteryDim, Errc::kOutOfRange,
          "dimension must lie in [2, 8]");
  require(h.dim() == dim, Errc::kDimensionMismatch, "Hamiltonian dimension differs from d");
  if (!std::isfinite(coherence) || coherence < 0.0 || coherence > max_coherence(dim)) {
    std::ostringstream os;
    os << "infeasible coherence " << coherence << " for d=" << dim << " (max " << max_coherence(dim)
       << ")";
    fail(Errc::kOutOfRange, os.str());
  }
}

// Square-normalized moduli; the zero vector maps to the first basis state.
void normalize_moduli(const double* m, int d, double* out) {
  double n2 = 0.0;
  for (int i = 0; i < d; ++i) n2 += m[i] * m[i];
  if (n2 <= 0.0) {
    for (int i = 0; i < d; ++i) out[i] = i == 0 ? 1.0 : 0.0;
    return;
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (int i = 0; i < d; ++i) out[i] = m[i] * inv;
}

struct PureView {
  std::array<double, kMaxDim> moduli{};
  std::array<Complex, kMaxDim> amps{};
  double coherence = 0.0;
};

PureView pure_view(const double* block, int d) {
  PureView v;
  normalize_moduli(block, d, v.moduli.data());
  double sum = 0.0;
  for (int i = 0; i < d; ++i) sum += v.moduli[i];
  v.coherence = sum * sum - 1.0;
  v.amps[0] = v.moduli[0];
  for (int i = 1; i < d; ++i) v.amps[i] = std::polar(v.moduli[i], block[d + i - 1]);
  return v;
}

double expectation(const ComplexMatrix& h, const PureView& v, int d) {
  double e = 0.0;
  for (int i = 0; i < d; ++i) {
    e += h(i, i).real() * std::norm(v.amps[i]);
    for (int j = i + 1; j < d; ++j) e += 2.0 * (std::conj(v.amps[i]) * h(i, j) * v.amps[j]).real();
  }
  return e;
}

void normalized_weights(const double* w, int d, double* out) {
  double total = 0.0;
  for (int i = 0; i < d; ++i) total += w[i];
  for (int i = 0; i < d; ++i) out[i] = total > 0.0 ? w[i] / total : 1.0 / d;
}

// Generator angles of a unitary taking e0 to psi, along the geodesic in the
// plane spanned by e0 and psi. psi[0] must be real and nonnegative.
std::vector<double> geodesic_angles(const GeneratorSet& gens, const Complex* psi, int d) {
  const double c = std::clamp(psi[0].real(), 0.0, 1.0);
  const double t = std::acos(c);
  std::vector<double> theta(gens.size(), 0.0);
  const double s = std::sin(t);
  if (s <= 0.0) return theta;
  // G = -i t (|v><e0| - |e0><v|), v = (psi - c e0) / s.
  ComplexMatrix g(d);
  const Complex mi(0.0, -1.0);
  for (int i = 1; i < d; ++i) {
    const Complex v = psi[i] / s;
    g(i, 0) = mi * t * v;
    g(0, i) = -mi * t * std::conj(v);
  }
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const ComplexMatrix& tk = gens[k].matrix();
    theta[k] = trace_of_product(g, tk).real() / trace_of_product(tk, tk).real();
  }
  return theta;
}

// Best rearrangement of one state's moduli; phases stay with their slots.
// Coherence depends only on the multiset of moduli, so this keeps feasibility.
// sign = +1 maximizes the energy, -1 minimizes it.
bool permute_moduli(const ComplexMatrix& h, double* block, int d, double sign) {
  std::array<double, kMaxDim> base{}, trial{};
  std::copy_n(block, 2 * d - 1, base.begin());
  std::copy_n(block, 2 * d - 1, trial.begin());
  std::array<int, kMaxDim> perm{};
  for (int i = 0; i < d; ++i) perm[i] = i;
  const double start = sign * expectation(h, pure_view(base.data(), d), d);
  double best = start;
  std::array<int, kMaxDim> best_perm = perm;
  while (std::next_permutation(perm.begin(), perm.begin() + d)) {
    for (int i = 0; i < d; ++i) trial[i] = base[perm[i]];
    const double e = sign * expectation(h, pure_view(trial.data(), d), d);
    if (e > best) {
      best = e;
      best_perm = perm;
    }
  }
  if (!(best > start + 1e-12)) return false;
  for (int i = 0; i < d; ++i) block[i] = base[best_perm[i]];
  return true;
}

CcmwEstimate finish(CcmwMode mode, const BatteryHamiltonian& h, int dim, double coherence,
                    OptimizationResult r, DensityMatrix in, DensityMatrix out, double tolerance) {
  const double gap = energy(in, h.op()) - energy(out, h.op());
  const double viol = std::max(std::abs(off_diagonal_l1(in.matrix()) - coherence),
                               std::abs(off_diagonal_l1(out.matrix()) - coherence));
  CcmwEstimate e{dim,  coherence, h.id(), gap, std::move(in), std::move(out), mode,
                 viol, viol <= tolerance, std::move(r)};
  if (!e.feasible) {
    std::ostringstream os;
    os << "no feasible point found for d=" << dim << " C=" << coherence << " (violation " << viol
       << ")";
    log_warning(os.str());
  }
  return e;
}

// ES, then a modulus-permutation pass with one seeded rerun when it helps.
OptimizationResult pure_search(OptimizationProblem& p, const ComplexMatrix& h, int d,
                               const OptimizerConfig& config) {
  OptimizationResult r = isres_minimize(p, config);
  if (!r.converged) return r;
  std::vector<double> x = r.best_params;
  const int block = 2 * d - 1;
  const bool moved_in = permute_moduli(h, x.data(), d, 1.0);
  const bool moved_out = permute_moduli(h, x.data() + block, d, -1.0);
  if (!moved_in && !moved_out) return r;
  p.seed_point = x;
  OptimizerConfig single = config;
  single.restarts = 1;
  single.seed = config.seed + static_cast<std::uint64_t>(config.restarts);
  OptimizationResult refined = isres_minimize(p, single);
  p.seed_point.clear();
  refined.evaluations_used += r.evaluations_used;
  if (refined.converged && refined.best_value < r.best_value) return refined;
  r.evaluations_used = refined.evaluations_used;
  return r;
}

}  // namespace

std::string_view to_string(CcmwMode m) { return m == CcmwMode::kMixed ? "mixed" : "pure"; }

CcmwMode parse_mode(std::string_view s) {
  if (s == "mixed" || s == "numeric-mixed") return CcmwMode::kMixed;
  if (s == "pure" || s == "numeric-pure") return CcmwMode::kPure;
  fail(Errc::kParse, "unknown mode '" + std::string(s) + "' (expected pure or mixed)");
}

OptimizerConfig default_optimizer_config(int dim) {
  OptimizerConfig c;
  c.max_evaluations = dim <= 4 ? 200000 : dim <= 6 ? 500000 : 1000000;
  return c;
}

OptimizationProblem mixed_problem(const BatteryHamiltonian& h, double coherence, double tolerance) {
  const int d = h.dim();
  check_inputs(h, d, coherence);
  const int g = d * d;
  OptimizationProblem p;
  p.num_params = d + 2 * g;
  // Angle box centred on the identity.
  p.lower.assign(p.num_params, -std::numbers::pi);
  p.upper.assign(p.num_params, std::numbers::pi);
  for (int i = 0; i < d; ++i) {
    p.lower[i] = 0.0;
    p.upper[i] = 1.0;
  }
  p.num_constraints = 2;
  p.constraint_tolerance = tolerance;
  auto gens = std::make_shared<const GeneratorSet>(gellmann_generators(d));
  const ComplexMatrix hm = h.matrix();
  p.evaluate = [d, g, gens, hm, coherence](std::span<const double> x, double& f,
                                           std::span<double> r) {
    std::array<double, kMaxDim> w{};
    normalized_weights(x.data(), d, w.data());
    const std::span<const double> wd(w.data(), d);
    const ComplexMatrix ui = unitary_from_parameters_unchecked(*gens, x.subspan(d, g));
    const ComplexMatrix uf = unitary_from_parameters_unchecked(*gens, x.subspan(d + g, g));
    const ComplexMatrix rin = conjugate_diagonal(ui, wd);
    const ComplexMatrix rf = conjugate_diagonal(uf, wd);
    f = -(trace_of_product(rin, hm).real() - trace_of_product(rf, hm).real());
    r[0] = off_diagonal_l1(rin) - coherence;
    r[1] = off_diagonal_l1(rf) - coherence;
  };
  return p;
}

OptimizationProblem pure_problem(const BatteryHamiltonian& h, double coherence, double tolerance) {
  const int d = h.dim();
  check_inputs(h, d, coherence);
  const int block = 2 * d - 1;
  OptimizationProblem p;
  p.num_params = 2 * block;
  p.lower.assign(p.num_params, 0.0);
  p.upper.assign(p.num_params, kTwoPi);
  p.periodic.assign(p.num_params, true);
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < d; ++i) {
      p.upper[s * block + i] = 1.0;
      p.periodic[s * block + i] = false;
    }
  p.num_constraints = 2;
  p.constraint_tolerance = tolerance;
  const ComplexMatrix hm = h.matrix();
  p.evaluate = [d, block, hm, coherence](std::span<const double> x, double& f, std::span<double> r) {
    const PureView in = pure_view(x.data(), d);
    const PureView out = pure_view(x.data() + block, d);
    f = -(expectation(hm, in, d) - expectation(hm, out, d));
    r[0] = in.coherence - coherence;
    r[1] = out.coherence - coherence;
  };
  return p;
}

CcmwEstimate ccmw_mixed(const BatteryHamiltonian& h, int dim, double coherence,
                        const OptimizerConfig& config) {
  check_inputs(h, dim, coherence);
  OptimizationProblem p = mixed_problem(h, coherence);
  const int g = dim * dim;
  const GeneratorSet gens = gellmann_generators(dim);
  std::int64_t pure_evaluations = 0;
  if (config.pure_warm_start) {
    OptimizationProblem pp = pure_problem(h, coherence);
    const OptimizationResult pr = pure_search(pp, h.matrix(), dim, config);
    pure_evaluations = pr.evaluations_used;
    if (pr.converged) {
      p.seed_point.assign(p.num_params, 0.0);
      p.seed_point[0] = 1.0;
      const int block = 2 * dim - 1;
      for (int s = 0; s < 2; ++s) {
        const PureView v = pure_view(pr.best_params.data() + s * block, dim);
        const std::vector<double> th = geodesic_angles(gens, v.amps.data(), dim);
        std::copy(th.begin(), th.end(), p.seed_point.begin() + dim + s * g);
      }
    }
  }
  OptimizationResult r = isres_minimize(p, config);
  r.evaluations_used += pure_evaluations;
  const std::span<const double> x(r.best_params);
  std::vector<double> w(dim);
  normalized_weights(x.data(), dim, w.data());
  const UnitaryMatrix ui = unitary_from_parameters(gens, x.subspan(dim, g));
  const UnitaryMatrix uf = unitary_from_parameters(gens, x.subspan(dim + g, g));
  DensityMatrix in = density_from_spectrum(w, ui);
  DensityMatrix out = density_from_spectrum(w, uf);
  return finish(CcmwMode::kMixed, h, dim, coherence, std::move(r), std::move(in), std::move(out),
                p.constraint_tolerance);
}

CcmwEstimate ccmw_pure(const BatteryHamiltonian& h, int dim, double coherence,
                       const OptimizerConfig& config) {
  check_inputs(h, dim, coherence);
  OptimizationProblem p = pure_problem(h, coherence);
  OptimizationResult r = pure_search(p, h.matrix(), dim, config);
  const int block = 2 * dim - 1;
  auto state = [&](int s) {
    const double* b = r.best_params.data() + s * block;
    std::vector<double> mod(dim), ph(dim, 0.0);
    normalize_moduli(b, dim, mod.data());
    for (int i = 1; i < dim; ++i) ph[i] = b[dim + i - 1];
    return DensityMatrix::from_pure(pure_from_polar(mod, ph));
  };
  DensityMatrix in = state(0);
  DensityMatrix out = state(1);
  return finish(CcmwMode::kPure, h, dim, coherence, std::move(r), std::move(in), std::move(out),
                p.constraint_tolerance);
}

CcmwEstimate ccmw_estimate(CcmwMode mode, const BatteryHamiltonian& h, int dim, double coherence,
                           const OptimizerConfig& config) {
  return mode == CcmwMode::kMixed ? ccmw_mixed(h, dim, coherence, config)
                                  : ccmw_pure(h, dim, coherence, config);
}

std::vector<VerifyRow> verify_against_analytic(const BatteryHamiltonian& h, int dim,
                                               const std::vector<double>& coherence_grid,
                                               const OptimizerConfig& config, CcmwMode mode) {
  require(h.dim() == dim, Errc::kDimensionMismatch, "Hamiltonian dimension differs from d");
  if (!has_analytic_ccmw(h)) {
    std::ostringstream os;
    os << "no closed form for d=" << dim << " " << to_string(h.structure());
    fail(Errc::kUnsupported, os.str());
  }
  std::vector<VerifyRow> rows;
  rows.reserve(coherence_grid.size());
  for (double c : coherence_grid) {
    const double a = *analytic_ccmw(h, c);
    const CcmwEstimate e = ccmw_estimate(mode, h, dim, c, config);
    rows.push_back({c, a, e.value, e.value - a, e.feasible});
  }
  return rows;
}

}  // namespace ccmw
