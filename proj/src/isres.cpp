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

#include "isres.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <sstream>
#include <thread>

#include "error.hpp"

namespace ccmw {

OptimizationProblem OptimizationProblem::from_functions(
    std::vector<double> lower, std::vector<double> upper,
    std::function<double(std::span<const double>)> objective,
    std::vector<std::function<double(std::span<const double>)>> equality_constraints,
    double constraint_tolerance) {
  OptimizationProblem p;
  p.num_params = static_cast<int>(lower.size());
  p.lower = std::move(lower);
  p.upper = std::move(upper);
  p.num_constraints = static_cast<int>(equality_constraints.size());
  p.constraint_tolerance = constraint_tolerance;
  p.evaluate = [objective = std::move(objective), cons = std::move(equality_constraints)](
                   std::span<const double> x, double& f, std::span<double> r) {
    f = objective(x);
    for (std::size_t i = 0; i < cons.size(); ++i) r[i] = cons[i](x);
  };
  return p;
}

void OptimizationProblem::validate() const {
  require(num_params >= 1, Errc::kInvalidArgument, "problem needs at least one parameter");
  require(lower.size() == std::size_t(num_params) && upper.size() == std::size_t(num_params),
          Errc::kDimensionMismatch, "bounds must have num_params entries");
  require(periodic.empty() || periodic.size() == std::size_t(num_params), Errc::kDimensionMismatch,
          "periodic flags must be empty or have num_params entries");
  for (int i = 0; i < num_params; ++i) {
    require(std::isfinite(lower[i]) && std::isfinite(upper[i]) && lower[i] < upper[i],
            Errc::kInvalidArgument, "bounds must be finite with lower < upper");
  }
  require(seed_point.empty() || seed_point.size() == std::size_t(num_params),
          Errc::kDimensionMismatch, "seed point must be empty or have num_params entries");
  for (std::size_t i = 0; i < seed_point.size(); ++i) {
    require(seed_point[i] >= lower[i] && seed_point[i] <= upper[i], Errc::kOutOfRange,
            "seed point lies outside the bounds");
  }
  require(num_constraints >= 0, Errc::kInvalidArgument, "negative constraint count");
  require(static_cast<bool>(evaluate), Errc::kInvalidArgument, "problem has no evaluator");
  require(constraint_tolerance >= 0.0, Errc::kInvalidArgument, "negative constraint tolerance");
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::kBudget: return "budget";
    case StopReason::kStalled: return "stalled";
    case StopReason::kSigmaCollapse: return "sigma-collapse";
  }
  return "unknown";
}

namespace {

struct Scored {
  double f;
  double phi;          // ranking penalty
  double max_residual;
};

double penalty(std::span<const double> r, double tol) {
  double phi = 0.0;
  for (double ri : r) {
    const double a = std::abs(ri);
    if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
    const double excess = std::max(0.0, a - tol);
    phi += excess * excess;
  }
  return phi;
}

Scored score(const OptimizationProblem& p, std::span<const double> x, std::span<double> r,
             double tol) {
  double f = 0.0;
  p.evaluate(x, f, r);
  Scored s{std::isfinite(f) ? f : std::numeric_limits<double>::infinity(), penalty(r, tol), 0.0};
  for (double ri : r) s.max_residual = std::max(s.max_residual, std::abs(ri));
  if (std::isnan(s.max_residual)) s.max_residual = std::numeric_limits<double>::infinity();
  return s;
}

// Strict improvement: feasible beats infeasible, then objective or penalty.
bool better(const Scored& a, const Scored& b) {
  const bool fa = a.phi == 0.0, fb = b.phi == 0.0;
  if (fa != fb) return fa;
  if (fa) return a.f < b.f;
  return a.phi < b.phi;
}

double wrap(double x, double lo, double hi) {
  const double w = hi - lo;
  double t = std::fmod(x - lo, w);
  if (t < 0.0) t += w;
  return lo + t;
}

bool is_periodic(const OptimizationProblem& p, int j) {
  return !p.periodic.empty() && p.periodic[j];
}

}  // namespace

OptimizationResult isres_single(const OptimizationProblem& problem, const OptimizerConfig& config) {
  problem.validate();
  const int n = problem.num_params;
  const int m = problem.num_constraints;
  const int lambda = config.population > 0 ? config.population : 20 * n;
  require(lambda >= 2, Errc::kInvalidArgument, "population must be at least 2");
  if (lambda < 2 * n) {
    std::ostringstream os;
    os << "population " << lambda << " is below 2 * num_params = " << 2 * n;
    log_warning(os.str());
  }
  const int mu = std::max(1, static_cast<int>(std::ceil(lambda / 7.0)));
  const double tau = 1.0 / std::sqrt(2.0 * std::sqrt(double(n)));
  const double tau_prime = 1.0 / std::sqrt(2.0 * n);

  boost::random::mt19937_64 rng(config.seed);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> sigma_max(n);
  for (int j = 0; j < n; ++j) sigma_max[j] = (problem.upper[j] - problem.lower[j]) / std::sqrt(double(n));

  std::vector<double> xs(std::size_t(lambda) * n), sig(std::size_t(lambda) * n);
  std::vector<double> parents_x(std::size_t(mu) * n), parents_s(std::size_t(mu) * n);
  std::vector<Scored> sc(lambda);
  // Ranking keys hold the bit patterns of f and phi.
  std::vector<std::uint64_t> key_f(lambda), key_phi(lambda), key_index(lambda);
  std::vector<double> residuals(std::max(m, 1));
  std::span<double> rview(residuals.data(), m);

  for (int k = 0; k < lambda; ++k) {
    for (int j = 0; j < n; ++j) {
      xs[k * n + j] = problem.lower[j] + unit(rng) * (problem.upper[j] - problem.lower[j]);
      sig[k * n + j] = sigma_max[j];
    }
  }
  if (!problem.seed_point.empty()) std::copy(problem.seed_point.begin(), problem.seed_point.end(), xs.begin());

  OptimizationResult res;
  res.seed = config.seed;
  Scored best{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
              std::numeric_limits<double>::infinity()};
  std::vector<double> best_x(n);
  std::vector<double> best_r(m, std::numeric_limits<double>::infinity());
  // Best point within the problem tolerance, kept apart from the annealed ranking.
  double strict_f = std::numeric_limits<double>::infinity();
  std::vector<double> strict_x;
  const int anneal_generations = static_cast<int>(
      std::clamp(config.anneal_fraction, 0.0, 1.0) * double(config.max_evaluations / lambda));
  const bool annealing = m > 0 && anneal_generations > 0 &&
                         config.initial_tolerance > problem.constraint_tolerance &&
                         problem.constraint_tolerance > 0.0;
  Scored stall_ref = best;
  int generation = 0, last_progress = 0;

  auto in_bounds = [&](int j, double v) { return v >= problem.lower[j] && v <= problem.upper[j]; };

  while (true) {
    if (res.evaluations_used > 0 && res.evaluations_used + lambda > config.max_evaluations) {
      res.stop_reason = StopReason::kBudget;
      break;
    }
    // Working tolerance shrinks geometrically to the problem tolerance.
    const double final_tol = problem.constraint_tolerance;
    double tol = final_tol;
    if (annealing && generation < anneal_generations) {
      const double t = 1.0 - double(generation) / anneal_generations;
      tol = final_tol * std::pow(config.initial_tolerance / final_tol, t);
    }
    best.phi = penalty(best_r, tol);
    for (int k = 0; k < lambda; ++k) {
      sc[k] = score(problem, std::span<const double>(&xs[k * n], n), rview, tol);
      if (better(sc[k], best)) {
        best = sc[k];
        std::copy_n(&xs[k * n], n, best_x.begin());
        std::copy(rview.begin(), rview.end(), best_r.begin());
      }
      if (sc[k].max_residual <= problem.constraint_tolerance && sc[k].f < strict_f) {
        strict_f = sc[k].f;
        strict_x.assign(&xs[k * n], &xs[k * n] + n);
      }
    }
    res.evaluations_used += lambda;
    ++generation;

    // Progress means a new feasible point, or an objective/penalty gain above tolerance.
    const bool progressed =
        (best.phi == 0.0 && stall_ref.phi != 0.0) ||
        (best.phi == 0.0 && best.f < stall_ref.f - config.stall_tolerance) ||
        (best.phi != 0.0 && best.phi < stall_ref.phi - config.stall_tolerance * config.stall_tolerance);
    if (annealing && generation <= anneal_generations) {
      stall_ref = best;
      last_progress = generation;
    } else if (progressed) {
      stall_ref = best;
      last_progress = generation;
    } else if (config.stall_generations > 0 && generation - last_progress >= config.stall_generations) {
      res.stop_reason = StopReason::kStalled;
      break;
    }

    // Stochastic ranking. Every comparison takes a 16-bit slice of a 64-bit
    // draw; the slice decides only when the two orders disagree. Keys are
    // swapped through bit masks to keep the sweep free of branches.
    const auto rank_threshold = static_cast<std::uint64_t>(
        std::lround(std::clamp(config.ranking_probability, 0.0, 1.0) * 65536.0));
    for (int k = 0; k < lambda; ++k) {
      key_f[k] = std::bit_cast<std::uint64_t>(sc[k].f);
      key_phi[k] = std::bit_cast<std::uint64_t>(sc[k].phi);
      key_index[k] = static_cast<std::uint64_t>(k);
    }
    for (int sweep = 0; sweep < lambda; ++sweep) {
      std::uint64_t swapped = 0;
      std::uint64_t bits = 0;
      for (int j = 0; j + 1 < lambda; ++j) {
        if ((j & 3) == 0) bits = rng();
        const std::uint64_t by_coin = (bits & 0xffffu) < rank_threshold;
        bits >>= 16;
        const std::uint64_t af = key_f[j], bf = key_f[j + 1];
        const std::uint64_t ap = key_phi[j], bp = key_phi[j + 1];
        const std::uint64_t ai = key_index[j], bi = key_index[j + 1];
        const std::uint64_t by_f = std::bit_cast<double>(bf) < std::bit_cast<double>(af);
        const std::uint64_t by_phi = std::bit_cast<double>(bp) < std::bit_cast<double>(ap);
        const std::uint64_t both_feasible = (ap == 0) & (bp == 0);
        const std::uint64_t swap = by_f ^ ((by_f ^ by_phi) & (both_feasible ^ 1) & (by_coin ^ 1));
        const std::uint64_t mask = 0 - swap;
        const std::uint64_t xf = (af ^ bf) & mask, xp = (ap ^ bp) & mask, xi = (ai ^ bi) & mask;
        key_f[j] = af ^ xf;
        key_f[j + 1] = bf ^ xf;
        key_phi[j] = ap ^ xp;
        key_phi[j + 1] = bp ^ xp;
        key_index[j] = ai ^ xi;
        key_index[j + 1] = bi ^ xi;
        swapped |= swap;
      }
      if (!swapped) break;
    }

    for (int i = 0; i < mu; ++i) {
      std::copy_n(&xs[key_index[i] * n], n, &parents_x[i * n]);
      std::copy_n(&sig[key_index[i] * n], n, &parents_s[i * n]);
    }

    double largest_ratio = 0.0;
    for (int i = 0; i < mu; ++i)
      for (int j = 0; j < n; ++j) largest_ratio = std::max(largest_ratio, parents_s[i * n + j] / sigma_max[j]);
    if (largest_ratio < config.sigma_floor) {
      res.stop_reason = StopReason::kSigmaCollapse;
      break;
    }

    for (int k = 0; k < lambda; ++k) {
      const int pk = k % mu;
      const double* px = &parents_x[pk * n];
      const double* ps = &parents_s[pk * n];
      double* cx = &xs[k * n];
      double* cs = &sig[k * n];
      bool done = false;
      if (k < mu - 1) {
        // Differential variation towards the best parent.
        bool ok = true;
        for (int j = 0; j < n; ++j) {
          double v = px[j] + config.differential_gamma * (parents_x[j] - parents_x[(k + 1) * n + j]);
          if (is_periodic(problem, j)) {
            v = wrap(v, problem.lower[j], problem.upper[j]);
          } else if (!in_bounds(j, v)) {
            ok = false;
            break;
          }
          cx[j] = v;
        }
        if (ok) {
          std::copy_n(ps, n, cs);
          done = true;
        }
      }
      if (!done) {
        const double global = tau_prime * normal(rng);
        for (int j = 0; j < n; ++j) {
          const double s = std::min(ps[j] * std::exp(global + tau * normal(rng)), sigma_max[j]);
          double v = px[j];
          if (is_periodic(problem, j)) {
            v = wrap(px[j] + s * normal(rng), problem.lower[j], problem.upper[j]);
          } else {
            for (int attempt = 0; attempt < 10; ++attempt) {
              const double trial = px[j] + s * normal(rng);
              if (in_bounds(j, trial)) {
                v = trial;
                break;
              }
            }
          }
          cx[j] = v;
          cs[j] = ps[j] + config.smoothing * (s - ps[j]);
        }
      }
    }
  }

  // Candidates: the ranked best and the best strictly feasible point, each
  // projected onto the constraints when restoration is on.
  std::vector<std::vector<double>> candidates{best_x};
  if (!strict_x.empty() && strict_x != best_x) candidates.push_back(strict_x);
  const double tol = problem.constraint_tolerance;
  bool first = true;
  for (auto& x : candidates) {
    const Scored before = score(problem, x, rview, tol);
    Scored s = before;
    res.evaluations_used += 1;
    if (config.restore_feasibility && m > 0) {
      std::vector<double> y = x;
      restore_feasibility(problem, y);
      const Scored r = score(problem, y, rview, tol);
      res.evaluations_used += 1;
      if (r.max_residual <= std::max(before.max_residual, tol)) {
        s = r;
        x = y;
      }
    }
    const bool ok = s.max_residual <= tol, best_ok = best.max_residual <= tol;
    if (first || (ok && !best_ok) || (ok == best_ok && (ok ? s.f < best.f : s.max_residual < best.max_residual))) {
      best = s;
      best_x = x;
    }
    first = false;
  }

  res.best_params = best_x;
  res.best_value = best.f;
  res.max_constraint_violation = best.max_residual;
  res.converged = best.max_residual <= problem.constraint_tolerance;
  return res;
}

OptimizationResult isres_minimize(const OptimizationProblem& problem, const OptimizerConfig& config) {
  problem.validate();
  require(config.restarts >= 1, Errc::kInvalidArgument, "restarts must be at least 1");
  require(config.max_evaluations >= 1, Errc::kInvalidArgument, "max_evaluations must be positive");
  const int runs = config.restarts;
  std::vector<OptimizationResult> results(runs);
  std::vector<std::exception_ptr> errors(runs);

  auto run = [&](int i) {
    try {
      OptimizerConfig c = config;
      c.seed = config.seed + static_cast<std::uint64_t>(i);
      results[i] = isres_single(problem, c);
      results[i].run_index = i;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const int workers = std::clamp(config.threads, 1, runs);
  if (workers == 1) {
    for (int i = 0; i < runs; ++i) run(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i = next++; i < runs; i = next++) run(i);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::int64_t total = 0;
  int pick = 0;
  for (int i = 0; i < runs; ++i) {
    total += results[i].evaluations_used;
    const auto& a = results[i];
    const auto& b = results[pick];
    if (a.converged != b.converged) {
      if (a.converged) pick = i;
    } else if (a.converged ? a.best_value < b.best_value
                           : a.max_constraint_violation < b.max_constraint_violation) {
      pick = i;
    }
  }
  OptimizationResult out = results[pick];
  out.evaluations_used = total;
  return out;
}

namespace {

// Solves the small symmetric positive system a y = b in place.
bool solve_small(std::vector<double>& a, std::vector<double>& b, int m) {
  for (int c = 0; c < m; ++c) {
    int piv = c;
    for (int r = c + 1; r < m; ++r)
      if (std::abs(a[r * m + c]) > std::abs(a[piv * m + c])) piv = r;
    if (a[piv * m + c] == 0.0) return false;
    if (piv != c) {
      for (int k = 0; k < m; ++k) std::swap(a[c * m + k], a[piv * m + k]);
      std::swap(b[c], b[piv]);
    }
    for (int r = c + 1; r < m; ++r) {
      const double f = a[r * m + c] / a[c * m + c];
      for (int k = c; k < m; ++k) a[r * m + k] -= f * a[c * m + k];
      b[r] -= f * b[c];
    }
  }
  for (int c = m - 1; c >= 0; --c) {
    for (int k = c + 1; k < m; ++k) b[c] -= a[c * m + k] * b[k];
    b[c] /= a[c * m + c];
  }
  return true;
}

double max_abs(std::span<const double> v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

}  // namespace

bool restore_feasibility(const OptimizationProblem& problem, std::vector<double>& x, int max_iterations) {
  problem.validate();
  const int n = problem.num_params;
  const int m = problem.num_constraints;
  if (m == 0) return true;
  require(x.size() == std::size_t(n), Errc::kDimensionMismatch, "point has the wrong length");

  std::vector<double> r(m), rt(m), jac(std::size_t(m) * n), trial(n), step(n);
  std::vector<double> rp(m), rm(m);
  double f = 0.0;
  problem.evaluate(x, f, r);
  double norm = max_abs(r);
  constexpr double kTarget = 1e-14;

  auto project = [&](int j, double v) {
    if (is_periodic(problem, j)) return wrap(v, problem.lower[j], problem.upper[j]);
    return std::clamp(v, problem.lower[j], problem.upper[j]);
  };

  for (int it = 0; it < max_iterations && norm > kTarget && std::isfinite(norm); ++it) {
    // Central differences; one-sided at a bound.
    for (int j = 0; j < n; ++j) {
      const double h = 1e-7 * std::max(1.0, problem.upper[j] - problem.lower[j]);
      double lo = x[j] - h, hi = x[j] + h;
      if (!is_periodic(problem, j)) {
        lo = std::max(lo, problem.lower[j]);
        hi = std::min(hi, problem.upper[j]);
      }
      trial = x;
      trial[j] = hi;
      problem.evaluate(trial, f, rp);
      trial[j] = lo;
      problem.evaluate(trial, f, rm);
      for (int i = 0; i < m; ++i) jac[i * n + j] = (rp[i] - rm[i]) / (hi - lo);
    }

    std::vector<bool> frozen(n, false);
    bool moved = false;
    for (int pass = 0; pass < 4 && !moved; ++pass) {
      std::vector<double> a(std::size_t(m) * m, 0.0), y(r);
      double diag = 0.0;
      for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
          double s = 0.0;
          for (int j = 0; j < n; ++j)
            if (!frozen[j]) s += jac[i * n + j] * jac[k * n + j];
          a[i * m + k] = s;
          if (i == k) diag = std::max(diag, s);
        }
      if (diag == 0.0) break;
      for (int i = 0; i < m; ++i) a[i * m + i] += 1e-14 * diag;
      if (!solve_small(a, y, m)) break;
      bool newly_frozen = false;
      for (int j = 0; j < n; ++j) {
        step[j] = 0.0;
        if (frozen[j]) continue;
        for (int i = 0; i < m; ++i) step[j] -= jac[i * n + j] * y[i];
        if (!is_periodic(problem, j)) {
          const double v = x[j] + step[j];
          if ((v < problem.lower[j] && x[j] <= problem.lower[j]) ||
              (v > problem.upper[j] && x[j] >= problem.upper[j])) {
            frozen[j] = true;
            newly_frozen = true;
          }
        }
      }
      if (newly_frozen && pass < 3) continue;

      // Backtracking on the residual norm.
      double t = 1.0;
      for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
        for (int j = 0; j < n; ++j) trial[j] = frozen[j] ? x[j] : project(j, x[j] + t * step[j]);
        problem.evaluate(trial, f, rt);
        const double tn = max_abs(rt);
        if (tn < norm) {
          x = trial;
          r = rt;
          norm = tn;
          moved = true;
          break;
        }
      }
      break;
    }
    if (!moved) break;
  }
  return norm <= problem.constraint_tolerance;
}

}  // namespace ccmw
