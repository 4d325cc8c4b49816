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

#include "ccmw/ccmw.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "analytic.hpp"
#include "ccmw_optimizer.hpp"
#include "error.hpp"
#include "hamiltonians.hpp"
#include "passivity.hpp"
#include "quantum_state.hpp"
#include "sweep.hpp"

struct ccmw_hamiltonian {
  ccmw::BatteryHamiltonian h;
};

struct ccmw_estimate {
  ccmw::CcmwEstimate e;
};

struct ccmw_state {
  ccmw::DensityMatrix rho;
};

struct ccmw_verify_report {
  ccmw::VerifyReport r;
};

namespace {

thread_local std::string g_last_error;

ccmw_status to_status(ccmw::Errc c) {
  switch (c) {
    case ccmw::Errc::kInvalidArgument: return CCMW_ERR_INVALID_ARGUMENT;
    case ccmw::Errc::kOutOfRange: return CCMW_ERR_OUT_OF_RANGE;
    case ccmw::Errc::kDimensionMismatch: return CCMW_ERR_DIMENSION_MISMATCH;
    case ccmw::Errc::kNotHermitian: return CCMW_ERR_NOT_HERMITIAN;
    case ccmw::Errc::kNotUnitary: return CCMW_ERR_NOT_UNITARY;
    case ccmw::Errc::kInvalidState: return CCMW_ERR_INVALID_STATE;
    case ccmw::Errc::kUnsupported: return CCMW_ERR_UNSUPPORTED;
    case ccmw::Errc::kParse: return CCMW_ERR_PARSE;
    case ccmw::Errc::kIo: return CCMW_ERR_IO;
    case ccmw::Errc::kInternal: return CCMW_ERR_INTERNAL;
  }
  return CCMW_ERR_INTERNAL;
}

ccmw_status set_error(ccmw_status s, const char* what) {
  g_last_error = what;
  return s;
}

// Runs f, translating exceptions into status codes.
template <typename F>
ccmw_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return CCMW_OK;
  } catch (const ccmw::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(CCMW_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return set_error(CCMW_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(CCMW_ERR_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* name) {
  if (!p) ccmw::fail(ccmw::Errc::kInvalidArgument, std::string(name) + " must not be NULL");
}

void copy_matrix(const ccmw::ComplexMatrix& m, double* re, double* im) {
  need(re, "re");
  need(im, "im");
  const int d = m.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      re[i * d + j] = m(i, j).real();
      im[i * d + j] = m(i, j).imag();
    }
}

ccmw::OptimizerConfig to_config(const ccmw_optimizer_config& c) {
  ccmw::OptimizerConfig o;
  o.population = c.population;
  o.max_evaluations = c.max_evaluations;
  o.seed = c.seed;
  o.restarts = c.restarts;
  o.threads = c.threads;
  o.initial_tolerance = c.initial_tolerance;
  o.anneal_fraction = c.anneal_fraction;
  o.pure_warm_start = c.pure_warm_start != 0;
  return o;
}

ccmw::OptimizerConfig resolve_config(const ccmw_optimizer_config* c, int dim) {
  return c ? to_config(*c) : ccmw::default_optimizer_config(dim);
}

ccmw::CcmwMode to_mode(ccmw_mode m) {
  if (m == CCMW_MODE_PURE) return ccmw::CcmwMode::kPure;
  if (m == CCMW_MODE_MIXED) return ccmw::CcmwMode::kMixed;
  ccmw::fail(ccmw::Errc::kInvalidArgument, "unknown mode");
}

// Installed sink forwarding to the user callback.
struct LogTarget {
  ccmw_log_fn fn = nullptr;
  void* user = nullptr;
};
LogTarget g_log;

void forward_log(int level, const char* message, void*) {
  if (g_log.fn) g_log.fn(level, message, g_log.user);
}

}  // namespace

extern "C" {

const char* ccmw_version(void) { return "1.0.0"; }

const char* ccmw_status_string(ccmw_status status) {
  switch (status) {
    case CCMW_OK: return "ok";
    case CCMW_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CCMW_ERR_OUT_OF_RANGE: return "out of range";
    case CCMW_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case CCMW_ERR_NOT_HERMITIAN: return "not Hermitian";
    case CCMW_ERR_NOT_UNITARY: return "not unitary";
    case CCMW_ERR_INVALID_STATE: return "invalid state";
    case CCMW_ERR_UNSUPPORTED: return "unsupported";
    case CCMW_ERR_PARSE: return "parse error";
    case CCMW_ERR_IO: return "I/O error";
    case CCMW_ERR_OUT_OF_MEMORY: return "out of memory";
    case CCMW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ccmw_last_error(void) { return g_last_error.c_str(); }

void ccmw_set_log_callback(ccmw_log_fn fn, void* user) {
  if (fn) {
    ccmw::set_log_sink(nullptr, nullptr);
    g_log = {fn, user};
    ccmw::set_log_sink(forward_log, nullptr);
  } else {
    ccmw::set_log_sink(nullptr, nullptr);
    g_log = {};
  }
}

ccmw_status ccmw_hamiltonian_parse(const char* spec, int dim, ccmw_hamiltonian** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = new ccmw_hamiltonian{ccmw::parse_hamiltonian(spec, dim)};
  });
}

void ccmw_hamiltonian_free(ccmw_hamiltonian* h) { delete h; }

int ccmw_hamiltonian_dim(const ccmw_hamiltonian* h) { return h ? h->h.dim() : 0; }

ccmw_status ccmw_hamiltonian_id(const ccmw_hamiltonian* h, char* buf, size_t len, size_t* needed) {
  return guarded([&] {
    need(h, "h");
    const std::string id = h->h.id();
    if (needed) *needed = id.size() + 1;
    if (buf && len > 0) {
      const std::size_t n = std::min(len - 1, id.size());
      std::memcpy(buf, id.data(), n);
      buf[n] = '\0';
    }
  });
}

ccmw_status ccmw_hamiltonian_matrix(const ccmw_hamiltonian* h, double* re, double* im) {
  return guarded([&] {
    need(h, "h");
    copy_matrix(h->h.matrix(), re, im);
  });
}

ccmw_status ccmw_analytic(const ccmw_hamiltonian* h, double coherence, double* out) {
  return guarded([&] {
    need(h, "h");
    need(out, "out");
    const auto v = ccmw::analytic_ccmw(h->h, coherence);
    if (!v)
      ccmw::fail(ccmw::Errc::kUnsupported, "no closed form for d=" + std::to_string(h->h.dim()) +
                                               " " + std::string(ccmw::to_string(h->h.structure())));
    *out = *v;
  });
}

ccmw_status ccmw_xi2(double coherence, double h1, double h3, double h2, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = ccmw::xi2(coherence, h1, h3, h2);
  });
}

ccmw_status ccmw_xi3_diagonal(double coherence, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = ccmw::xi3_diagonal(coherence);
  });
}

ccmw_status ccmw_xi3_offdiagonal(double coherence, double alpha, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = ccmw::xi3_offdiagonal(coherence, alpha);
  });
}

ccmw_status ccmw_optimizer_config_default(int dim, ccmw_optimizer_config* out) {
  return guarded([&] {
    need(out, "out");
    if (dim < ccmw::kMinBatteryDim || dim > ccmw::kMaxBatteryDim)
      ccmw::fail(ccmw::Errc::kOutOfRange, "dimension must lie in [2, 8]");
    const ccmw::OptimizerConfig c = ccmw::default_optimizer_config(dim);
    *out = {c.population,        c.max_evaluations, c.seed, c.restarts, c.threads,
            c.initial_tolerance, c.anneal_fraction, c.pure_warm_start ? 1 : 0};
  });
}

ccmw_status ccmw_estimate_run(const ccmw_hamiltonian* h, ccmw_mode mode, double coherence,
                              const ccmw_optimizer_config* config, ccmw_estimate** out) {
  return guarded([&] {
    need(h, "h");
    need(out, "out");
    const int d = h->h.dim();
    *out = new ccmw_estimate{
        ccmw::ccmw_estimate(to_mode(mode), h->h, d, coherence, resolve_config(config, d))};
  });
}

void ccmw_estimate_free(ccmw_estimate* e) { delete e; }

double ccmw_estimate_value(const ccmw_estimate* e) { return e ? e->e.value : 0.0; }

double ccmw_estimate_constraint_violation(const ccmw_estimate* e) {
  return e ? e->e.constraint_violation : 0.0;
}

int ccmw_estimate_feasible(const ccmw_estimate* e) { return e && e->e.feasible ? 1 : 0; }

int64_t ccmw_estimate_evaluations(const ccmw_estimate* e) {
  return e ? e->e.optimizer.evaluations_used : 0;
}

uint64_t ccmw_estimate_seed(const ccmw_estimate* e) { return e ? e->e.optimizer.seed : 0; }

ccmw_status ccmw_estimate_witness(const ccmw_estimate* e, int which, double* re, double* im) {
  return guarded([&] {
    need(e, "e");
    if (which != 0 && which != 1)
      ccmw::fail(ccmw::Errc::kInvalidArgument, "which must be 0 (initial) or 1 (final)");
    copy_matrix((which == 0 ? e->e.witness_initial : e->e.witness_final).matrix(), re, im);
  });
}

ccmw_status ccmw_state_from_matrix(int dim, const double* re, const double* im, ccmw_state** out) {
  return guarded([&] {
    need(re, "re");
    need(out, "out");
    if (dim < 1 || dim > ccmw::kMaxDim) ccmw::fail(ccmw::Errc::kOutOfRange, "dim must lie in [1, 8]");
    ccmw::ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        m(i, j) = ccmw::Complex(re[i * dim + j], im ? im[i * dim + j] : 0.0);
    *out = new ccmw_state{ccmw::DensityMatrix::from_matrix(m)};
  });
}

ccmw_status ccmw_state_from_json(const char* json, ccmw_state** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new ccmw_state{ccmw::parse_state_json(json)};
  });
}

void ccmw_state_free(ccmw_state* s) { delete s; }

int ccmw_state_dim(const ccmw_state* s) { return s ? s->rho.dim() : 0; }

ccmw_status ccmw_state_l1_coherence(const ccmw_state* s, double* out) {
  return guarded([&] {
    need(s, "s");
    need(out, "out");
    *out = ccmw::off_diagonal_l1(s->rho.matrix());
  });
}

ccmw_status ccmw_state_energy(const ccmw_state* s, const ccmw_hamiltonian* h, double* out) {
  return guarded([&] {
    need(s, "s");
    need(h, "h");
    need(out, "out");
    *out = ccmw::energy(s->rho, h->h.op());
  });
}

ccmw_status ccmw_ergotropy(const ccmw_state* s, const ccmw_hamiltonian* h, double* out) {
  return guarded([&] {
    need(s, "s");
    need(h, "h");
    need(out, "out");
    *out = ccmw::ergotropy(s->rho, h->h.op());
  });
}

ccmw_status ccmw_passive_check(const ccmw_state* s, const ccmw_hamiltonian* h,
                               ccmw_passive_result* out) {
  return guarded([&] {
    need(s, "s");
    need(h, "h");
    need(out, "out");
    const ccmw::PassiveReport r = ccmw::passive_check(s->rho, h->h);
    *out = {r.passive ? 1 : 0, r.gain, r.cross_checked ? 1 : 0, r.agrees ? 1 : 0,
            r.brute_force_gain};
  });
}

ccmw_status ccmw_verify_run(const ccmw_hamiltonian* h, int points, double tolerance,
                            ccmw_mode mode, const ccmw_optimizer_config* config,
                            ccmw_verify_report** out) {
  return guarded([&] {
    need(h, "h");
    need(out, "out");
    const int d = h->h.dim();
    *out = new ccmw_verify_report{
        ccmw::run_verify(h->h, points, tolerance, resolve_config(config, d), to_mode(mode))};
  });
}

void ccmw_verify_report_free(ccmw_verify_report* r) { delete r; }

size_t ccmw_verify_report_size(const ccmw_verify_report* r) { return r ? r->r.rows.size() : 0; }

ccmw_status ccmw_verify_report_row(const ccmw_verify_report* r, size_t i, ccmw_verify_row* out) {
  return guarded([&] {
    need(r, "r");
    need(out, "out");
    if (i >= r->r.rows.size()) ccmw::fail(ccmw::Errc::kOutOfRange, "row index out of range");
    const auto& row = r->r.rows[i];
    *out = {row.coherence, row.analytic, row.numeric, row.gap, row.feasible ? 1 : 0};
  });
}

double ccmw_verify_report_max_gap(const ccmw_verify_report* r) {
  return r ? r->r.max_abs_gap : 0.0;
}

int ccmw_verify_report_passed(const ccmw_verify_report* r) { return r && r->r.passed ? 1 : 0; }

ccmw_status ccmw_sweep_run(const char* config_json, const ccmw_sweep_options* options,
                           size_t* rows, size_t* infeasible) {
  return guarded([&] {
    need(config_json, "config_json");
    ccmw::SweepConfig cfg = ccmw::parse_sweep_config(config_json);
    int threads = 1;
    if (options) {
      if (options->has_seed) cfg.optimizer.seed = options->seed;
      if (options->output_path) cfg.output_path = options->output_path;
      threads = options->threads;
    }
    if (cfg.output_path.empty())
      ccmw::fail(ccmw::Errc::kInvalidArgument, "no output path in the config or the options");
    std::ofstream file;
    if (cfg.output_path != "-") {
      // Open before the run so a bad path fails fast.
      file.open(cfg.output_path, std::ios::binary | std::ios::trunc);
      if (!file) ccmw::fail(ccmw::Errc::kIo, "cannot write '" + cfg.output_path + "'");
    }
    const auto records = ccmw::run_sweep(cfg, threads);
    std::ostream& out = cfg.output_path == "-" ? std::cout : file;
    ccmw::write_sweep_csv(out, records, ccmw::utc_timestamp());
    out.flush();
    if (!out) ccmw::fail(ccmw::Errc::kIo, "failed writing '" + cfg.output_path + "'");
    if (rows) *rows = records.size();
    if (infeasible) {
      *infeasible = 0;
      for (const auto& r : records) *infeasible += r.feasible ? 0 : 1;
    }
  });
}

ccmw_status ccmw_ellipse_write(const double* coherences, size_t count, const char* path) {
  return guarded([&] {
    need(coherences, "coherences");
    need(path, "path");
    if (count == 0) ccmw::fail(ccmw::Errc::kInvalidArgument, "need at least one coherence");
    const auto rows = ccmw::ellipse_rows(std::vector<double>(coherences, coherences + count));
    if (std::string_view(path) == "-") {
      ccmw::write_ellipse_csv(std::cout, rows);
      std::cout.flush();
      return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) ccmw::fail(ccmw::Errc::kIo, std::string("cannot write '") + path + "'");
    ccmw::write_ellipse_csv(file, rows);
    if (!file) ccmw::fail(ccmw::Errc::kIo, std::string("failed writing '") + path + "'");
  });
}

}  // extern "C"
