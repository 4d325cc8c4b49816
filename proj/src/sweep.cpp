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

#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "analytic.hpp"
#include "error.hpp"
#include "passivity.hpp"

namespace ccmw {

using nlohmann::json;

std::string_view to_string(SweepMode m) {
  switch (m) {
    case SweepMode::kAnalytic: return "analytic";
    case SweepMode::kNumericPure: return "numeric-pure";
    case SweepMode::kNumericMixed: return "numeric-mixed";
  }
  return "unknown";
}

SweepMode parse_sweep_mode(std::string_view s) {
  if (s == "analytic") return SweepMode::kAnalytic;
  if (s == "numeric-pure") return SweepMode::kNumericPure;
  if (s == "numeric-mixed") return SweepMode::kNumericMixed;
  fail(Errc::kParse,
       "unknown mode '" + std::string(s) + "' (expected analytic, numeric-pure or numeric-mixed)");
}

OptimizerConfig OptimizerOverrides::apply(OptimizerConfig c) const {
  if (population) c.population = *population;
  if (max_evaluations) c.max_evaluations = *max_evaluations;
  if (seed) c.seed = *seed;
  if (restarts) c.restarts = *restarts;
  if (initial_tolerance) c.initial_tolerance = *initial_tolerance;
  if (anneal_fraction) c.anneal_fraction = *anneal_fraction;
  if (pure_warm_start) c.pure_warm_start = *pure_warm_start;
  return c;
}

void SweepConfig::validate() const {
  require(!dimensions.empty(), Errc::kInvalidArgument, "dimensions must not be empty");
  for (int d : dimensions) {
    if (d < kMinBatteryDim || d > kMaxBatteryDim)
      fail(Errc::kOutOfRange, "dimension " + std::to_string(d) + " is outside [2, 8]");
    parse_hamiltonian(hamiltonian, d);
  }
  require(grid.count >= 2, Errc::kInvalidArgument, "coherence_grid.count must be at least 2");
  if (grid.max) {
    require(!grid.scaled, Errc::kInvalidArgument, "coherence_grid.max applies to unscaled grids");
    const int dmin = *std::min_element(dimensions.begin(), dimensions.end());
    require(std::isfinite(*grid.max) && *grid.max >= 0.0 && *grid.max <= dmin - 1.0,
            Errc::kOutOfRange, "coherence_grid.max must lie in [0, d - 1] for every dimension");
  }
  require(!modes.empty(), Errc::kInvalidArgument, "modes must not be empty");
  std::set<SweepMode> seen(modes.begin(), modes.end());
  require(seen.size() == modes.size(), Errc::kInvalidArgument, "modes must not repeat");
  if (optimizer.population) require(*optimizer.population >= 2, Errc::kInvalidArgument,
                                    "optimizer.population must be at least 2");
  if (optimizer.max_evaluations) require(*optimizer.max_evaluations >= 1, Errc::kInvalidArgument,
                                         "optimizer.max_evaluations must be positive");
  if (optimizer.restarts) require(*optimizer.restarts >= 1, Errc::kInvalidArgument,
                                  "optimizer.restarts must be at least 1");
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<std::string_view> keys,
                    std::string_view where) {
  for (const auto& [k, v] : obj.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      fail(Errc::kParse, "unknown field '" + k + "' in " + std::string(where));
  }
}

template <typename T>
T get_field(const json& obj, const char* key, std::string_view where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(Errc::kParse, std::string(where) + "." + key + " is missing or has the wrong type");
  }
}

std::string hamiltonian_spec(const json& h) {
  if (h.is_string()) return h.get<std::string>();
  if (!h.is_object()) fail(Errc::kParse, "hamiltonian must be a string or an object");
  reject_unknown(h, {"kind", "params"}, "hamiltonian");
  std::string spec = get_field<std::string>(h, "kind", "hamiltonian");
  if (h.contains("params")) {
    const auto params = get_field<std::vector<double>>(h, "params", "hamiltonian");
    for (std::size_t i = 0; i < params.size(); ++i)
      spec += (i == 0 ? ":" : ",") + format_double(params[i]);
  }
  return spec;
}

}  // namespace

SweepConfig parse_sweep_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(Errc::kParse, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(Errc::kParse, "config must be a JSON object");
  reject_unknown(doc,
                 {"dimensions", "hamiltonian", "coherence_grid", "optimizer", "modes",
                  "output_path", "timing"},
                 "config");
  SweepConfig c;
  c.dimensions = get_field<std::vector<int>>(doc, "dimensions", "config");
  if (!doc.contains("hamiltonian")) fail(Errc::kParse, "config.hamiltonian is missing");
  c.hamiltonian = hamiltonian_spec(doc["hamiltonian"]);
  if (doc.contains("coherence_grid")) {
    const json& g = doc["coherence_grid"];
    if (!g.is_object()) fail(Errc::kParse, "coherence_grid must be an object");
    reject_unknown(g, {"count", "scaled", "max"}, "coherence_grid");
    if (g.contains("count")) c.grid.count = get_field<int>(g, "count", "coherence_grid");
    if (g.contains("scaled")) c.grid.scaled = get_field<bool>(g, "scaled", "coherence_grid");
    if (g.contains("max")) c.grid.max = get_field<double>(g, "max", "coherence_grid");
  }
  if (doc.contains("optimizer")) {
    const json& o = doc["optimizer"];
    if (!o.is_object()) fail(Errc::kParse, "optimizer must be an object");
    reject_unknown(o,
                   {"population", "max_evaluations", "seed", "restarts", "initial_tolerance",
                    "anneal_fraction", "pure_warm_start"},
                   "optimizer");
    auto& ov = c.optimizer;
    if (o.contains("population")) ov.population = get_field<int>(o, "population", "optimizer");
    if (o.contains("max_evaluations"))
      ov.max_evaluations = get_field<std::int64_t>(o, "max_evaluations", "optimizer");
    if (o.contains("seed")) ov.seed = get_field<std::uint64_t>(o, "seed", "optimizer");
    if (o.contains("restarts")) ov.restarts = get_field<int>(o, "restarts", "optimizer");
    if (o.contains("initial_tolerance"))
      ov.initial_tolerance = get_field<double>(o, "initial_tolerance", "optimizer");
    if (o.contains("anneal_fraction"))
      ov.anneal_fraction = get_field<double>(o, "anneal_fraction", "optimizer");
    if (o.contains("pure_warm_start"))
      ov.pure_warm_start = get_field<bool>(o, "pure_warm_start", "optimizer");
  }
  if (doc.contains("modes")) {
    for (const auto& m : get_field<std::vector<std::string>>(doc, "modes", "config"))
      c.modes.push_back(parse_sweep_mode(m));
  } else {
    c.modes = {SweepMode::kNumericPure};
  }
  if (doc.contains("output_path"))
    c.output_path = get_field<std::string>(doc, "output_path", "config");
  if (doc.contains("timing")) c.timing = get_field<bool>(doc, "timing", "config");
  c.validate();
  return c;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::kIo, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sweep_config(ss.str());
}

std::vector<double> coherence_points(int dim, const CoherenceGrid& grid, int min_dim) {
  require(grid.count >= 2, Errc::kInvalidArgument, "grid count must be at least 2");
  const double top = grid.scaled ? dim - 1.0 : grid.max.value_or(min_dim - 1.0);
  std::vector<double> c(grid.count);
  for (int i = 0; i < grid.count; ++i) c[i] = top * (double(i) / (grid.count - 1));
  return c;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config, int threads) {
  config.validate();
  struct Task {
    int dim;
    double coherence;
    SweepMode mode;
  };
  std::vector<Task> tasks;
  const int dmin = *std::min_element(config.dimensions.begin(), config.dimensions.end());
  for (int d : config.dimensions) {
    const BatteryHamiltonian h = parse_hamiltonian(config.hamiltonian, d);
    const bool analytic = has_analytic_ccmw(h);
    for (SweepMode m : config.modes)
      if (m == SweepMode::kAnalytic && !analytic)
        log_warning("no closed form for d=" + std::to_string(d) + " " +
                    std::string(to_string(h.structure())) + "; analytic rows skipped");
    for (double c : coherence_points(d, config.grid, dmin))
      for (SweepMode m : config.modes)
        if (m != SweepMode::kAnalytic || analytic) tasks.push_back({d, c, m});
  }

  std::vector<SweepRecord> rows(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  auto run = [&](std::size_t i) {
    try {
      const Task& t = tasks[i];
      const auto start = std::chrono::steady_clock::now();
      const BatteryHamiltonian h = parse_hamiltonian(config.hamiltonian, t.dim);
      SweepRecord r;
      r.dimension = t.dim;
      r.hamiltonian_id = h.id();
      r.coherence = t.coherence;
      r.scaled_coherence = t.coherence / (t.dim - 1.0);
      r.mode = t.mode;
      if (t.mode == SweepMode::kAnalytic) {
        r.value = *analytic_ccmw(h, t.coherence);
      } else {
        OptimizerConfig oc = config.optimizer.apply(default_optimizer_config(t.dim));
        oc.threads = 1;
        const CcmwMode cm = t.mode == SweepMode::kNumericPure ? CcmwMode::kPure : CcmwMode::kMixed;
        const CcmwEstimate e = ccmw_estimate(cm, h, t.dim, t.coherence, oc);
        r.value = e.value;
        r.constraint_violation = e.constraint_violation;
        r.seed = oc.seed;
        r.feasible = e.feasible;
      }
      if (config.timing)
        r.wall_time_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      rows[i] = std::move(r);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const int workers = std::clamp(threads, 1, std::max<int>(1, static_cast<int>(tasks.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) run(i);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) fail(Errc::kParse, "unterminated quoted CSV field");
  return fields;
}

namespace {

constexpr std::string_view kSweepColumns =
    "dimension,hamiltonian_id,coherence,scaled_coherence,mode,value,constraint_violation,seed,"
    "wall_time_ms,feasible";

template <typename T>
T parse_number(const std::string& s, std::string_view column) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(Errc::kParse, "bad " + std::string(column) + " value '" + s + "'");
  return v;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& rows,
                     std::string_view generated_at) {
  out << kCsvMagic << '\n' << "# generated " << generated_at << '\n' << kSweepColumns << '\n';
  for (const auto& r : rows) {
    out << r.dimension << ',' << csv_field(r.hamiltonian_id) << ',' << format_double(r.coherence)
        << ',' << format_double(r.scaled_coherence) << ',' << to_string(r.mode) << ','
        << format_double(r.value) << ',' << format_double(r.constraint_violation) << ','
        << r.seed << ',' << format_double(r.wall_time_ms) << ','
        << (r.feasible ? "true" : "false") << '\n';
  }
}

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvMagic)
    fail(Errc::kParse, "missing '" + std::string(kCsvMagic) + "' header");
  bool columns_seen = false;
  std::vector<SweepRecord> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!columns_seen) {
      if (line != kSweepColumns) fail(Errc::kParse, "unexpected CSV column header");
      columns_seen = true;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 10) fail(Errc::kParse, "CSV row has " + std::to_string(f.size()) + " fields");
    SweepRecord r;
    r.dimension = parse_number<int>(f[0], "dimension");
    r.hamiltonian_id = f[1];
    r.coherence = parse_number<double>(f[2], "coherence");
    r.scaled_coherence = parse_number<double>(f[3], "scaled_coherence");
    r.mode = parse_sweep_mode(f[4]);
    r.value = parse_number<double>(f[5], "value");
    r.constraint_violation = parse_number<double>(f[6], "constraint_violation");
    r.seed = parse_number<std::uint64_t>(f[7], "seed");
    r.wall_time_ms = parse_number<double>(f[8], "wall_time_ms");
    if (f[9] != "true" && f[9] != "false") fail(Errc::kParse, "bad feasible value '" + f[9] + "'");
    r.feasible = f[9] == "true";
    rows.push_back(std::move(r));
  }
  if (!columns_seen) fail(Errc::kParse, "CSV column header missing");
  return rows;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

VerifyReport run_verify(const BatteryHamiltonian& h, int points, double tolerance,
                        const OptimizerConfig& config, CcmwMode mode) {
  require(points >= 2, Errc::kInvalidArgument, "need at least 2 grid points");
  const std::vector<double> grid = coherence_points(h.dim(), CoherenceGrid{points, true, {}}, h.dim());
  VerifyReport rep;
  rep.rows = verify_against_analytic(h, h.dim(), grid, config, mode);
  for (const auto& r : rep.rows) {
    rep.max_abs_gap = std::max(rep.max_abs_gap, std::abs(r.gap));
    rep.all_feasible = rep.all_feasible && r.feasible;
  }
  rep.passed = rep.all_feasible && rep.max_abs_gap <= tolerance;
  return rep;
}

std::vector<EllipseRow> ellipse_rows(const std::vector<double>& coherences, int points) {
  require(points >= 1, Errc::kInvalidArgument, "need at least one ellipse point");
  std::vector<EllipseRow> rows;
  for (double c : coherences) {
    if (!std::isfinite(c) || c < 0.0 || c > max_coherence(3)) {
      std::ostringstream os;
      os << "ellipse coherence " << c << " is outside [0, 2]";
      fail(Errc::kOutOfRange, os.str());
    }
    const auto pts = qutrit_ellipse_points(c, points);
    for (int i = 0; i < points; ++i) {
      const double p[2] = {pts[i][0], pts[i][1]};
      rows.push_back({c, i, p[0], p[1], isocoherent_ellipse_residual(3, c, p)});
    }
  }
  return rows;
}

void write_ellipse_csv(std::ostream& out, const std::vector<EllipseRow>& rows) {
  out << kEllipseMagic << '\n' << "coherence,index,x1,x2,residual\n";
  for (const auto& r : rows)
    out << format_double(r.coherence) << ',' << r.index << ',' << format_double(r.x1) << ','
        << format_double(r.x2) << ',' << format_double(r.residual) << '\n';
}

DensityMatrix parse_state_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(Errc::kParse, std::string("state is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(Errc::kParse, "state must be a JSON object");
  reject_unknown(doc, {"dim", "real", "imag"}, "state");
  const int d = get_field<int>(doc, "dim", "state");
  if (d < 1 || d > kMaxDim) fail(Errc::kOutOfRange, "state.dim must lie in [1, 8]");
  const auto re = get_field<std::vector<double>>(doc, "real", "state");
  std::vector<double> im(re.size(), 0.0);
  if (doc.contains("imag")) im = get_field<std::vector<double>>(doc, "imag", "state");
  const std::size_t n = std::size_t(d) * d;
  if (re.size() != n || im.size() != n)
    fail(Errc::kDimensionMismatch, "state.real and state.imag need dim*dim entries");
  ComplexMatrix m(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(re[i * d + j], im[i * d + j]);
  return DensityMatrix::from_matrix(m);
}

PassiveReport passive_check(const DensityMatrix& rho, const BatteryHamiltonian& h) {
  PassiveReport rep;
  rep.passive = is_isocoherent_passive(rho, h);
  rep.gain = isocoherent_gain(rho, h);
  if (h.dim() <= kMaxBruteForceDim) {
    const BruteForceReport bf = passivity_bruteforce(rho, h);
    double scale = 1.0;
    for (int i = 0; i < h.dim(); ++i) scale = std::max(scale, std::abs(h.matrix()(i, i).real()));
    rep.cross_checked = true;
    rep.brute_force_gain = bf.best_gain;
    rep.agrees = bf.is_passive == rep.passive && std::abs(bf.best_gain - rep.gain) <= 1e-12 * scale;
  }
  return rep;
}

}  // namespace ccmw
