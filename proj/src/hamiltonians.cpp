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

#include "hamiltonians.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace ccmw {

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::kQubitGeneral: return "qubit-general";
    case Structure::kDiagonal: return "diagonal";
    case Structure::kOffDiagonal: return "off-diagonal";
    case Structure::kMixed: return "mixed";
    case Structure::kCustomDiagonal: return "custom-diagonal";
  }
  return "unknown";
}

namespace {

constexpr double kStructureTolerance = 1e-12;

void check_dim(int d) {
  if (d < kMinBatteryDim || d > kMaxBatteryDim)
    fail(Errc::kOutOfRange, "battery dimension must be in [2, 8], got " + std::to_string(d));
}

ComplexMatrix jz_matrix(int d) {
  ComplexMatrix m(d);
  for (int i = 0; i < d; ++i) m(i, i) = (2.0 / (d - 1)) * (i - (d - 1) / 2.0);
  return m;
}

// coefficient * |i><i-1| + h.c. for every nearest-neighbour pair
ComplexMatrix ladder(int d, Complex coefficient) {
  ComplexMatrix m(d);
  for (int i = 1; i < d; ++i) {
    m(i, i - 1) = coefficient;
    m(i - 1, i) = std::conj(coefficient);
  }
  return m;
}

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view tok = text.substr(0, comma);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      fail(Errc::kParse, "invalid number '" + std::string(tok) + "' in Hamiltonian spec");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void expect_count(std::string_view kind, const std::vector<double>& p, std::size_t n) {
  if (p.size() != n)
    fail(Errc::kParse, std::string(kind) + " expects " + std::to_string(n) + " parameters, got " +
                           std::to_string(p.size()));
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

BatteryHamiltonian::BatteryHamiltonian(HamiltonianKind kind, Structure structure,
                                       HermitianOperator op, std::map<std::string, double> params,
                                       std::vector<double> levels)
    : kind_(kind),
      structure_(structure),
      op_(std::move(op)),
      params_(std::move(params)),
      levels_(std::move(levels)) {
  const auto& m = op_.matrix();
  const bool diagonal_tag = structure_ == Structure::kDiagonal || structure_ == Structure::kCustomDiagonal;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      if (diagonal_tag && i != j && std::abs(m(i, j)) > kStructureTolerance)
        fail(Errc::kInternal, "diagonal Hamiltonian has off-diagonal entries");
      if (structure_ == Structure::kOffDiagonal && i == j && std::abs(m(i, j)) > kStructureTolerance)
        fail(Errc::kInternal, "off-diagonal Hamiltonian has diagonal entries");
    }
}

std::optional<double> BatteryHamiltonian::param(std::string_view name) const {
  auto it = params_.find(std::string(name));
  if (it == params_.end()) return std::nullopt;
  return it->second;
}

double BatteryHamiltonian::level_gap(int i, int j) const {
  require(structure_ == Structure::kDiagonal || structure_ == Structure::kCustomDiagonal,
          Errc::kUnsupported, "level gaps are defined for diagonal Hamiltonians only");
  require(i >= 0 && j >= 0 && i < dim() && j < dim(), Errc::kOutOfRange, "level index out of range");
  return matrix()(j, j).real() - matrix()(i, i).real();
}

std::string BatteryHamiltonian::id() const {
  auto join = [](std::initializer_list<double> xs) {
    std::string s;
    for (double x : xs) {
      if (!s.empty()) s += ',';
      s += format_double(x);
    }
    return s;
  };
  auto p = [&](const char* k) { return params_.at(k); };
  switch (kind_) {
    case HamiltonianKind::kQubit:
      return "qubit:" + join({p("h1"), p("h3"), p("h2"), p("theta")});
    case HamiltonianKind::kJz: return "jz";
    case HamiltonianKind::kJx: return "jx";
    case HamiltonianKind::kJy: return "jy";
    case HamiltonianKind::kOffDiagonal: return "joff:" + join({p("alpha1"), p("alpha2")});
    case HamiltonianKind::kMixed:
      return "jmixed:" + join({p("alpha1"), p("alpha2"), p("alpha3")});
    case HamiltonianKind::kCustomDiagonal: {
      std::string s = "diag:";
      for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (i) s += ',';
        s += format_double(levels_[i]);
      }
      return s;
    }
  }
  return "unknown";
}

BatteryHamiltonian qubit_hamiltonian(double h1, double h3, double h2, double theta) {
  require(std::isfinite(h1) && std::isfinite(h3) && std::isfinite(h2) && std::isfinite(theta),
          Errc::kInvalidArgument, "qubit Hamiltonian parameters must be finite");
  require(h2 >= 0.0, Errc::kInvalidArgument, "h2 is a modulus and must be nonnegative");
  ComplexMatrix m(2);
  m(0, 0) = h1;
  m(1, 1) = h3;
  m(0, 1) = std::polar(h2, -theta);
  m(1, 0) = std::polar(h2, theta);
  return BatteryHamiltonian(HamiltonianKind::kQubit, Structure::kQubitGeneral,
                            HermitianOperator::from_matrix(m),
                            {{"h1", h1}, {"h3", h3}, {"h2", h2}, {"theta", theta}});
}

BatteryHamiltonian jz(int d) {
  check_dim(d);
  return BatteryHamiltonian(HamiltonianKind::kJz, Structure::kDiagonal,
                            HermitianOperator::from_matrix(jz_matrix(d)), {});
}

BatteryHamiltonian jx(int d) {
  check_dim(d);
  return BatteryHamiltonian(HamiltonianKind::kJx, Structure::kOffDiagonal,
                            HermitianOperator::from_matrix(ladder(d, 1.0)),
                            {{"alpha", 1.0}, {"phi", 0.0}});
}

BatteryHamiltonian jy(int d) {
  check_dim(d);
  return BatteryHamiltonian(HamiltonianKind::kJy, Structure::kOffDiagonal,
                            HermitianOperator::from_matrix(ladder(d, Complex(0.0, 1.0))),
                            {{"alpha", 1.0}, {"phi", std::numbers::pi / 2}});
}

BatteryHamiltonian j_offdiagonal(int d, double alpha1, double alpha2) {
  check_dim(d);
  require(std::isfinite(alpha1) && std::isfinite(alpha2), Errc::kInvalidArgument,
          "alpha parameters must be finite");
  require(alpha1 != 0.0 || alpha2 != 0.0, Errc::kInvalidArgument,
          "alpha1 and alpha2 cannot both vanish");
  const Complex c(alpha1, alpha2);
  return BatteryHamiltonian(HamiltonianKind::kOffDiagonal, Structure::kOffDiagonal,
                            HermitianOperator::from_matrix(ladder(d, c)),
                            {{"alpha1", alpha1},
                             {"alpha2", alpha2},
                             {"alpha", std::abs(c)},
                             {"phi", std::arg(c)}});
}

BatteryHamiltonian j_mixed(int d, double alpha1, double alpha2, double alpha3) {
  check_dim(d);
  require(std::isfinite(alpha1) && std::isfinite(alpha2) && std::isfinite(alpha3),
          Errc::kInvalidArgument, "alpha parameters must be finite");
  const Complex c(alpha1, alpha2);
  ComplexMatrix m = ladder(d, c) + jz_matrix(d) * Complex(alpha3);
  std::map<std::string, double> params{{"alpha1", alpha1},
                                       {"alpha2", alpha2},
                                       {"alpha3", alpha3},
                                       {"alpha", std::abs(c)},
                                       {"phi", std::arg(c)}};
  if (alpha3 != 0.0) params["alpha_bar"] = std::abs(c) / alpha3;

  Structure s = Structure::kMixed;
  if (alpha3 == 0.0 && c != Complex{}) s = Structure::kOffDiagonal;
  else if (c == Complex{}) s = Structure::kDiagonal;
  return BatteryHamiltonian(HamiltonianKind::kMixed, s, HermitianOperator::from_matrix(m),
                            std::move(params));
}

BatteryHamiltonian custom_diagonal(std::span<const double> epsilons) {
  require(epsilons.size() >= 2, Errc::kInvalidArgument, "need at least two energy levels");
  require(epsilons.size() <= std::size_t(kMaxBatteryDim), Errc::kOutOfRange,
          "at most 8 energy levels are supported");
  for (double e : epsilons) require(std::isfinite(e), Errc::kInvalidArgument, "levels must be finite");
  return BatteryHamiltonian(HamiltonianKind::kCustomDiagonal, Structure::kCustomDiagonal,
                            HermitianOperator::from_matrix(ComplexMatrix::diagonal(epsilons)), {},
                            std::vector<double>(epsilons.begin(), epsilons.end()));
}

BatteryHamiltonian parse_hamiltonian(std::string_view spec, int dim) {
  const auto colon = spec.find(':');
  const std::string kind(spec.substr(0, colon));
  const std::vector<double> p =
      colon == std::string_view::npos ? std::vector<double>{} : parse_numbers(spec.substr(colon + 1));

  if (kind == "jz" || kind == "jx" || kind == "jy") {
    expect_count(kind, p, 0);
    if (kind == "jz") return jz(dim);
    if (kind == "jx") return jx(dim);
    return jy(dim);
  }
  if (kind == "joff" || kind == "j_offdiagonal") {
    expect_count(kind, p, 2);
    return j_offdiagonal(dim, p[0], p[1]);
  }
  if (kind == "jmixed" || kind == "j_mixed") {
    expect_count(kind, p, 3);
    return j_mixed(dim, p[0], p[1], p[2]);
  }
  if (kind == "qubit") {
    expect_count(kind, p, 4);
    if (dim != 2) fail(Errc::kInvalidArgument, "qubit Hamiltonian requires dimension 2");
    return qubit_hamiltonian(p[0], p[1], p[2], p[3]);
  }
  if (kind == "diag" || kind == "custom_diagonal") {
    if (dim != static_cast<int>(p.size()))
      fail(Errc::kInvalidArgument, "diag spec has " + std::to_string(p.size()) +
                                       " levels but dimension is " + std::to_string(dim));
    return custom_diagonal(p);
  }
  fail(Errc::kParse, "unknown Hamiltonian kind '" + kind + "'");
}

}  // namespace ccmw
