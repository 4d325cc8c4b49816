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

#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace ccmw {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim)
    fail(Errc::kOutOfRange, "matrix dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  std::fill_n(raw_, 2 * dim * dim, 0.0);
}

ComplexMatrix::ComplexMatrix(const ComplexMatrix& other) noexcept : dim_(other.dim_) {
  std::copy_n(other.raw_, 2 * dim_ * dim_, raw_);
}

ComplexMatrix& ComplexMatrix::operator=(const ComplexMatrix& other) noexcept {
  dim_ = other.dim_;
  std::copy_n(other.raw_, 2 * dim_ * dim_, raw_);
  return *this;
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  ComplexMatrix m(static_cast<int>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) m(int(i), int(i)) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_row_major(int dim, std::span<const Complex> entries) {
  ComplexMatrix m(dim);
  require(entries.size() == std::size_t(dim) * std::size_t(dim), Errc::kDimensionMismatch,
          "row-major data does not match the matrix dimension");
  std::copy(entries.begin(), entries.end(), m.data());
  require(m.all_finite(), Errc::kInvalidArgument, "matrix entries must be finite");
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Complex ComplexMatrix::trace() const noexcept {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (int k = 0; k < dim_ * dim_; ++k) s += std::norm(data()[k]);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  require(other.dim_ == dim_, Errc::kDimensionMismatch, "matrix dimensions differ");
  double m = 0.0;
  for (int k = 0; k < dim_ * dim_; ++k) m = std::max(m, std::abs(data()[k] - other.data()[k]));
  return m;
}

bool ComplexMatrix::all_finite() const noexcept {
  for (int k = 0; k < dim_ * dim_; ++k)
    if (!std::isfinite(data()[k].real()) || !std::isfinite(data()[k].imag())) return false;
  return true;
}

std::vector<Complex> ComplexMatrix::row_major() const {
  return {data(), data() + dim_ * dim_};
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require(rhs.dim_ == dim_, Errc::kDimensionMismatch, "matrix dimensions differ");
  for (int k = 0; k < dim_ * dim_; ++k) data()[k] += rhs.data()[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require(rhs.dim_ == dim_, Errc::kDimensionMismatch, "matrix dimensions differ");
  for (int k = 0; k < dim_ * dim_; ++k) data()[k] -= rhs.data()[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) noexcept {
  for (int k = 0; k < dim_ * dim_; ++k) data()[k] *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require(lhs.dim() == rhs.dim(), Errc::kDimensionMismatch, "matrix dimensions differ");
  const int n = lhs.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex l = lhs(i, k);
      if (l == Complex{}) continue;
      for (int j = 0; j < n; ++j) r(i, j) += l * rhs(k, j);
    }
  return r;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.dim() == b.dim(), Errc::kDimensionMismatch, "matrix dimensions differ");
  Complex t = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  return t;
}

ComplexMatrix conjugate_diagonal(const ComplexMatrix& u, std::span<const double> diag) {
  const int n = u.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s += u(i, k) * diag[k] * std::conj(u(j, k));
      r(i, j) = s;
      r(j, i) = std::conj(s);
    }
  for (int i = 0; i < n; ++i) r(i, i) = r(i, i).real();
  return r;
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m) {
  return u * m * u.adjoint();
}

HermitianOperator HermitianOperator::from_matrix(const ComplexMatrix& m, double tol) {
  require(m.all_finite(), Errc::kInvalidArgument, "operator entries must be finite");
  const int n = m.dim();
  ComplexMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex a = m(i, j);
      const Complex b = std::conj(m(j, i));
      if (std::abs(a - b) > tol) {
        std::ostringstream os;
        os << "operator is not Hermitian: entry (" << i << "," << j << ") deviates by "
           << std::abs(a - b);
        fail(Errc::kNotHermitian, os.str());
      }
      h(i, j) = 0.5 * (a + b);
    }
  return HermitianOperator(h);
}

double unitarity_defect(const ComplexMatrix& u) {
  const int n = u.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s += std::conj(u(k, i)) * u(k, j);
      if (i == j) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

UnitaryMatrix UnitaryMatrix::from_matrix(const ComplexMatrix& m, double tol) {
  require(m.all_finite(), Errc::kInvalidArgument, "unitary entries must be finite");
  const double defect = unitarity_defect(m);
  if (defect > tol) {
    std::ostringstream os;
    os << "matrix is not unitary: max |U^dagger U - I| = " << defect;
    fail(Errc::kNotUnitary, os.str());
  }
  return UnitaryMatrix(m);
}

UnitaryMatrix UnitaryMatrix::identity(int dim) { return UnitaryMatrix(ComplexMatrix::identity(dim)); }

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalThreshold = 1e-14;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Annihilates a(p,q) with G = P R, where P = diag(1, e^{-i phi}) on (p,q)
// makes the pivot real and R is the real Jacobi rotation. a <- G^dagger a G,
// v <- v G.
void rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * r);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex gqp = -s * std::conj(phase);  // G(q,p)
  const Complex gqq = c * std::conj(phase);   // G(q,q)
  const int n = a.dim();

  for (int k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * c + akq * gqp;
    a(k, q) = akp * s + akq * gqq;
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * c + vkq * gqp;
    v(k, q) = vkp * s + vkq * gqq;
  }
  for (int k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(gqp) * aqk;
    a(q, k) = s * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * r;
  a(q, q) = aqq + t * r;
}

}  // namespace

void jacobi_eigh(const ComplexMatrix& input, std::span<double> values, ComplexMatrix& vectors) {
  const int n = input.dim();
  ComplexMatrix a = input;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), 1e-300);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kOffDiagonalThreshold * scale) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::array<int, kMaxDim> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  std::sort(order.begin(), order.begin() + n,
            [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
  vectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    values[k] = a(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) vectors(i, k) = v(i, order[k]);
  }
}

Eigensystem eigendecompose(const HermitianOperator& op) {
  const int n = op.dim();
  std::vector<double> values(n);
  ComplexMatrix vectors(n);
  jacobi_eigh(op.matrix(), values, vectors);
  return {std::move(values), UnitaryMatrix::from_matrix(vectors)};
}

ComplexMatrix exp_i_hermitian(const ComplexMatrix& a) {
  const int n = a.dim();
  std::array<double, kMaxDim> values{};
  ComplexMatrix v(n);
  jacobi_eigh(a, std::span(values.data(), n), v);
  std::array<Complex, kMaxDim> phases{};
  for (int k = 0; k < n; ++k) phases[k] = std::polar(1.0, values[k]);
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s += v(i, k) * phases[k] * std::conj(v(j, k));
      r(i, j) = s;
    }
  return r;
}

GeneratorSet::GeneratorSet(int dim) : dim_(dim) {
  if (dim < kMinDim || dim > kMaxDim)
    fail(Errc::kOutOfRange, "generator dimension must be in [2, 8], got " + std::to_string(dim));
  const Complex i_unit(0.0, 1.0);
  auto add = [&](std::vector<Entry> entries) {
    ComplexMatrix m(dim);
    for (const auto& e : entries) m(e.row, e.col) += e.value;
    generators_.push_back(HermitianOperator::from_matrix(m));
    sparse_.push_back(std::move(entries));
  };

  std::vector<Entry> id;
  for (int i = 0; i < dim; ++i) id.push_back({i, i, 1.0});
  add(std::move(id));

  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k) add({{j, k, 1.0}, {k, j, 1.0}});
  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k) add({{j, k, -i_unit}, {k, j, i_unit}});
  for (int l = 1; l < dim; ++l) {
    const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    std::vector<Entry> diag;
    for (int m = 0; m < l; ++m) diag.push_back({m, m, norm});
    diag.push_back({l, l, -l * norm});
    add(std::move(diag));
  }
}

ComplexMatrix GeneratorSet::combine(std::span<const double> theta) const {
  if (theta.size() != generators_.size())
    fail(Errc::kDimensionMismatch, "expected " + std::to_string(generators_.size()) +
                                       " parameters, got " + std::to_string(theta.size()));
  ComplexMatrix m(dim_);
  for (std::size_t j = 0; j < sparse_.size(); ++j) {
    if (theta[j] == 0.0) continue;
    for (const auto& e : sparse_[j]) m(e.row, e.col) += theta[j] * e.value;
  }
  return m;
}

GeneratorSet gellmann_generators(int dim) { return GeneratorSet(dim); }

ComplexMatrix unitary_from_parameters_unchecked(const GeneratorSet& gen,
                                                std::span<const double> theta) {
  return exp_i_hermitian(gen.combine(theta));
}

UnitaryMatrix unitary_from_parameters(const GeneratorSet& gen, std::span<const double> theta) {
  return UnitaryMatrix::from_matrix(unitary_from_parameters_unchecked(gen, theta));
}

}  // namespace ccmw
