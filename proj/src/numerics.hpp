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

// Dense complex linear algebra for the small dimensions used by battery
// models (d <= 8). Matrices live in fixed-capacity inline storage so the
// optimizer inner loops never touch the heap.

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace ccmw {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 8;

class ComplexMatrix {
 public:
  ComplexMatrix() : ComplexMatrix(1) {}
  explicit ComplexMatrix(int dim);
  ComplexMatrix(const ComplexMatrix& other) noexcept;
  ComplexMatrix& operator=(const ComplexMatrix& other) noexcept;

  static ComplexMatrix identity(int dim);
  static ComplexMatrix diagonal(std::span<const double> entries);
  static ComplexMatrix from_row_major(int dim, std::span<const Complex> entries);

  int dim() const noexcept { return dim_; }

  Complex& operator()(int row, int col) noexcept { return data()[row * dim_ + col]; }
  const Complex& operator()(int row, int col) const noexcept { return data()[row * dim_ + col]; }

  ComplexMatrix adjoint() const;
  Complex trace() const noexcept;
  double frobenius_norm() const noexcept;
  double max_abs_diff(const ComplexMatrix& other) const;
  bool all_finite() const noexcept;
  std::vector<Complex> row_major() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex s) noexcept { return lhs *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix rhs) noexcept { return rhs *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

 private:
  // Only the leading dim * dim entries are initialized.
  Complex* data() noexcept { return reinterpret_cast<Complex*>(raw_); }
  const Complex* data() const noexcept { return reinterpret_cast<const Complex*>(raw_); }

  int dim_;
  alignas(Complex) double raw_[2 * kMaxDim * kMaxDim];
};

// Tr[a b] without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

// U D U^dagger for a real diagonal D.
ComplexMatrix conjugate_diagonal(const ComplexMatrix& u, std::span<const double> diag);

// U M U^dagger.
ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m);

class HermitianOperator {
 public:
  static constexpr double kTolerance = 1e-12;

  // Validates |M - M^dagger| <= tol elementwise, then stores the exactly
  // Hermitian part (M + M^dagger) / 2.
  static HermitianOperator from_matrix(const ComplexMatrix& m, double tol = kTolerance);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return m_.dim(); }

 private:
  explicit HermitianOperator(const ComplexMatrix& m) : m_(m) {}
  ComplexMatrix m_;
};

class UnitaryMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  static UnitaryMatrix from_matrix(const ComplexMatrix& m, double tol = kTolerance);
  static UnitaryMatrix identity(int dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return m_.dim(); }

 private:
  explicit UnitaryMatrix(const ComplexMatrix& m) : m_(m) {}
  ComplexMatrix m_;
};

// max |(U^dagger U - I)_ij|
double unitarity_defect(const ComplexMatrix& u);

struct Eigensystem {
  std::vector<double> values;  // ascending
  UnitaryMatrix vectors;       // column k belongs to values[k]
};

// Cyclic complex Jacobi sweeps; stops once the off-diagonal Frobenius norm
// drops below 1e-14 relative to the full norm. Degenerate eigenvalues get an
// arbitrary orthonormal set of columns.
Eigensystem eigendecompose(const HermitianOperator& op);

// Unchecked variant used on hot paths. `a` must be Hermitian; `values` must
// hold a.dim() entries.
void jacobi_eigh(const ComplexMatrix& a, std::span<double> values, ComplexMatrix& vectors);

// exp(i A) for Hermitian A through its spectral decomposition.
ComplexMatrix exp_i_hermitian(const ComplexMatrix& a);

// Identity followed by the d^2 - 1 generalized Gell-Mann matrices, ordered:
// symmetric pairs (j<k, lexicographic), antisymmetric pairs (same order),
// then diagonal generators l = 1..d-1. Normalized so Tr[T_a T_b] = 2 delta_ab
// for a, b >= 1.
class GeneratorSet {
 public:
  static constexpr int kMinDim = 2;

  explicit GeneratorSet(int dim);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const HermitianOperator& operator[](std::size_t j) const { return generators_[j]; }
  const std::vector<HermitianOperator>& generators() const noexcept { return generators_; }

  // sum_j theta_j T_j
  ComplexMatrix combine(std::span<const double> theta) const;

 private:
  struct Entry {
    int row;
    int col;
    Complex value;
  };

  int dim_;
  std::vector<HermitianOperator> generators_;
  std::vector<std::vector<Entry>> sparse_;
};

GeneratorSet gellmann_generators(int dim);

// exp(i sum_j theta_j T_j). theta must have gen.size() entries.
UnitaryMatrix unitary_from_parameters(const GeneratorSet& gen, std::span<const double> theta);

// Same, without the unitarity check.
ComplexMatrix unitary_from_parameters_unchecked(const GeneratorSet& gen,
                                                std::span<const double> theta);

}  // namespace ccmw
