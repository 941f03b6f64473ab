// Copyright 2026 The usdq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small dense real linear algebra. Every space in this toolkit has at most a
// few tens of dimensions, so plain row-major storage is all that is needed.

#include <cstddef>
#include <span>
#include <vector>

namespace usdq {

using Vector = std::vector<double>;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<const T> data() const noexcept { return data_; }

  bool operator==(const Matrix &) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using CountMatrix = Matrix<long long>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// Removes from `v` its components along the orthonormal rows of `basis`,
/// using two passes of modified Gram-Schmidt. Returns the norm of the
/// residual.
double orthogonalize_against(std::span<double> v, const RealMatrix &basis,
                             std::size_t basis_rows);

/// Builds an orthonormal basis for the span of the given rows. Rows whose
/// residual norm falls below `rank_tol` (relative to their input norm) are
/// treated as linearly dependent; `rank` receives the number of basis rows.
RealMatrix orthonormal_basis(const RealMatrix &rows, double rank_tol,
                             std::size_t &rank);

/// G = A A^T.
RealMatrix gram(const RealMatrix &a);

/// max_ij |A_ij - I_ij| for a square matrix.
double identity_residual(const RealMatrix &a);

/// Sum over rows of the outer products |r><r| minus the identity, as a
/// max-abs residual.
double completeness_residual(const RealMatrix &rows);

}  // namespace usdq
