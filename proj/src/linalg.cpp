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

#include "usdq/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace usdq {

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t k = 0; k < x.size(); ++k) y[k] += alpha * x[k];
}

double orthogonalize_against(std::span<double> v, const RealMatrix &basis,
                             std::size_t basis_rows) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < basis_rows; ++r) {
      const auto q = basis.row(r);
      axpy(-dot(q, v), q, v);
    }
  }
  return norm(v);
}

RealMatrix orthonormal_basis(const RealMatrix &rows, double rank_tol,
                             std::size_t &rank) {
  RealMatrix basis(rows.rows(), rows.cols());
  rank = 0;
  Vector v(rows.cols());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const auto src = rows.row(r);
    std::copy(src.begin(), src.end(), v.begin());
    const double input_norm = norm(v);
    const double residual = orthogonalize_against(v, basis, rank);
    if (input_norm == 0.0 || residual <= rank_tol * input_norm) continue;
    auto dst = basis.row(rank);
    for (std::size_t k = 0; k < v.size(); ++k) dst[k] = v[k] / residual;
    ++rank;
  }
  RealMatrix out(rank, rows.cols());
  for (std::size_t r = 0; r < rank; ++r) {
    std::copy(basis.row(r).begin(), basis.row(r).end(), out.row(r).begin());
  }
  return out;
}

RealMatrix gram(const RealMatrix &a) {
  RealMatrix g(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.rows(); ++j) {
      g(i, j) = g(j, i) = dot(a.row(i), a.row(j));
    }
  }
  return g;
}

double identity_residual(const RealMatrix &a) {
  assert(a.rows() == a.cols());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      worst = std::max(worst, std::abs(a(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double completeness_residual(const RealMatrix &rows) {
  const std::size_t n = rows.cols();
  RealMatrix sum(n, n);
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const auto v = rows.row(r);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) sum(i, j) += v[i] * v[j];
    }
  }
  return identity_residual(sum);
}

}  // namespace usdq
