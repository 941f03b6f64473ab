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

#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "usdq/linalg.hpp"

namespace usdq {
namespace {

RealMatrix random_matrix(testing::CaseGen &gen, std::size_t r, std::size_t c) {
  RealMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = gen.uniform(-1.0, 1.0);
  }
  return m;
}

TEST(Linalg, DotNormAxpy) {
  const Vector a{1.0, 2.0, 2.0};
  const Vector b{3.0, -1.0, 0.5};
  EXPECT_DOUBLE_EQ(dot(a, b), 2.0);
  EXPECT_DOUBLE_EQ(norm(a), 3.0);
  Vector y{1.0, 1.0, 1.0};
  axpy(2.0, a, y);
  EXPECT_EQ(y, (Vector{3.0, 5.0, 5.0}));
}

TEST(Linalg, MatrixRowViewsAliasStorage) {
  RealMatrix m(2, 3, 0.5);
  m.row(1)[2] = 7.0;
  EXPECT_EQ(m(1, 2), 7.0);
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m.data().size(), 6u);
}

TEST(Linalg, OrthogonalizeAgainstRemovesComponents) {
  RealMatrix basis(2, 3);
  basis(0, 0) = 1.0;
  basis(1, 1) = 1.0;
  Vector v{3.0, 4.0, 12.0};
  const double r = orthogonalize_against(v, basis, 2);
  EXPECT_DOUBLE_EQ(r, 12.0);
  EXPECT_EQ(v, (Vector{0.0, 0.0, 12.0}));
}

TEST(Linalg, OrthonormalBasisDetectsDependentRows) {
  RealMatrix rows(3, 3);
  rows(0, 0) = 1.0;
  rows(0, 1) = 1.0;
  rows(1, 0) = 2.0;
  rows(1, 1) = 2.0;  // parallel to row 0
  rows(2, 2) = 5.0;
  std::size_t rank = 0;
  const RealMatrix q = orthonormal_basis(rows, 1e-10, rank);
  EXPECT_EQ(rank, 2u);
  EXPECT_EQ(q.rows(), 2u);
  EXPECT_LT(identity_residual(gram(q)), 1e-15);
}

TEST(Linalg, IdentityAndCompletenessResiduals) {
  RealMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1.25;
  a(0, 1) = -0.5;
  EXPECT_DOUBLE_EQ(identity_residual(a), 0.5);
  RealMatrix rows(2, 2);
  rows(0, 0) = 1.0;
  rows(1, 1) = 1.0;
  EXPECT_EQ(completeness_residual(rows), 0.0);
  rows(1, 1) = 0.0;
  EXPECT_EQ(completeness_residual(rows), 1.0);
}

TEST(LinalgProperty, RandomFullRankInputsGiveOrthonormalRows) {
  testing::CaseGen gen(11);
  for (int c = 0; c < testing::kPropertyCases; ++c) {
    const std::size_t n = static_cast<std::size_t>(gen.dim(2, 15));
    const RealMatrix m = random_matrix(gen, n, n);
    std::size_t rank = 0;
    const RealMatrix q = orthonormal_basis(m, 1e-10, rank);
    ASSERT_EQ(rank, n) << "case " << c;
    EXPECT_LT(identity_residual(gram(q)), 1e-12) << "case " << c;
    EXPECT_LT(completeness_residual(q), 1e-12) << "case " << c;
  }
}

TEST(LinalgProperty, ResidualIsOrthogonalToBasis) {
  testing::CaseGen gen(12);
  for (int c = 0; c < testing::kPropertyCases; ++c) {
    const std::size_t n = static_cast<std::size_t>(gen.dim(3, 15));
    std::size_t rank = 0;
    const RealMatrix q = orthonormal_basis(random_matrix(gen, n - 1, n), 1e-10, rank);
    Vector v(n);
    for (auto &x : v) x = gen.uniform(-1.0, 1.0);
    const double before = norm(v);
    const double r = orthogonalize_against(v, q, rank);
    EXPECT_NEAR(r, norm(v), 1e-14);
    EXPECT_LE(r, before + 1e-14);
    for (std::size_t k = 0; k < rank; ++k) EXPECT_NEAR(dot(q.row(k), v), 0.0, 1e-14);
  }
}

}  // namespace
}  // namespace usdq
