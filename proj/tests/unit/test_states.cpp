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
#include <set>

#include "support.hpp"
#include "usdq/errors.hpp"
#include "usdq/states.hpp"
#include "usdq/theory.hpp"

namespace usdq {
namespace {

constexpr double kPi = 3.14159265358979323846;

double rad(double deg) { return deg * kPi / 180.0; }

// d = 3 measurement states written out by hand, ordered like the family.
RealMatrix d3_closed_form(double theta) {
  const double c = std::cos(theta);
  const double t = std::tan(theta);
  const double sec = 1.0 / c;
  const double anc = std::sqrt((3.0 * c * c - 1.0) / 6.0) * sec;
  RealMatrix m(4, 4);
  const double rows[4][4] = {
      {2.0 / std::sqrt(6.0), 0.0, t / std::sqrt(6.0), anc},
      {-1.0 / std::sqrt(6.0), 1.0 / std::sqrt(2.0), t / std::sqrt(6.0), anc},
      {-1.0 / std::sqrt(6.0), -1.0 / std::sqrt(2.0), t / std::sqrt(6.0), anc},
      {0.0, 0.0, -std::sqrt((3.0 * c * c - 1.0) / 2.0) * sec, t / std::sqrt(2.0)}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

// Max componentwise distance between two rows, allowing a global sign flip.
double row_distance_up_to_sign(std::span<const double> a, std::span<const double> b) {
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    plus = std::max(plus, std::abs(a[k] - b[k]));
    minus = std::max(minus, std::abs(a[k] + b[k]));
  }
  return std::min(plus, minus);
}

TEST(ProjectedVectors, D2) {
  const RealMatrix v = build_projected_vectors(2);
  ASSERT_EQ(v.rows(), 2u);
  ASSERT_EQ(v.cols(), 1u);
  EXPECT_DOUBLE_EQ(v(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(v(1, 0), -1.0);
}

TEST(ProjectedVectors, D3Trine) {
  const RealMatrix v = build_projected_vectors(3);
  EXPECT_NEAR(v(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(v(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(v(1, 0), -0.5, 1e-15);
  EXPECT_NEAR(v(1, 1), std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(v(2, 0), -0.5, 1e-15);
  EXPECT_NEAR(v(2, 1), -std::sqrt(3.0) / 2.0, 1e-15);
}

TEST(ProjectedVectors, D5GramMatrix) {
  const RealMatrix v = build_projected_vectors(5);
  ASSERT_EQ(v.cols(), 4u);
  const RealMatrix g = gram(v);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_NEAR(g(i, j), i == j ? 1.0 : -0.25, 1e-12);
    }
  }
}

TEST(ProjectedVectors, RejectsSmallDimensions) {
  EXPECT_THROW(build_projected_vectors(1), InvalidDimension);
  EXPECT_THROW(build_projected_vectors(0), InvalidDimension);
}

TEST(ProjectedVectors, AllDimensionsEquiangular) {
  for (int d = 2; d <= 20; ++d) {
    const RealMatrix g = gram(build_projected_vectors(d));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        EXPECT_NEAR(g(i, j), i == j ? 1.0 : -1.0 / (d - 1), 1e-12) << "d=" << d;
      }
    }
  }
}

TEST(StateFamily, D3FirstState) {
  for (double deg : {10.0, 33.0, 50.0}) {
    const double t = rad(deg);
    const StateFamily f = build_state_family(3, t);
    EXPECT_NEAR(f.vectors(0, 0), std::sin(t), 1e-15);
    EXPECT_NEAR(f.vectors(0, 1), 0.0, 1e-15);
    EXPECT_NEAR(f.vectors(0, 2), std::cos(t), 1e-15);
  }
}

TEST(StateFamily, ThetaZeroCollapsesToLastAxis) {
  for (int d = 2; d <= 8; ++d) {
    const StateFamily f = build_state_family(d, 0.0);
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) {
        EXPECT_EQ(f.vectors(i, k), k == d - 1 ? 1.0 : 0.0);
      }
    }
    EXPECT_NEAR(gram(f.vectors)(0, 1), 1.0, 1e-15);
  }
}

TEST(StateFamily, D6At40DegreesOverlap) {
  const StateFamily f = build_state_family(6, rad(40.0));
  const RealMatrix g = gram(f.vectors);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i != j) EXPECT_NEAR(g(i, j), 0.50418, 1e-5);
    }
  }
}

TEST(StateFamily, RejectsAnglesOutsideRange) {
  EXPECT_THROW(build_state_family(3, -0.1), DomainError);
  EXPECT_THROW(build_state_family(3, theta_max(3) + 1e-6), DomainError);
  EXPECT_THROW(build_state_family(1, 0.3), InvalidDimension);
  EXPECT_NO_THROW(build_state_family(3, theta_max(3)));
}

TEST(Complements, D3ClosedForm) {
  for (double deg : {15.0, 33.0, 45.0}) {
    const double t = rad(deg);
    const ComplementSet c = build_complements(build_state_family(3, t));
    const double expect[3] = {std::sqrt(3.0) * std::cos(t) * std::sin(t), 0.0,
                              std::sqrt(3.0) / 2.0 * std::sin(t) * std::sin(t)};
    const double scale = c.vectors(0, 0) / expect[0];
    EXPECT_GT(scale, 0.0);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(c.vectors(0, k), scale * expect[k], 1e-12);
  }
}

TEST(Complements, D2At45Degrees) {
  const StateFamily f = build_state_family(2, rad(45.0));
  const ComplementSet c = build_complements(f);
  EXPECT_NEAR(dot(c.vectors.row(0), f.vectors.row(1)), 0.0, 1e-15);
  EXPECT_GT(dot(c.vectors.row(0), f.vectors.row(0)), 0.0);
}

TEST(Complements, D4At30DegreesOrthogonality) {
  const StateFamily f = build_state_family(4, rad(30.0));
  const ComplementSet c = build_complements(f);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double ov = dot(c.vectors.row(i), f.vectors.row(j));
      if (i == j) {
        EXPECT_GT(ov, 0.0);
      } else {
        EXPECT_NEAR(ov, 0.0, 1e-12);
      }
    }
  }
}

TEST(Complements, DegenerateAtThetaZero) {
  EXPECT_THROW(build_complements(build_state_family(3, 0.0)), DegenerateFamily);
  EXPECT_THROW(build_complements(build_state_family(3, 1e-10)), DegenerateFamily);
}

TEST(Basis, D3MatchesClosedForm) {
  for (double deg : {15.0, 33.0, 45.0}) {
    const DiscriminationBasis b = build_basis(build_state_family(3, rad(deg)));
    const RealMatrix expect = d3_closed_form(rad(deg));
    for (std::size_t r = 0; r < 4; ++r) {
      EXPECT_LT(row_distance_up_to_sign(b.vectors.row(r), expect.row(r)), 1e-12)
          << "theta=" << deg << " row " << r;
    }
  }
}

TEST(Basis, SignConventionPositiveAncilla) {
  const DiscriminationBasis b = build_basis(build_state_family(5, rad(30.0)));
  for (std::size_t r = 0; r <= 5; ++r) EXPECT_GT(b.vectors(r, 5), 0.0);
}

TEST(Basis, D6At40DegreesGramIsIdentity) {
  const DiscriminationBasis b = build_basis(build_state_family(6, rad(40.0)));
  EXPECT_EQ(b.vectors.rows(), 7u);
  EXPECT_LT(identity_residual(gram(b.vectors)), 1e-10);
}

TEST(Basis, D2At45DegreesIsThreeOutcomeBasis) {
  const DiscriminationBasis b = build_basis(build_state_family(2, rad(45.0)));
  EXPECT_EQ(b.vectors.rows(), 3u);
  EXPECT_LT(completeness_residual(b.vectors), 1e-10);
}

TEST(Basis, OrthogonalLimitDropsAncilla) {
  for (int d = 2; d <= 8; ++d) {
    const StateFamily f = build_state_family(d, theta_max(d));
    const DiscriminationBasis b = build_basis(f);
    const ComplementSet c = build_complements(f);
    for (int i = 0; i < d; ++i) {
      EXPECT_NEAR(b.vectors(i, d), 0.0, 1e-7) << "d=" << d;
      const double n = norm(c.vectors.row(i));
      for (int k = 0; k < d; ++k) {
        EXPECT_NEAR(b.vectors(i, k), c.vectors(i, k) / n, 1e-7);
      }
      const double inc = dot(b.vectors.row(d), embed(f, i));
      EXPECT_NEAR(inc * inc, 0.0, 1e-12);
    }
  }
}

TEST(Basis, LiftRejectsPositivelyOverlappingComplements) {
  ComplementSet c;
  c.dim = 2;
  c.theta = 0.3;
  c.vectors = RealMatrix(2, 2);
  c.vectors(0, 0) = 1.0;
  c.vectors(0, 1) = 0.5;
  c.vectors(1, 0) = 0.5;
  c.vectors(1, 1) = 1.0;
  EXPECT_THROW(lift_to_basis(c), LiftabilityError);
}

TEST(Oam, TableRows) {
  const auto check = [](int d, std::vector<int> states, int anc) {
    const OamMap m = oam_map(d);
    EXPECT_EQ(m.dim, d);
    EXPECT_EQ(m.state_ells, states) << "d=" << d;
    EXPECT_EQ(m.ancilla_ell, anc) << "d=" << d;
  };
  check(2, {0, 1}, -1);
  check(3, {-1, 0, 1}, -2);
  check(4, {-1, 0, 1, 2}, -2);
  check(5, {-2, -1, 0, 1, 2}, -3);
}

TEST(Oam, LabelsDistinctAndMinimal) {
  for (int d = 2; d <= 30; ++d) {
    const OamMap m = oam_map(d);
    std::set<int> all(m.state_ells.begin(), m.state_ells.end());
    all.insert(m.ancilla_ell);
    EXPECT_EQ(all.size(), static_cast<std::size_t>(d + 1));
    int widest = 0;
    for (int l : all) widest = std::max(widest, std::abs(l));
    // d+1 distinct integers cannot fit in a smaller symmetric window.
    EXPECT_EQ(widest, (d + 1) / 2) << "d=" << d;
  }
}

TEST(Oam, RejectsSmallDimensions) { EXPECT_THROW(oam_map(1), InvalidDimension); }

TEST(StatesProperty, BasisInvariantsOnRandomPoints) {
  testing::CaseGen gen(21);
  for (int c = 0; c < testing::kPropertyCases; ++c) {
    const auto [d, theta] = gen.point();
    const StateFamily f = build_state_family(d, theta);
    const ComplementSet comp = build_complements(f);
    const DiscriminationBasis b = build_basis(f);
    const BasisResiduals r = basis_residuals(f, b);
    const UsdProbabilities p = usd_probabilities(d, theta);
    SCOPED_TRACE(::testing::Message() << "d=" << d << " theta=" << theta);

    const RealMatrix g = gram(f.vectors);
    for (int i = 0; i < d; ++i) {
      EXPECT_NEAR(g(i, i), 1.0, 1e-12);
      EXPECT_NEAR(f.vectors(i, d - 1), std::cos(theta), 1e-15);
      for (int j = 0; j < d; ++j) {
        if (i != j) EXPECT_NEAR(g(i, j), overlap(d, theta), 1e-12);
      }
    }

    const RealMatrix cg = gram(comp.vectors);
    for (int i = 0; i < d; ++i) {
      EXPECT_GT(dot(comp.vectors.row(i), f.vectors.row(i)), 0.0);
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        EXPECT_NEAR(dot(comp.vectors.row(i), f.vectors.row(j)), 0.0, 1e-10);
        EXPECT_NEAR(cg(i, j), cg(0, 1), 1e-10);
        EXPECT_LE(cg(i, j), 1e-10);
      }
    }

    EXPECT_LT(r.orthonormality, 1e-10);
    EXPECT_LT(r.completeness, 1e-10);
    EXPECT_LE(r.zero_error, 1e-20);
    EXPECT_LT(r.closure, 1e-12);
    EXPECT_LT(r.symmetry, 1e-12);
    for (int i = 0; i < d; ++i) {
      const Vector psi = embed(f, i);
      const double a = dot(b.vectors.row(i), psi);
      const double inc = dot(b.vectors.row(d), psi);
      EXPECT_NEAR(a * a, p.p_suc, 1e-12);
      EXPECT_NEAR(inc * inc, p.p_inc, 1e-12);
    }
  }
}

TEST(StatesProperty, ResidualsOracleAgreesWithDirectProducts) {
  testing::CaseGen gen(22);
  for (int c = 0; c < 50; ++c) {
    const auto [d, theta] = gen.point();
    const StateFamily f = build_state_family(d, theta);
    const DiscriminationBasis b = build_basis(f);
    double zero_error = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        const double a = dot(b.vectors.row(j), embed(f, i));
        zero_error = std::max(zero_error, a * a);
      }
    }
    EXPECT_EQ(basis_residuals(f, b).zero_error, zero_error);
  }
}

}  // namespace
}  // namespace usdq
