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

#include "usdq/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "usdq/errors.hpp"
#include "usdq/theory.hpp"

namespace usdq {

RealMatrix build_projected_vectors(int d) {
  if (d < 2) {
    throw InvalidDimension("dimension must be >= 2, got " + std::to_string(d));
  }
  const std::size_t n = static_cast<std::size_t>(d);
  const std::size_t m = n - 1;
  const double target = -1.0 / (d - 1);

  RealMatrix v(n, m);
  v(0, 0) = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    // Components below k follow from the overlap with vectors 0..k-1, whose
    // pivot entries are nonzero; component k from normalization.
    double filled = 0.0;
    for (std::size_t c = 0; c < std::min(k, m); ++c) {
      double partial = 0.0;
      for (std::size_t e = 0; e < c; ++e) partial += v(k, e) * v(c, e);
      v(k, c) = (target - partial) / v(c, c);
      filled += v(k, c) * v(k, c);
    }
    if (k < m) v(k, k) = std::sqrt(std::max(0.0, 1.0 - filled));
  }
  return v;
}

StateFamily build_state_family(int d, double theta) {
  validate_angle(d, theta);
  theta = std::min(theta, theta_max(d));
  const RealMatrix projected = build_projected_vectors(d);
  const double s = std::sin(theta);
  const double c = std::cos(theta);

  StateFamily family;
  family.dim = d;
  family.theta = theta;
  family.vectors = RealMatrix(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k + 1 < d; ++k) family.vectors(i, k) = s * projected(i, k);
    family.vectors(i, d - 1) = c;
  }
  return family;
}

ComplementSet build_complements(const StateFamily &family) {
  const int d = family.dim;
  if (family.theta < kDegenerateTheta) {
    throw DegenerateFamily(
        "theta is zero: all states coincide and have no complements");
  }

  ComplementSet out;
  out.dim = d;
  out.theta = family.theta;
  out.vectors = RealMatrix(d, d);

  RealMatrix others(d - 1, d);
  Vector residual(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0, r = 0; j < d; ++j) {
      if (j == i) continue;
      const auto src = family.vectors.row(j);
      std::copy(src.begin(), src.end(), others.row(r++).begin());
    }
    std::size_t rank = 0;
    const RealMatrix basis = orthonormal_basis(others, kOrthoTol, rank);
    if (rank + 1 < static_cast<std::size_t>(d)) {
      throw DegenerateFamily("state subset without state " +
                             std::to_string(i + 1) + " has rank " +
                             std::to_string(rank) + " < " +
                             std::to_string(d - 1));
    }
    const auto own = family.vectors.row(i);
    std::copy(own.begin(), own.end(), residual.begin());
    const double left = orthogonalize_against(residual, basis, rank);
    if (left <= kOrthoTol) {
      throw DegenerateFamily("state " + std::to_string(i + 1) +
                             " lies in the span of the others");
    }
    const double sign = dot(residual, own) >= 0.0 ? 1.0 : -1.0;
    auto dst = out.vectors.row(i);
    for (int k = 0; k < d; ++k) dst[k] = sign * residual[k];
  }
  return out;
}

DiscriminationBasis lift_to_basis(const ComplementSet &complements) {
  const int d = complements.dim;
  const std::size_t n = static_cast<std::size_t>(d) + 1;
  const auto &perp = complements.vectors;

  const double cross = dot(perp.row(0), perp.row(1));
  const double scale = dot(perp.row(0), perp.row(0));
  if (cross > kOrthoTol * scale) {
    throw LiftabilityError(
        "complements overlap positively (" + std::to_string(cross) +
        "); no single-ancilla orthonormal lift exists");
  }
  const double ancilla = std::sqrt(std::max(0.0, -cross));

  DiscriminationBasis basis;
  basis.dim = d;
  basis.theta = complements.theta;
  basis.vectors = RealMatrix(n, n);
  for (int i = 0; i < d; ++i) {
    auto row = basis.vectors.row(i);
    const auto src = perp.row(i);
    std::copy(src.begin(), src.end(), row.begin());
    row[d] = ancilla;
    const double len = norm(row);
    for (auto &x : row) x /= len;
  }

  // Inconclusive outcome: the axis whose residual against the conclusive
  // outcomes is largest gives the best-conditioned completion.
  Vector best(n);
  double best_len = -1.0;
  Vector trial(n);
  for (std::size_t axis = 0; axis < n; ++axis) {
    std::fill(trial.begin(), trial.end(), 0.0);
    trial[axis] = 1.0;
    const double len = orthogonalize_against(trial, basis.vectors, d);
    if (len > best_len) {
      best_len = len;
      best = trial;
    }
  }
  double sign = 1.0;
  if (std::abs(best[d]) > kOrthoTol * best_len) {
    sign = best[d] > 0.0 ? 1.0 : -1.0;
  } else {
    const auto lead = std::find_if(best.begin(), best.end(), [&](double x) {
      return std::abs(x) > kOrthoTol * best_len;
    });
    sign = *lead > 0.0 ? 1.0 : -1.0;
  }
  auto last = basis.vectors.row(d);
  for (std::size_t k = 0; k < n; ++k) last[k] = sign * best[k] / best_len;
  return basis;
}

DiscriminationBasis build_basis(const StateFamily &family) {
  return lift_to_basis(build_complements(family));
}

OamMap oam_map(int d) {
  if (d < 2) {
    throw InvalidDimension("dimension must be >= 2, got " + std::to_string(d));
  }
  OamMap map;
  map.dim = d;
  // Closest to zero first; positive before negative at equal magnitude.
  for (int k = 0; static_cast<int>(map.state_ells.size()) < d; ++k) {
    map.state_ells.push_back(k);
    if (k > 0 && static_cast<int>(map.state_ells.size()) < d) {
      map.state_ells.push_back(-k);
    }
  }
  std::sort(map.state_ells.begin(), map.state_ells.end());
  // The ancilla takes the closest unused label, negative side first.
  const auto used = [&](int ell) {
    return std::binary_search(map.state_ells.begin(), map.state_ells.end(), ell);
  };
  for (int k = 1;; ++k) {
    if (!used(-k)) {
      map.ancilla_ell = -k;
      break;
    }
    if (!used(k)) {
      map.ancilla_ell = k;
      break;
    }
  }
  return map;
}

Vector embed(const StateFamily &family, std::size_t i) {
  Vector v(family.dim + 1, 0.0);
  const auto src = family.vectors.row(i);
  std::copy(src.begin(), src.end(), v.begin());
  return v;
}

BasisResiduals basis_residuals(const StateFamily &family,
                               const DiscriminationBasis &basis) {
  if (family.dim != basis.dim) {
    throw ShapeError("family and basis dimensions differ");
  }
  const std::size_t d = static_cast<std::size_t>(family.dim);
  BasisResiduals r;
  r.orthonormality = identity_residual(gram(basis.vectors));
  r.completeness = completeness_residual(basis.vectors);

  double p_min = 2.0;
  double p_max = -1.0;
  for (std::size_t i = 0; i < d; ++i) {
    const Vector psi = embed(family, i);
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      const double a = dot(basis.vectors.row(j), psi);
      r.zero_error = std::max(r.zero_error, a * a);
    }
    const double a_suc = dot(basis.vectors.row(i), psi);
    const double a_inc = dot(basis.vectors.row(d), psi);
    r.closure =
        std::max(r.closure, std::abs(a_suc * a_suc + a_inc * a_inc - 1.0));
    p_min = std::min(p_min, a_suc * a_suc);
    p_max = std::max(p_max, a_suc * a_suc);
  }
  r.symmetry = p_max - p_min;
  return r;
}

}  // namespace usdq
