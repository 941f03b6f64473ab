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

// Construction of the symmetric input states, their orthogonal complements
// and the lifted (d+1)-dimensional discrimination basis.
//
// Basis convention: component k < d of a state vector is the amplitude on
// the k-th OAM state label (OamMap::state_ells[k]); the last component of
// every input state is the lift axis. Discrimination vectors carry one more
// component, the ancilla (OamMap::ancilla_ell).

#include <vector>

#include "usdq/linalg.hpp"

namespace usdq {

/// Tolerances shared by construction and checks.
inline constexpr double kOrthoTol = 1e-10;
inline constexpr double kClosedFormTol = 1e-12;
/// Angles closer to zero than this are rejected: all states coincide.
inline constexpr double kDegenerateTheta = 1e-9;

struct StateFamily {
  int dim = 0;
  double theta = 0.0;
  RealMatrix vectors;  // dim x dim, row i = |Psi_i>
};

struct ComplementSet {
  int dim = 0;
  double theta = 0.0;
  RealMatrix vectors;  // dim x dim, row i = |Psi_perp_i>, unnormalized
};

struct DiscriminationBasis {
  int dim = 0;
  double theta = 0.0;
  /// (dim+1) x (dim+1); rows 0..dim-1 are the conclusive outcomes, row dim
  /// is the inconclusive outcome.
  RealMatrix vectors;

  std::size_t inconclusive_index() const { return static_cast<std::size_t>(dim); }
};

struct OamMap {
  int dim = 0;
  std::vector<int> state_ells;  // ascending
  int ancilla_ell = 0;
};

/// d unit vectors in d-1 dimensions with pairwise overlap -1/(d-1).
/// Throws InvalidDimension for d < 2.
RealMatrix build_projected_vectors(int d);

/// |Psi_i> = sin(theta)|Psi'_i> + cos(theta)|d>.
/// Throws InvalidDimension or DomainError (theta outside [0, theta_max]).
StateFamily build_state_family(int d, double theta);

/// One vector per state, orthogonal to every other state of the family and
/// with positive overlap with its own. Throws DegenerateFamily.
ComplementSet build_complements(const StateFamily &family);

/// Single-ancilla lift of the complements to an orthonormal basis of d+1
/// dimensions. Throws LiftabilityError when the complements overlap
/// positively.
DiscriminationBasis lift_to_basis(const ComplementSet &complements);

/// Convenience: family -> complements -> basis.
DiscriminationBasis build_basis(const StateFamily &family);

OamMap oam_map(int d);

/// |Psi_i> padded with a zero ancilla component.
Vector embed(const StateFamily &family, std::size_t i);

/// Residuals reported by `usdq build` and `usdq check`.
struct BasisResiduals {
  double orthonormality = 0.0;  // max |<D_i|D_j> - delta_ij|
  double completeness = 0.0;    // max |sum |D><D| - I|
  double zero_error = 0.0;      // max_{i != j <= d} |<D_j|Psi_i>|^2
  double closure = 0.0;         // max_i |p_suc_i + p_inc_i - 1|
  double symmetry = 0.0;        // spread of |<D_i|Psi_i>|^2 across i
};

BasisResiduals basis_residuals(const StateFamily &family,
                               const DiscriminationBasis &basis);

}  // namespace usdq
