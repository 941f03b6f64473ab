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

// Closed-form quantities for d symmetric pure states in d dimensions with
// equal priors. All angles are in radians.

#include <span>

namespace usdq {

/// Largest admissible angle, arccos(sqrt(1/d)); the states are mutually
/// orthogonal there.
double theta_max(int d);

/// Throws InvalidDimension (d < 2) or DomainError (theta outside
/// [0, theta_max(d)]). Values within 1e-12 of theta_max are admitted.
void validate_angle(int d, double theta);

/// Pairwise overlap <Psi_i|Psi_j> = (d cos^2 theta - 1) / (d - 1).
double overlap(int d, double theta);

struct UsdProbabilities {
  double p_suc = 0.0;
  double p_err = 0.0;
  double p_inc = 0.0;
};

UsdProbabilities usd_probabilities(int d, double theta);

/// Inverse of `overlap` on [0, theta_max].
double theta_for_overlap(int d, double overlap_value);

/// Lower bound on the minimum-error discrimination error rate,
/// (1 - sqrt(1 - s^2)) / 2 with s the pairwise overlap.
double mesd_bound(int d, double theta);
double mesd_bound_from_overlap(double overlap_value);

/// The pairwise trace-norm form of the bound evaluated term by term:
///   1/2 (1 - 1/(d-1) sum_{i>j} Tr|eta_i rho_i - eta_j rho_j|)
/// for pure states of common overlap `gram_offdiag`. Only uniform priors are
/// supported (UnsupportedConfiguration otherwise).
double mesd_bound_general(std::span<const double> priors, double gram_offdiag,
                          int d);

struct TheoryPoint {
  int dim = 0;
  double theta = 0.0;
  double overlap = 0.0;
  double p_suc = 0.0;
  double p_err = 0.0;
  double p_inc = 0.0;
  double mesd_bound = 0.0;
};

TheoryPoint theory_point(int d, double theta);

constexpr double deg_to_rad(double deg) {
  return deg * 3.14159265358979323846 / 180.0;
}
constexpr double rad_to_deg(double rad) {
  return rad * 180.0 / 3.14159265358979323846;
}

}  // namespace usdq
