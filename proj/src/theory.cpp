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

#include "usdq/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "usdq/errors.hpp"

namespace usdq {
namespace {

constexpr double kAngleSlack = 1e-12;

void validate_dim(int d) {
  if (d < 2) {
    throw InvalidDimension("dimension must be >= 2, got " + std::to_string(d));
  }
}

}  // namespace

double theta_max(int d) {
  validate_dim(d);
  return std::acos(std::sqrt(1.0 / d));
}

void validate_angle(int d, double theta) {
  const double hi = theta_max(d);
  if (!(theta >= 0.0 && theta <= hi + kAngleSlack)) {
    throw DomainError("theta = " + std::to_string(theta) +
                      " rad outside the admissible interval [0, " +
                      std::to_string(hi) + "] for d = " + std::to_string(d));
  }
}

double overlap(int d, double theta) {
  validate_angle(d, theta);
  const double c = std::cos(theta);
  return std::clamp((d * c * c - 1.0) / (d - 1), 0.0, 1.0);
}

UsdProbabilities usd_probabilities(int d, double theta) {
  validate_angle(d, theta);
  const double s = std::sin(theta);
  UsdProbabilities p;
  p.p_suc = std::clamp(d * s * s / (d - 1), 0.0, 1.0);
  p.p_err = 0.0;
  p.p_inc = overlap(d, theta);
  return p;
}

double theta_for_overlap(int d, double overlap_value) {
  validate_dim(d);
  if (!(overlap_value >= 0.0 && overlap_value <= 1.0)) {
    throw DomainError("overlap must lie in [0, 1], got " +
                      std::to_string(overlap_value));
  }
  const double c2 = (1.0 + (d - 1) * overlap_value) / d;
  return std::acos(std::sqrt(std::min(c2, 1.0)));
}

double mesd_bound_from_overlap(double overlap_value) {
  if (!(std::abs(overlap_value) <= 1.0)) {
    throw DomainError("overlap magnitude must be <= 1, got " +
                      std::to_string(overlap_value));
  }
  return 0.5 * (1.0 - std::sqrt(1.0 - overlap_value * overlap_value));
}

double mesd_bound(int d, double theta) {
  return mesd_bound_from_overlap(overlap(d, theta));
}

double mesd_bound_general(std::span<const double> priors, double gram_offdiag,
                          int d) {
  validate_dim(d);
  if (priors.size() != static_cast<std::size_t>(d)) {
    throw ShapeError("expected " + std::to_string(d) + " priors, got " +
                     std::to_string(priors.size()));
  }
  double total = 0.0;
  for (double eta : priors) {
    if (!(eta >= 0.0)) throw DomainError("priors must be nonnegative");
    total += eta;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("priors must sum to 1, got " + std::to_string(total));
  }
  const double uniform = 1.0 / d;
  for (double eta : priors) {
    if (std::abs(eta - uniform) > 1e-12) {
      throw UnsupportedConfiguration(
          "only equal priors are supported for the symmetric bound");
    }
  }
  if (!(std::abs(gram_offdiag) <= 1.0)) {
    throw DomainError("overlap magnitude must be <= 1");
  }

  // Tr|rho_i - rho_j| = 2 sqrt(1 - |<Psi_i|Psi_j>|^2) for pure states.
  const double pure_trace_distance =
      2.0 * std::sqrt(1.0 - gram_offdiag * gram_offdiag);
  double pair_sum = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      pair_sum += priors[i] * pure_trace_distance;  // eta_i == eta_j
    }
  }
  return 0.5 * (1.0 - pair_sum / (d - 1));
}

TheoryPoint theory_point(int d, double theta) {
  const auto p = usd_probabilities(d, theta);
  TheoryPoint t;
  t.dim = d;
  t.theta = theta;
  t.overlap = p.p_inc;
  t.p_suc = p.p_suc;
  t.p_err = p.p_err;
  t.p_inc = p.p_inc;
  t.mesd_bound = mesd_bound_from_overlap(t.overlap);
  return t;
}

}  // namespace usdq
