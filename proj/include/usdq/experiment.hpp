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

// Virtual heralded-photon experiment: prepare |Psi_i> in arm A, project arm B
// onto |D_j>, and count coincidences and singles with Poisson statistics.

#include <cstdint>
#include <vector>

#include "usdq/linalg.hpp"
#include "usdq/states.hpp"

namespace usdq {

struct ExperimentConfig {
  int dim = 0;
  double theta = 0.0;                  // radians
  double integration_time = 30.0;      // s
  double coincidence_window = 25e-9;   // s
  double max_coincidence_rate = 350.0; // Hz
  /// Width of the Gaussian |c_l|^2 envelope over OAM labels.
  double spiral_bandwidth_sigma = 2.4;
  /// Weight of the uniform outcome mixture added to every preparation.
  double crosstalk_epsilon = 0.0;
  /// Uncorrelated singles rate per arm and setting, Hz.
  double singles_rate_scale = 15000.0;
  /// Run every preparation at the rate of the weakest mode in use instead of
  /// its own spiral weight.
  bool equalize_rates = false;
  std::uint64_t rng_seed = 1;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// Crosstalk that puts `cell_error` probability into every outcome cell of
/// the uniform mixture: epsilon = cell_error * (d + 1).
double epsilon_for_cell_error(int d, double cell_error);

struct CountsRecord {
  int dim = 0;
  double theta = 0.0;
  CountMatrix coincidences;           // d x (d+1)
  std::vector<long long> singles_a;   // d
  std::vector<long long> singles_b;   // d+1
  double integration_time = 0.0;
  double coincidence_window = 0.0;
  std::uint64_t seed = 0;
  ExperimentConfig config;

  /// Throws ShapeError / DomainError if sizes or the C <= min(S_A, S_B)
  /// bound do not hold.
  void validate() const;
};

/// Entry (i, j) = |<D_j|Psi_i>|^2.
RealMatrix ideal_detection_matrix(const StateFamily &family,
                                  const DiscriminationBasis &basis);

/// row <- (1 - epsilon) row + epsilon / (d + 1).
RealMatrix apply_noise(const RealMatrix &ideal, double epsilon);
RealMatrix apply_noise(const RealMatrix &ideal, const ExperimentConfig &config);

/// exp(-l^2 / (2 sigma^2)) per state label, scaled so the largest is 1.
Vector spiral_weights(const OamMap &oam, double sigma);

/// Heralded pair rate R_i per preparation, Hz.
Vector preparation_rates(const ExperimentConfig &config, const OamMap &oam);

/// Means of every Poisson stream of a run.
struct ExpectedCounts {
  RealMatrix coincidences;  // lambda_ij, correlated + accidental
  RealMatrix correlated;    // R_i p_ij T
  Vector singles_a;
  Vector singles_b;
  double accidental = 0.0;  // per cell
};

ExpectedCounts expected_counts(const StateFamily &family,
                               const DiscriminationBasis &basis,
                               const ExperimentConfig &config);

/// One seeded run. Each cell and singles channel draws from its own stream
/// keyed by (seed, channel, i, j), so results do not depend on evaluation
/// order. Throws ConfigError on inconsistent inputs or count overflow.
CountsRecord run_experiment(const StateFamily &family,
                            const DiscriminationBasis &basis,
                            const ExperimentConfig &config);

/// Builds family and basis from the config and runs it.
CountsRecord run_experiment(const ExperimentConfig &config);

}  // namespace usdq
