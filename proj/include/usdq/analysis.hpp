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

// Counts -> quantum contrast -> normalized outcome probabilities, with
// first-order (Gaussian) uncertainty propagation from sqrt(N) count noise,
// and the comparison of the mean total error rate with the MESD bound.

#include <string_view>
#include <vector>

#include "usdq/experiment.hpp"
#include "usdq/linalg.hpp"

namespace usdq {

struct OutcomeTable {
  int dim = 0;
  double theta = 0.0;
  RealMatrix probabilities;     // P_ij, d x (d+1)
  RealMatrix sigmas;            // sigma(P_ij)
  RealMatrix quantum_contrast;  // Q_ij
  /// sigma of each per-state error sum, propagated jointly so the shared row
  /// normalization is accounted for. May be empty for hand-built tables.
  Vector error_sigmas;
};

enum class Verdict { kBelowByOneSigma, kOverlapping, kAbove };

std::string_view to_string(Verdict v);

struct ErrorSummary {
  int dim = 0;
  double theta = 0.0;
  Vector per_state_error;
  double mean_total_error = 0.0;
  double mean_error_sigma = 0.0;
  double mesd_bound = 0.0;
  Verdict verdict = Verdict::kAbove;
};

/// Q_ij = (C_ij / T) / ((S_Ai / T)(S_Bj / T) t_w). Uncorrelated streams give
/// Q = 1 in expectation. Throws InsufficientData on zero singles.
RealMatrix quantum_contrast(const CountsRecord &record);

/// P_ij = (Q_ij - 1) / sum_j (Q_ij - 1). Negative entries are kept.
/// Throws DegenerateRow when a row denominator is not positive.
RealMatrix normalize_probabilities(const RealMatrix &contrast);

/// sigma(P_ij) by first-order propagation of sigma_N = sqrt(N) (1 for N = 0)
/// through Q and P.
RealMatrix gaussian_propagation(const CountsRecord &record);

/// Full analysis of one record.
OutcomeTable analyze(const CountsRecord &record);

/// below_by_one_sigma iff mean + sigma < bound; above iff mean > bound.
Verdict classify(double mean_total_error, double mean_error_sigma,
                 double bound);

ErrorSummary error_summary(const OutcomeTable &table);

}  // namespace usdq
