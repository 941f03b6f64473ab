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

#include "usdq/analysis.hpp"

#include <cmath>
#include <string>

#include "usdq/errors.hpp"
#include "usdq/theory.hpp"

namespace usdq {
namespace {

double count_variance(long long n) { return n > 0 ? static_cast<double>(n) : 1.0; }

// Everything the first-order propagation needs for one row i.
struct RowState {
  std::size_t i = 0;
  std::vector<double> q;  // Q_ik
  std::vector<double> g;  // dQ_ik / dC_ik
  double denom = 0.0;     // sum_k (Q_ik - 1)
};

RowState row_state(const CountsRecord &rec, const RealMatrix &contrast,
                   std::size_t i) {
  const std::size_t n = contrast.cols();
  RowState s;
  s.i = i;
  s.q.assign(contrast.row(i).begin(), contrast.row(i).end());
  s.g.resize(n);
  const double T = rec.integration_time;
  for (std::size_t k = 0; k < n; ++k) {
    s.g[k] = T / (static_cast<double>(rec.singles_a[i]) *
                  static_cast<double>(rec.singles_b[k]) * rec.coincidence_window);
    s.denom += s.q[k] - 1.0;
  }
  return s;
}

// Variance of a linear functional f = sum_k w_k x_k of the row's
// x_k = Q_ik - 1, given df/dx_k = w_k, propagated to the raw counts.
double propagate(const CountsRecord &rec, const RowState &s,
                 const std::vector<double> &w) {
  const std::size_t n = s.q.size();
  const double sa = static_cast<double>(rec.singles_a[s.i]);
  double var = 0.0;
  double d_sa = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double c_term = w[k] * s.g[k];
    var += c_term * c_term * count_variance(rec.coincidences(s.i, k));
    const double sb = static_cast<double>(rec.singles_b[k]);
    const double b_term = -w[k] * s.q[k] / sb;
    var += b_term * b_term * count_variance(rec.singles_b[k]);
    d_sa += -w[k] * s.q[k] / sa;
  }
  var += d_sa * d_sa * count_variance(rec.singles_a[s.i]);
  return var;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kBelowByOneSigma:
      return "below_by_one_sigma";
    case Verdict::kOverlapping:
      return "overlapping";
    case Verdict::kAbove:
      return "above";
  }
  return "unknown";
}

RealMatrix quantum_contrast(const CountsRecord &record) {
  record.validate();
  const std::size_t d = static_cast<std::size_t>(record.dim);
  const double T = record.integration_time;
  const double tw = record.coincidence_window;
  if (!(T > 0.0) || !(tw > 0.0)) {
    throw InsufficientData("record has no integration time or window");
  }
  RealMatrix q(d, d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= d; ++j) {
      const long long sa = record.singles_a[i];
      const long long sb = record.singles_b[j];
      if (sa == 0 || sb == 0) {
        throw InsufficientData("zero singles at cell (" + std::to_string(i + 1) +
                               ", " + std::to_string(j + 1) + ")");
      }
      q(i, j) = static_cast<double>(record.coincidences(i, j)) * T /
                (static_cast<double>(sa) * static_cast<double>(sb) * tw);
    }
  }
  return q;
}

RealMatrix normalize_probabilities(const RealMatrix &contrast) {
  RealMatrix p(contrast.rows(), contrast.cols());
  for (std::size_t i = 0; i < contrast.rows(); ++i) {
    double denom = 0.0;
    for (double q : contrast.row(i)) denom += q - 1.0;
    if (!(denom > 0.0)) {
      throw DegenerateRow("row " + std::to_string(i + 1) +
                          " has no correlated signal (sum of Q - 1 = " +
                          std::to_string(denom) + ")");
    }
    for (std::size_t j = 0; j < contrast.cols(); ++j) {
      p(i, j) = (contrast(i, j) - 1.0) / denom;
    }
  }
  return p;
}

RealMatrix gaussian_propagation(const CountsRecord &record) {
  const RealMatrix q = quantum_contrast(record);
  const RealMatrix p = normalize_probabilities(q);
  const std::size_t n = q.cols();
  RealMatrix sigma(q.rows(), n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < q.rows(); ++i) {
    const RowState s = row_state(record, q, i);
    for (std::size_t j = 0; j < n; ++j) {
      // dP_ij / dx_k = (delta_jk - P_ij) / denom
      for (std::size_t k = 0; k < n; ++k) {
        w[k] = ((j == k ? 1.0 : 0.0) - p(i, j)) / s.denom;
      }
      sigma(i, j) = std::sqrt(propagate(record, s, w));
    }
  }
  return sigma;
}

OutcomeTable analyze(const CountsRecord &record) {
  OutcomeTable t;
  t.dim = record.dim;
  t.theta = record.theta;
  t.quantum_contrast = quantum_contrast(record);
  t.probabilities = normalize_probabilities(t.quantum_contrast);
  t.sigmas = gaussian_propagation(record);

  const std::size_t d = static_cast<std::size_t>(record.dim);
  t.error_sigmas.resize(d);
  std::vector<double> w(d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    const RowState s = row_state(record, t.quantum_contrast, i);
    double e = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (j != i) e += t.probabilities(i, j);
    }
    // e_i = sum_{k in err} x_k / denom
    for (std::size_t k = 0; k <= d; ++k) {
      const double in_error = (k != i && k != d) ? 1.0 : 0.0;
      w[k] = (in_error - e) / s.denom;
    }
    t.error_sigmas[i] = std::sqrt(propagate(record, s, w));
  }
  return t;
}

Verdict classify(double mean_total_error, double mean_error_sigma,
                 double bound) {
  if (mean_total_error + mean_error_sigma < bound) return Verdict::kBelowByOneSigma;
  if (mean_total_error > bound) return Verdict::kAbove;
  return Verdict::kOverlapping;
}

ErrorSummary error_summary(const OutcomeTable &table) {
  const std::size_t d = static_cast<std::size_t>(table.dim);
  const auto &p = table.probabilities;
  if (d < 2 || p.rows() != d || p.cols() != d + 1) {
    throw ShapeError("outcome table shape does not match d");
  }
  ErrorSummary s;
  s.dim = table.dim;
  s.theta = table.theta;
  s.per_state_error.assign(d, 0.0);

  double var_sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double var_i = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      s.per_state_error[i] += p(i, j);
      if (table.sigmas.rows() == d) var_i += table.sigmas(i, j) * table.sigmas(i, j);
    }
    if (table.error_sigmas.size() == d) {
      var_i = table.error_sigmas[i] * table.error_sigmas[i];
    }
    var_sum += var_i;
  }
  double total = 0.0;
  for (double e : s.per_state_error) total += e;
  s.mean_total_error = total / static_cast<double>(d);
  s.mean_error_sigma = std::sqrt(var_sum) / static_cast<double>(d);
  s.mesd_bound = mesd_bound(table.dim, table.theta);
  s.verdict = classify(s.mean_total_error, s.mean_error_sigma, s.mesd_bound);
  return s;
}

}  // namespace usdq
