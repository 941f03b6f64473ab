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

#include "usdq/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>

#include "usdq/errors.hpp"
#include "usdq/theory.hpp"

namespace usdq {
namespace {

constexpr double kRowSumTol = 1e-9;
// Poisson means beyond this cannot be represented as exact integer counts.
constexpr double kMaxMean = 9.0e15;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

enum class Channel : std::uint64_t { kCoincidence = 1, kSinglesA = 2, kSinglesB = 3 };

// Streams are keyed by (seed, point, channel, i, j); the point key folds in
// (d, theta) so different sweep points sharing a seed stay independent.
std::uint64_t point_key(const ExperimentConfig &config) {
  return splitmix64(static_cast<std::uint64_t>(config.dim)) ^
         std::bit_cast<std::uint64_t>(config.theta);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t point, Channel channel,
                       std::uint64_t i, std::uint64_t j) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ point);
  h = splitmix64(h ^ static_cast<std::uint64_t>(channel));
  h = splitmix64(h ^ (i << 32 | j));
  return std::mt19937_64(h);
}

long long draw_poisson(double mean, std::mt19937_64 &engine) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<long long> dist(mean);
  return dist(engine);
}

void check_mean(double mean, const char *what) {
  if (!std::isfinite(mean) || mean > kMaxMean) {
    throw ConfigError(std::string("expected ") + what +
                      " count exceeds the integer range");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dim < 2) throw ConfigError("dim must be >= 2");
  try {
    validate_angle(dim, theta);
  } catch (const DomainError &e) {
    throw ConfigError(e.what());
  }
  if (!(integration_time > 0.0)) throw ConfigError("integration_time must be > 0");
  if (!(coincidence_window > 0.0)) {
    throw ConfigError("coincidence_window must be > 0");
  }
  if (!(max_coincidence_rate >= 0.0)) {
    throw ConfigError("max_coincidence_rate must be >= 0");
  }
  if (!(spiral_bandwidth_sigma > 0.0)) {
    throw ConfigError("spiral_bandwidth_sigma must be > 0");
  }
  if (!(crosstalk_epsilon >= 0.0 && crosstalk_epsilon < 0.5)) {
    throw ConfigError("crosstalk_epsilon must lie in [0, 0.5)");
  }
  if (!(singles_rate_scale >= 0.0)) {
    throw ConfigError("singles_rate_scale must be >= 0");
  }
}

double epsilon_for_cell_error(int d, double cell_error) {
  if (d < 2) throw InvalidDimension("dimension must be >= 2");
  if (!(cell_error >= 0.0)) throw DomainError("cell error must be >= 0");
  return cell_error * (d + 1);
}

void CountsRecord::validate() const {
  const auto d = static_cast<std::size_t>(dim);
  if (dim < 2 || coincidences.rows() != d || coincidences.cols() != d + 1 ||
      singles_a.size() != d || singles_b.size() != d + 1) {
    throw ShapeError("counts record shape does not match d = " +
                     std::to_string(dim));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= d; ++j) {
      const long long c = coincidences(i, j);
      if (c < 0 || singles_a[i] < 0 || singles_b[j] < 0) {
        throw DomainError("negative count in record");
      }
      if (c > std::min(singles_a[i], singles_b[j])) {
        throw DomainError("coincidences exceed singles at cell (" +
                          std::to_string(i + 1) + ", " +
                          std::to_string(j + 1) + ")");
      }
    }
  }
}

RealMatrix ideal_detection_matrix(const StateFamily &family,
                                  const DiscriminationBasis &basis) {
  if (family.dim != basis.dim ||
      basis.vectors.rows() != static_cast<std::size_t>(family.dim) + 1) {
    throw ShapeError("family (d = " + std::to_string(family.dim) +
                     ") and basis (d = " + std::to_string(basis.dim) +
                     ") do not match");
  }
  const std::size_t d = static_cast<std::size_t>(family.dim);
  RealMatrix probs(d, d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    const Vector psi = embed(family, i);
    for (std::size_t j = 0; j <= d; ++j) {
      const double a = dot(basis.vectors.row(j), psi);
      probs(i, j) = a * a;
    }
  }
  return probs;
}

RealMatrix apply_noise(const RealMatrix &ideal, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 0.5)) {
    throw DomainError("crosstalk epsilon must lie in [0, 0.5)");
  }
  const double uniform = 1.0 / static_cast<double>(ideal.cols());
  RealMatrix out(ideal.rows(), ideal.cols());
  for (std::size_t i = 0; i < ideal.rows(); ++i) {
    double sum = 0.0;
    for (double p : ideal.row(i)) sum += p;
    if (std::abs(sum - 1.0) > kRowSumTol) {
      throw DomainError("row " + std::to_string(i + 1) +
                        " of the detection matrix does not sum to 1");
    }
    for (std::size_t j = 0; j < ideal.cols(); ++j) {
      out(i, j) = (1.0 - epsilon) * ideal(i, j) + epsilon * uniform;
    }
  }
  return out;
}

RealMatrix apply_noise(const RealMatrix &ideal, const ExperimentConfig &config) {
  return apply_noise(ideal, config.crosstalk_epsilon);
}

Vector spiral_weights(const OamMap &oam, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("spiral sigma must be > 0");
  Vector w;
  w.reserve(oam.state_ells.size());
  for (int ell : oam.state_ells) {
    w.push_back(std::exp(-static_cast<double>(ell) * ell / (2.0 * sigma * sigma)));
  }
  const double top = *std::max_element(w.begin(), w.end());
  for (auto &x : w) x /= top;
  return w;
}

Vector preparation_rates(const ExperimentConfig &config, const OamMap &oam) {
  const double sigma = config.spiral_bandwidth_sigma;
  if (config.equalize_rates) {
    int widest = std::abs(oam.ancilla_ell);
    for (int ell : oam.state_ells) widest = std::max(widest, std::abs(ell));
    const double w =
        std::exp(-static_cast<double>(widest) * widest / (2.0 * sigma * sigma));
    return Vector(oam.state_ells.size(), config.max_coincidence_rate * w);
  }
  Vector rates = spiral_weights(oam, sigma);
  for (auto &r : rates) r *= config.max_coincidence_rate;
  return rates;
}

ExpectedCounts expected_counts(const StateFamily &family,
                               const DiscriminationBasis &basis,
                               const ExperimentConfig &config) {
  config.validate();
  if (family.dim != config.dim || basis.dim != config.dim ||
      std::abs(family.theta - config.theta) > 1e-12 ||
      std::abs(basis.theta - config.theta) > 1e-12) {
    throw ConfigError("family, basis and config disagree on (d, theta)");
  }
  const std::size_t d = static_cast<std::size_t>(config.dim);
  const double T = config.integration_time;
  const RealMatrix probs =
      apply_noise(ideal_detection_matrix(family, basis), config);
  const Vector rates = preparation_rates(config, oam_map(config.dim));

  ExpectedCounts e;
  const double singles = config.singles_rate_scale * T;
  e.singles_a.assign(d, singles);
  e.singles_b.assign(d + 1, singles);
  // Uncorrelated streams overlap by chance at rate S_A S_B t_w.
  e.accidental = singles * singles * config.coincidence_window / T;
  e.correlated = RealMatrix(d, d + 1);
  e.coincidences = RealMatrix(d, d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= d; ++j) {
      e.correlated(i, j) = rates[i] * probs(i, j) * T;
      e.coincidences(i, j) = e.correlated(i, j) + e.accidental;
    }
  }
  return e;
}

CountsRecord run_experiment(const StateFamily &family,
                            const DiscriminationBasis &basis,
                            const ExperimentConfig &config) {
  const ExpectedCounts mean = expected_counts(family, basis, config);
  const std::size_t d = static_cast<std::size_t>(config.dim);

  CountsRecord rec;
  rec.dim = config.dim;
  rec.theta = config.theta;
  rec.integration_time = config.integration_time;
  rec.coincidence_window = config.coincidence_window;
  rec.seed = config.rng_seed;
  rec.config = config;
  rec.coincidences = CountMatrix(d, d + 1);
  rec.singles_a.resize(d);
  rec.singles_b.resize(d + 1);
  const std::uint64_t point = point_key(config);

  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= d; ++j) {
      check_mean(mean.coincidences(i, j), "coincidence");
      auto engine = stream(config.rng_seed, point, Channel::kCoincidence, i, j);
      rec.coincidences(i, j) = draw_poisson(mean.coincidences(i, j), engine);
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    check_mean(mean.singles_a[i], "singles");
    auto engine = stream(config.rng_seed, point, Channel::kSinglesA, i, 0);
    rec.singles_a[i] = draw_poisson(mean.singles_a[i], engine);
  }
  for (std::size_t j = 0; j <= d; ++j) {
    check_mean(mean.singles_b[j], "singles");
    auto engine = stream(config.rng_seed, point, Channel::kSinglesB, 0, j);
    rec.singles_b[j] = draw_poisson(mean.singles_b[j], engine);
  }
  // A detector never records fewer singles than the coincidences it took
  // part in.
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= d; ++j) {
      rec.singles_a[i] = std::max(rec.singles_a[i], rec.coincidences(i, j));
      rec.singles_b[j] = std::max(rec.singles_b[j], rec.coincidences(i, j));
    }
  }
  return rec;
}

CountsRecord run_experiment(const ExperimentConfig &config) {
  config.validate();
  const StateFamily family = build_state_family(config.dim, config.theta);
  return run_experiment(family, build_basis(family), config);
}

}  // namespace usdq
