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

// Sweeps over (d, theta) for the command-line frontend: theory curves and
// seeded virtual-experiment runs, written as CSV or JSON.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "usdq/analysis.hpp"
#include "usdq/experiment.hpp"
#include "usdq/theory.hpp"

namespace usdq {

enum class SweepMode { kThetaSweep, kDimensionSweep, kSinglePoint };
enum class OutputFormat { kCsv, kJson };

std::string_view to_string(SweepMode mode);
SweepMode parse_sweep_mode(std::string_view text);
OutputFormat parse_format(std::string_view text);

struct SweepSpec {
  SweepMode mode = SweepMode::kSinglePoint;
  std::vector<int> dims;
  std::vector<double> thetas;  // radians
  std::optional<double> fixed_overlap;
  /// Per-dimension theta grid "start:stop:count" in degrees, stop may be
  /// "max"; takes precedence over `thetas` when set.
  std::optional<std::string> theta_grid;
  int repetitions = 1;
  ExperimentConfig config;
  /// When set, overrides config.crosstalk_epsilon per dimension so each
  /// off-target cell carries this probability.
  std::optional<double> cell_error;
  std::string output_path;
  OutputFormat format = OutputFormat::kCsv;
  int jobs = 1;

  /// Throws ConfigError when the spec is inconsistent.
  void validate() const;
};

struct SweepPoint {
  int dim = 0;
  double theta = 0.0;
};

/// Points ordered by (d, theta).
std::vector<SweepPoint> resolve_points(const SweepSpec &spec);

/// "2-14", "2,3,7" or a mix ("2-5,8").
std::vector<int> parse_dims(std::string_view text);

/// Degrees. "a:b:n" gives n evenly spaced points from a to b inclusive;
/// otherwise a comma-separated list. "max" stands for theta_max(d) as b or
/// as a list entry.
std::vector<double> parse_theta_grid_deg(std::string_view text, int d);

struct SweepRow {
  TheoryPoint theory;
  /// Empty for theory rows and for runs whose analysis found a row without
  /// correlated signal.
  std::optional<ErrorSummary> summary;
  std::optional<OutcomeTable> table;
  std::uint64_t seed = 0;
  bool has_run = false;
  bool aggregate = false;
  std::string note;
};

std::vector<SweepRow> theory_sweep(const SweepSpec &spec);

/// Runs every (point, repetition) with seed config.rng_seed + repetition.
/// Rows are ordered by (d, theta, repetition); when repetitions > 1 each
/// point is followed by an aggregate row.
std::vector<SweepRow> run_sweep(const SweepSpec &spec);

/// Config for one point, with the per-dimension crosstalk applied.
ExperimentConfig point_config(const SweepSpec &spec, const SweepPoint &point,
                              int repetition);

inline constexpr const char *kCsvSchemaLine = "# usdq-sweep-csv v1";
inline constexpr const char *kCsvHeader =
    "dim,theta_deg,overlap,p_suc_theory,p_inc_theory,mesd_bound,"
    "mean_total_error,mean_error_sigma,verdict,seed";

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows);
nlohmann::json sweep_json(const std::vector<SweepRow> &rows);

/// Sweep settings from a JSON config document; flags applied afterwards by
/// the caller win.
SweepSpec spec_from_json(const nlohmann::json &j, SweepSpec base = {});

}  // namespace usdq
