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

// usdq: build discrimination bases, tabulate theory curves and run seeded
// virtual experiments.
//
//   usdq build  --dim 3 --theta-deg 33
//   usdq theory --dims 3 --theta-grid 1:max:60
//   usdq run    --dims 2-14 --overlap 0.70710678 --cell-error 0.01 --reps 25
//   usdq check  --dims 2-14 --theta-grid 1:max:12
//
// Output goes to --out, else to $USDQ_OUTPUT_DIR/<default name>, else stdout.
// Failures print {"error": kind, "message": ...} on stderr and exit nonzero.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "usdq/errors.hpp"
#include "usdq/io.hpp"
#include "usdq/states.hpp"
#include "usdq/sweep.hpp"
#include "usdq/theory.hpp"

namespace {

using nlohmann::json;

constexpr const char *kOutputDirEnv = "USDQ_OUTPUT_DIR";
constexpr double kCheckTol = 1e-10;

struct Options {
  std::optional<int> dim;
  std::optional<double> theta_deg;
  std::optional<double> overlap;
  std::optional<std::string> dims;
  std::optional<std::string> theta_grid;
  std::optional<double> epsilon;
  std::optional<double> cell_error;
  std::optional<double> sigma_spiral;
  std::optional<double> singles_rate;
  bool equalize_rates = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> mode;
  std::optional<std::string> config_path;
  std::optional<int> jobs;
};

void report_error(std::string_view kind, const std::string &message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

void warn(const json &j) { std::cerr << json{{"warning", j}}.dump() << "\n"; }

std::string format_deg(double deg) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", deg);
  return buf;
}

// Explicit --out wins, then the environment directory, then stdout ("").
std::string output_target(const Options &o, const std::string &default_name) {
  if (o.out) return *o.out;
  if (const char *dir = std::getenv(kOutputDirEnv); dir && *dir) {
    return (std::filesystem::path(dir) / default_name).string();
  }
  return {};
}

void emit(const std::string &target, const std::string &text) {
  if (target.empty()) {
    std::cout << text;
    return;
  }
  const std::filesystem::path path(target);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw usdq::ConfigError("cannot open '" + target + "' for writing");
  f << text;
  if (!f.flush()) throw usdq::ConfigError("write to '" + target + "' failed");
}

usdq::SweepSpec make_spec(const Options &o) {
  usdq::SweepSpec s;
  bool mode_from_config = false;
  if (o.config_path) {
    std::ifstream f(*o.config_path);
    if (!f) throw usdq::ConfigError("cannot read config '" + *o.config_path + "'");
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception &e) {
      throw usdq::FormatError(e.what());
    }
    s = usdq::spec_from_json(j, s);
    mode_from_config = j.contains("mode");
  }
  if (o.dim && o.dims) throw usdq::ConfigError("give --dim or --dims, not both");
  if (o.dim) s.dims = {*o.dim};
  if (o.dims) s.dims = usdq::parse_dims(*o.dims);
  if (o.theta_deg) {
    s.thetas = {usdq::deg_to_rad(*o.theta_deg)};
    s.theta_grid.reset();
    s.fixed_overlap.reset();
  }
  if (o.theta_grid) {
    s.theta_grid = *o.theta_grid;
    s.thetas.clear();
    s.fixed_overlap.reset();
  }
  if (o.overlap) {
    s.fixed_overlap = *o.overlap;
    s.thetas.clear();
    s.theta_grid.reset();
  }
  if (o.epsilon) s.config.crosstalk_epsilon = *o.epsilon;
  if (o.cell_error) s.cell_error = *o.cell_error;
  if (o.sigma_spiral) s.config.spiral_bandwidth_sigma = *o.sigma_spiral;
  if (o.singles_rate) s.config.singles_rate_scale = *o.singles_rate;
  if (o.equalize_rates) s.config.equalize_rates = true;
  if (o.seed) s.config.rng_seed = *o.seed;
  if (o.reps) s.repetitions = *o.reps;
  if (o.format) s.format = usdq::parse_format(*o.format);
  if (o.jobs) s.jobs = *o.jobs;
  if (o.mode) {
    s.mode = usdq::parse_sweep_mode(*o.mode);
  } else if (!mode_from_config) {
    const bool one_angle = !s.theta_grid && s.thetas.size() <= 1;
    if (s.dims.size() == 1 && one_angle) {
      s.mode = usdq::SweepMode::kSinglePoint;
    } else if (s.fixed_overlap || s.dims.size() > 1) {
      s.mode = usdq::SweepMode::kDimensionSweep;
    } else {
      s.mode = usdq::SweepMode::kThetaSweep;
    }
  }
  if (s.cell_error && o.epsilon) {
    throw usdq::ConfigError("give --epsilon or --cell-error, not both");
  }
  s.validate();
  return s;
}

std::string render(const usdq::SweepSpec &spec, const std::vector<usdq::SweepRow> &rows) {
  if (spec.format == usdq::OutputFormat::kJson) return usdq::sweep_json(rows).dump(2) + "\n";
  std::ostringstream out;
  usdq::write_csv(out, rows);
  return out.str();
}

int cmd_build(const Options &o) {
  if (!o.dim || !o.theta_deg) throw usdq::ConfigError("build needs --dim and --theta-deg");
  const int d = *o.dim;
  if (d < 2) throw usdq::InvalidDimension("dimension must be >= 2, got " + std::to_string(d));
  const double theta = usdq::deg_to_rad(*o.theta_deg);
  usdq::validate_angle(d, theta);
  const auto family = usdq::build_state_family(d, theta);
  const auto basis = usdq::build_basis(family);
  const auto oam = usdq::oam_map(d);
  const auto res = usdq::basis_residuals(family, basis);
  const std::string name =
      "basis_d" + std::to_string(d) + "_theta" + format_deg(*o.theta_deg) + ".json";
  const std::string target = output_target(o, name);
  emit(target, usdq::build_document(family, basis, oam, res));
  std::ostream &log = target.empty() ? std::cerr : std::cout;
  log << "orthonormality_residual " << usdq::format_double(res.orthonormality) << "\n"
      << "zero_error_residual " << usdq::format_double(res.zero_error) << "\n";
  if (!target.empty()) log << "wrote " << target << "\n";
  return 0;
}

int cmd_theory(const Options &o) {
  const auto spec = make_spec(o);
  const auto rows = usdq::theory_sweep(spec);
  const char *ext = spec.format == usdq::OutputFormat::kJson ? ".json" : ".csv";
  emit(output_target(o, std::string("theory") + ext), render(spec, rows));
  return 0;
}

int cmd_run(const Options &o) {
  const auto spec = make_spec(o);
  const auto rows = usdq::run_sweep(spec);
  for (const auto &r : rows) {
    if (r.has_run && !r.aggregate && !r.summary) {
      warn({{"kind", "degenerate_row"},
            {"dim", r.theory.dim},
            {"theta_deg", usdq::rad_to_deg(r.theory.theta)},
            {"seed", r.seed},
            {"message", r.note}});
    }
  }
  const char *ext = spec.format == usdq::OutputFormat::kJson ? ".json" : ".csv";
  emit(output_target(o, std::string("run") + ext), render(spec, rows));
  return 0;
}

int cmd_check(const Options &o) {
  Options opts = o;
  if (!opts.dims && !opts.dim) opts.dims = "2-14";
  if (!opts.theta_deg && !opts.theta_grid && !opts.overlap) opts.theta_grid = "1:max:12";
  const auto spec = make_spec(opts);
  bool ok = true;
  std::ostringstream out;
  out << "dim,theta_deg,orthonormality,completeness,zero_error,closure,symmetry,status\n";
  for (const auto &p : usdq::resolve_points(spec)) {
    const auto family = usdq::build_state_family(p.dim, p.theta);
    const auto r = usdq::basis_residuals(family, usdq::build_basis(family));
    const bool pass = r.orthonormality < kCheckTol && r.completeness < kCheckTol &&
                      r.zero_error < kCheckTol && r.closure < kCheckTol &&
                      r.symmetry < kCheckTol;
    ok = ok && pass;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.3e,%.3e,%.3e,%.3e,%.3e,%s\n", p.dim,
                  usdq::rad_to_deg(p.theta), r.orthonormality, r.completeness,
                  r.zero_error, r.closure, r.symmetry, pass ? "ok" : "FAIL");
    out << buf;
  }
  std::cout << out.str();
  if (!ok) {
    report_error("invariant_violation", "residuals above " + format_deg(kCheckTol));
    return 1;
  }
  return 0;
}

void add_point_flags(CLI::App *cmd, Options &o) {
  cmd->add_option("--dim", o.dim, "Dimension d");
  cmd->add_option("--theta-deg", o.theta_deg, "State angle in degrees");
  cmd->add_option("--overlap", o.overlap, "Fixed overlap; theta chosen per d");
  cmd->add_option("--dims", o.dims, "Dimensions, e.g. 2-14 or 2,3,7");
  cmd->add_option("--theta-grid", o.theta_grid,
                  "Angles in degrees: start:stop:count (stop may be 'max') or a list");
  cmd->add_option("--mode", o.mode, "theta_sweep | dimension_sweep | single_point");
  cmd->add_option("--config", o.config_path, "JSON sweep config; flags override it");
  cmd->add_option("--out", o.out, "Output file");
  cmd->add_option("--format", o.format, "csv | json");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Unambiguous discrimination of symmetric qudit states"};
  app.require_subcommand(1);
  Options o;

  auto *build = app.add_subcommand("build", "Build a state family and its measurement basis");
  build->add_option("--dim", o.dim, "Dimension d")->required();
  build->add_option("--theta-deg", o.theta_deg, "State angle in degrees")->required();
  build->add_option("--out", o.out, "Output JSON file");

  auto *theory = app.add_subcommand("theory", "Tabulate theoretical probabilities");
  add_point_flags(theory, o);

  auto *run = app.add_subcommand("run", "Run seeded virtual experiments");
  add_point_flags(run, o);
  run->add_option("--epsilon", o.epsilon, "Crosstalk epsilon");
  run->add_option("--cell-error", o.cell_error,
                  "Probability per off-target cell; sets epsilon for each d");
  run->add_option("--sigma-spiral", o.sigma_spiral, "Spiral bandwidth width");
  run->add_option("--singles-rate", o.singles_rate, "Singles rate per arm in Hz");
  run->add_flag("--equalize-rates", o.equalize_rates,
                "Run every preparation at the weakest mode's rate");
  run->add_option("--seed", o.seed, "Base RNG seed");
  run->add_option("--reps", o.reps, "Repetitions per point (seeds seed, seed+1, ...)");
  run->add_option("--jobs", o.jobs, "Worker threads");

  auto *check = app.add_subcommand("check", "Print basis residuals over a grid");
  add_point_flags(check, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    report_error("usage", e.what());
    return 2;
  }

  try {
    if (*build) return cmd_build(o);
    if (*theory) return cmd_theory(o);
    if (*run) return cmd_run(o);
    if (*check) return cmd_check(o);
  } catch (const usdq::Error &e) {
    report_error(e.kind(), e.what());
    return 1;
  } catch (const std::exception &e) {
    report_error("internal_error", e.what());
    return 1;
  }
  return 1;
}
