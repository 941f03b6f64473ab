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

#include "usdq/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

#include "usdq/errors.hpp"
#include "usdq/io.hpp"
#include "usdq/states.hpp"

namespace usdq {
namespace {

constexpr double kMaxRoundingSlack = 1e-9;

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("not an integer: '" + std::string(s) + "'");
  }
  return value;
}

double parse_double(std::string_view s) {
  const std::string copy(s);
  char *end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw ConfigError("not a number: '" + copy + "'");
  }
  return value;
}

std::string fmt(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

SweepRow aggregate_row(const std::vector<SweepRow> &reps) {
  SweepRow agg = reps.front();
  agg.aggregate = true;
  agg.table.reset();
  agg.note.clear();
  double mean = 0.0;
  double var = 0.0;
  int n = 0;
  for (const auto &r : reps) {
    if (!r.summary) continue;
    mean += r.summary->mean_total_error;
    var += r.summary->mean_error_sigma * r.summary->mean_error_sigma;
    ++n;
  }
  if (n == 0) {
    agg.summary.reset();
    agg.note = "no repetition produced a usable table";
    return agg;
  }
  ErrorSummary s;
  s.dim = agg.theory.dim;
  s.theta = agg.theory.theta;
  s.mean_total_error = mean / n;
  s.mean_error_sigma = std::sqrt(var) / n;
  s.mesd_bound = agg.theory.mesd_bound;
  s.verdict = classify(s.mean_total_error, s.mean_error_sigma, s.mesd_bound);
  agg.summary = s;
  return agg;
}

SweepRow run_point(const SweepSpec &spec, const SweepPoint &point,
                   const StateFamily &family, const DiscriminationBasis &basis,
                   int repetition) {
  SweepRow row;
  row.theory = theory_point(point.dim, point.theta);
  row.has_run = true;
  const ExperimentConfig config = point_config(spec, point, repetition);
  row.seed = config.rng_seed;
  const CountsRecord record = run_experiment(family, basis, config);
  try {
    OutcomeTable table = analyze(record);
    row.summary = error_summary(table);
    row.table = std::move(table);
  } catch (const DegenerateRow &e) {
    row.note = e.what();
  }
  return row;
}

}  // namespace

std::string_view to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::kThetaSweep:
      return "theta_sweep";
    case SweepMode::kDimensionSweep:
      return "dimension_sweep";
    case SweepMode::kSinglePoint:
      return "single_point";
  }
  return "unknown";
}

SweepMode parse_sweep_mode(std::string_view text) {
  if (text == "theta_sweep") return SweepMode::kThetaSweep;
  if (text == "dimension_sweep") return SweepMode::kDimensionSweep;
  if (text == "single_point") return SweepMode::kSinglePoint;
  throw ConfigError("unknown sweep mode '" + std::string(text) + "'");
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  throw ConfigError("unknown output format '" + std::string(text) + "'");
}

void SweepSpec::validate() const {
  if (dims.empty()) throw ConfigError("at least one dimension is required");
  for (int d : dims) {
    if (d < 2) throw ConfigError("dimension must be >= 2, got " + std::to_string(d));
  }
  const bool has_thetas = !thetas.empty() || theta_grid.has_value();
  if (has_thetas == fixed_overlap.has_value()) {
    throw ConfigError("give exactly one of a theta list/grid or a fixed overlap");
  }
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (cell_error && !(*cell_error >= 0.0)) {
    throw ConfigError("cell error must be >= 0");
  }
  if (mode == SweepMode::kSinglePoint) {
    const std::size_t n_theta =
        theta_grid ? parse_theta_grid_deg(*theta_grid, dims.front()).size()
                   : std::max<std::size_t>(thetas.size(), 1);
    if (dims.size() != 1 || n_theta != 1) {
      throw ConfigError("single_point needs exactly one dimension and one angle");
    }
  }
  if (mode == SweepMode::kThetaSweep && fixed_overlap) {
    throw ConfigError("theta_sweep needs a theta list or grid");
  }
}

std::vector<int> parse_dims(std::string_view text) {
  std::vector<int> dims;
  for (auto part : split(text, ',')) {
    if (part.empty()) continue;
    const auto dash = part.find('-', 1);
    if (dash == std::string_view::npos) {
      dims.push_back(parse_int(part));
    } else {
      const int lo = parse_int(trim(part.substr(0, dash)));
      const int hi = parse_int(trim(part.substr(dash + 1)));
      if (hi < lo) throw ConfigError("empty dimension range '" + std::string(part) + "'");
      for (int d = lo; d <= hi; ++d) dims.push_back(d);
    }
  }
  if (dims.empty()) throw ConfigError("no dimensions in '" + std::string(text) + "'");
  return dims;
}

std::vector<double> parse_theta_grid_deg(std::string_view text, int d) {
  const auto angle = [d](std::string_view part) {
    return part == "max" ? rad_to_deg(theta_max(d)) : parse_double(part);
  };
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
      throw ConfigError("theta grid must be start:stop:count, got '" +
                        std::string(text) + "'");
    }
    const double start = parse_double(parts[0]);
    const double stop = angle(parts[1]);
    const int count = parse_int(parts[2]);
    if (count < 1) throw ConfigError("theta grid count must be >= 1");
    for (int k = 0; k < count; ++k) {
      out.push_back(count == 1 ? start
                               : start + (stop - start) * k / (count - 1));
    }
    // Land exactly on theta_max when it is the requested endpoint.
    if (parts[1] == "max" && count > 1) out.back() = stop;
  } else {
    for (auto part : split(text, ',')) {
      if (!part.empty()) out.push_back(angle(part));
    }
  }
  if (out.empty()) throw ConfigError("empty theta grid");
  return out;
}

std::vector<SweepPoint> resolve_points(const SweepSpec &spec) {
  spec.validate();
  std::vector<SweepPoint> points;
  for (int d : spec.dims) {
    if (spec.fixed_overlap) {
      points.push_back({d, theta_for_overlap(d, *spec.fixed_overlap)});
      continue;
    }
    std::vector<double> thetas = spec.thetas;
    if (spec.theta_grid) {
      thetas.clear();
      for (double deg : parse_theta_grid_deg(*spec.theta_grid, d)) {
        // "max" survives the trip through degrees only up to rounding.
        double t = deg_to_rad(deg);
        if (t > theta_max(d) && t - theta_max(d) < kMaxRoundingSlack) t = theta_max(d);
        thetas.push_back(t);
      }
    }
    for (double t : thetas) {
      validate_angle(d, t);
      points.push_back({d, t});
    }
  }
  std::stable_sort(points.begin(), points.end(), [](const auto &a, const auto &b) {
    return a.dim != b.dim ? a.dim < b.dim : a.theta < b.theta;
  });
  return points;
}

ExperimentConfig point_config(const SweepSpec &spec, const SweepPoint &point,
                              int repetition) {
  ExperimentConfig c = spec.config;
  c.dim = point.dim;
  c.theta = point.theta;
  c.rng_seed = spec.config.rng_seed + static_cast<std::uint64_t>(repetition);
  if (spec.cell_error) {
    c.crosstalk_epsilon = epsilon_for_cell_error(point.dim, *spec.cell_error);
  }
  c.validate();
  return c;
}

std::vector<SweepRow> theory_sweep(const SweepSpec &spec) {
  std::vector<SweepRow> rows;
  for (const auto &p : resolve_points(spec)) {
    SweepRow r;
    r.theory = theory_point(p.dim, p.theta);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec) {
  const auto points = resolve_points(spec);
  const int reps = spec.repetitions;

  struct Job {
    std::size_t point;
    int rep;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (int r = 0; r < reps; ++r) jobs.push_back({p, r});
  }

  // Constructions are shared by every repetition of a point.
  std::vector<StateFamily> families;
  std::vector<DiscriminationBasis> bases;
  for (const auto &p : points) {
    families.push_back(build_state_family(p.dim, p.theta));
    bases.push_back(build_basis(families.back()));
  }
  for (const auto &p : points) {
    for (int r = 0; r < reps; ++r) point_config(spec, p, r);
  }

  std::vector<SweepRow> results(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const Job &job = jobs[k];
      try {
        results[k] = run_point(spec, points[job.point], families[job.point],
                               bases[job.point], job.rep);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  const int n_threads =
      std::max(1, std::min<int>(spec.jobs, static_cast<int>(jobs.size())));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto &f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<SweepRow> rows;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto first = results.begin() + static_cast<std::ptrdiff_t>(p * reps);
    std::vector<SweepRow> group(first, first + reps);
    rows.insert(rows.end(), group.begin(), group.end());
    if (reps > 1) rows.push_back(aggregate_row(group));
  }
  return rows;
}

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
  out << kCsvSchemaLine << "\n" << kCsvHeader << "\n";
  for (const auto &r : rows) {
    const auto &t = r.theory;
    out << t.dim << ',' << fmt(rad_to_deg(t.theta)) << ',' << fmt(t.overlap) << ','
        << fmt(t.p_suc) << ',' << fmt(t.p_inc) << ',' << fmt(t.mesd_bound) << ',';
    if (!r.has_run) {
      out << ",,,\n";
      continue;
    }
    if (r.summary) {
      out << fmt(r.summary->mean_total_error) << ','
          << fmt(r.summary->mean_error_sigma) << ',' << to_string(r.summary->verdict);
    } else {
      out << "nan,nan,degenerate";
    }
    out << ',';
    if (r.aggregate) {
      out << "aggregate";
    } else {
      out << r.seed;
    }
    out << "\n";
  }
}

nlohmann::json sweep_json(const std::vector<SweepRow> &rows) {
  using nlohmann::json;
  json arr = json::array();
  for (const auto &r : rows) {
    const auto &t = r.theory;
    json j{{"dim", t.dim},
           {"theta_deg", rad_to_deg(t.theta)},
           {"overlap", t.overlap},
           {"p_suc_theory", t.p_suc},
           {"p_inc_theory", t.p_inc},
           {"mesd_bound", t.mesd_bound}};
    if (r.has_run) {
      if (r.summary) {
        j["mean_total_error"] = r.summary->mean_total_error;
        j["mean_error_sigma"] = r.summary->mean_error_sigma;
        j["verdict"] = std::string(to_string(r.summary->verdict));
        if (!r.aggregate) j["per_state_error"] = r.summary->per_state_error;
      } else {
        j["mean_total_error"] = nullptr;
        j["mean_error_sigma"] = nullptr;
        j["verdict"] = "degenerate";
      }
      j["seed"] = r.aggregate ? json("aggregate") : json(r.seed);
      if (r.table) j["table"] = to_json(*r.table);
      if (!r.note.empty()) j["note"] = r.note;
    }
    arr.push_back(std::move(j));
  }
  return json{{"schema", "usdq-sweep v1"}, {"rows", arr}};
}

SweepSpec spec_from_json(const nlohmann::json &j, SweepSpec s) {
  if (j.contains("mode")) s.mode = parse_sweep_mode(j["mode"].get<std::string>());
  if (j.contains("dims")) {
    const auto &d = j["dims"];
    s.dims = d.is_string() ? parse_dims(d.get<std::string>()) : d.get<std::vector<int>>();
  }
  if (j.contains("dim")) s.dims = {j["dim"].get<int>()};
  if (j.contains("theta_deg")) {
    const auto &t = j["theta_deg"];
    s.thetas.clear();
    if (t.is_array()) {
      for (double deg : t.get<std::vector<double>>()) s.thetas.push_back(deg_to_rad(deg));
    } else {
      s.thetas.push_back(deg_to_rad(t.get<double>()));
    }
  }
  if (j.contains("theta_grid")) s.theta_grid = j["theta_grid"].get<std::string>();
  if (j.contains("overlap")) s.fixed_overlap = j["overlap"].get<double>();
  if (j.contains("reps")) s.repetitions = j["reps"].get<int>();
  if (j.contains("cell_error")) s.cell_error = j["cell_error"].get<double>();
  if (j.contains("format")) s.format = parse_format(j["format"].get<std::string>());
  if (j.contains("out")) s.output_path = j["out"].get<std::string>();
  if (j.contains("jobs")) s.jobs = j["jobs"].get<int>();
  if (j.contains("experiment")) s.config = config_from_json(j["experiment"], s.config);
  // Flat keys mirror the CLI flags.
  if (j.contains("epsilon")) s.config.crosstalk_epsilon = j["epsilon"].get<double>();
  if (j.contains("sigma_spiral")) {
    s.config.spiral_bandwidth_sigma = j["sigma_spiral"].get<double>();
  }
  if (j.contains("singles_rate")) s.config.singles_rate_scale = j["singles_rate"].get<double>();
  if (j.contains("equalize_rates")) s.config.equalize_rates = j["equalize_rates"].get<bool>();
  if (j.contains("seed")) s.config.rng_seed = j["seed"].get<std::uint64_t>();
  return s;
}

}  // namespace usdq
