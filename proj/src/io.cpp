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

#include "usdq/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "usdq/errors.hpp"

namespace usdq {
namespace {

using nlohmann::json;

void write_rows(std::ostringstream &out, const RealMatrix &m,
                const std::string &indent) {
  out << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << (r ? ",\n" : "\n") << indent << "  [";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out << (c ? ", " : "") << format_double(m(r, c));
    }
    out << "]";
  }
  out << "\n" << indent << "]";
}

std::string vectors_object(int dim, double theta, const RealMatrix &vectors,
                           const std::string &indent) {
  std::ostringstream out;
  out << "{\n"
      << indent << "  \"dim\": " << dim << ",\n"
      << indent << "  \"theta_rad\": " << format_double(theta) << ",\n"
      << indent << "  \"vectors\": ";
  write_rows(out, vectors, indent + "  ");
  out << "\n" << indent << "}";
  return out.str();
}

RealMatrix matrix_from_json(const json &j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) {
    throw FormatError("expected " + std::to_string(rows) + " rows");
  }
  RealMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw FormatError("row " + std::to_string(r) + " must have " +
                        std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

template <typename T>
void read_opt(const json &j, const char *key, T &dst) {
  if (j.contains(key) && !j[key].is_null()) dst = j[key].get<T>();
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  // "-0" would parse back as the integer 0 and lose the sign.
  if (x == 0.0 && std::signbit(x)) return "-0.0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_json_text(const StateFamily &family) {
  return vectors_object(family.dim, family.theta, family.vectors, "") + "\n";
}

std::string to_json_text(const DiscriminationBasis &basis) {
  return vectors_object(basis.dim, basis.theta, basis.vectors, "") + "\n";
}

std::string build_document(const StateFamily &family,
                           const DiscriminationBasis &basis, const OamMap &oam,
                           const BasisResiduals &residuals) {
  std::ostringstream out;
  out << "{\n  \"family\": "
      << vectors_object(family.dim, family.theta, family.vectors, "  ")
      << ",\n  \"basis\": "
      << vectors_object(basis.dim, basis.theta, basis.vectors, "  ")
      << ",\n  \"oam\": {\n    \"state_ells\": [";
  for (std::size_t k = 0; k < oam.state_ells.size(); ++k) {
    out << (k ? ", " : "") << oam.state_ells[k];
  }
  out << "],\n    \"ancilla_ell\": " << oam.ancilla_ell << "\n  },\n"
      << "  \"residuals\": {\n"
      << "    \"orthonormality\": " << format_double(residuals.orthonormality) << ",\n"
      << "    \"completeness\": " << format_double(residuals.completeness) << ",\n"
      << "    \"zero_error\": " << format_double(residuals.zero_error) << ",\n"
      << "    \"closure\": " << format_double(residuals.closure) << ",\n"
      << "    \"symmetry\": " << format_double(residuals.symmetry) << "\n"
      << "  }\n}\n";
  return out.str();
}

StateFamily state_family_from_json(const json &j) {
  StateFamily f;
  f.dim = j.at("dim").get<int>();
  f.theta = j.at("theta_rad").get<double>();
  if (f.dim < 2) throw FormatError("dim must be >= 2");
  f.vectors = matrix_from_json(j.at("vectors"), f.dim, f.dim);
  return f;
}

DiscriminationBasis basis_from_json(const json &j) {
  DiscriminationBasis b;
  b.dim = j.at("dim").get<int>();
  b.theta = j.at("theta_rad").get<double>();
  if (b.dim < 2) throw FormatError("dim must be >= 2");
  b.vectors = matrix_from_json(j.at("vectors"), b.dim + 1, b.dim + 1);
  return b;
}

json to_json(const ExperimentConfig &c) {
  return json{{"dim", c.dim},
              {"theta_rad", c.theta},
              {"integration_time_s", c.integration_time},
              {"coincidence_window_s", c.coincidence_window},
              {"max_coincidence_rate_hz", c.max_coincidence_rate},
              {"spiral_bandwidth_sigma", c.spiral_bandwidth_sigma},
              {"crosstalk_epsilon", c.crosstalk_epsilon},
              {"singles_rate_scale_hz", c.singles_rate_scale},
              {"equalize_rates", c.equalize_rates},
              {"rng_seed", c.rng_seed}};
}

ExperimentConfig config_from_json(const json &j, ExperimentConfig c) {
  read_opt(j, "dim", c.dim);
  read_opt(j, "theta_rad", c.theta);
  read_opt(j, "integration_time_s", c.integration_time);
  read_opt(j, "coincidence_window_s", c.coincidence_window);
  read_opt(j, "max_coincidence_rate_hz", c.max_coincidence_rate);
  read_opt(j, "spiral_bandwidth_sigma", c.spiral_bandwidth_sigma);
  read_opt(j, "crosstalk_epsilon", c.crosstalk_epsilon);
  read_opt(j, "singles_rate_scale_hz", c.singles_rate_scale);
  read_opt(j, "equalize_rates", c.equalize_rates);
  read_opt(j, "rng_seed", c.rng_seed);
  return c;
}

json to_json(const CountsRecord &r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.coincidences.rows(); ++i) {
    const auto row = r.coincidences.row(i);
    rows.push_back(std::vector<long long>(row.begin(), row.end()));
  }
  return json{{"dim", r.dim},
              {"theta_rad", r.theta},
              {"integration_time_s", r.integration_time},
              {"coincidence_window_s", r.coincidence_window},
              {"coincidences", rows},
              {"singles_a", r.singles_a},
              {"singles_b", r.singles_b},
              {"seed", r.seed},
              {"config", to_json(r.config)}};
}

CountsRecord counts_record_from_json(const json &j) {
  CountsRecord r;
  r.dim = j.at("dim").get<int>();
  r.theta = j.at("theta_rad").get<double>();
  r.integration_time = j.at("integration_time_s").get<double>();
  r.coincidence_window = j.value("coincidence_window_s", 25e-9);
  r.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("config")) r.config = config_from_json(j.at("config"));
  if (r.dim < 2) throw FormatError("dim must be >= 2");
  const auto d = static_cast<std::size_t>(r.dim);
  const json &rows = j.at("coincidences");
  if (!rows.is_array() || rows.size() != d) {
    throw FormatError("coincidences must have d rows");
  }
  r.coincidences = CountMatrix(d, d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (!rows[i].is_array() || rows[i].size() != d + 1) {
      throw FormatError("coincidence rows must have d+1 entries");
    }
    for (std::size_t k = 0; k <= d; ++k) r.coincidences(i, k) = rows[i][k].get<long long>();
  }
  r.singles_a = j.at("singles_a").get<std::vector<long long>>();
  r.singles_b = j.at("singles_b").get<std::vector<long long>>();
  r.validate();
  return r;
}

json matrix_json(const RealMatrix &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (double x : m.row(i)) row.push_back(number_or_null(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const OutcomeTable &t) {
  json err = json::array();
  for (double s : t.error_sigmas) err.push_back(number_or_null(s));
  return json{{"dim", t.dim},
              {"theta_rad", t.theta},
              {"probabilities", matrix_json(t.probabilities)},
              {"sigmas", matrix_json(t.sigmas)},
              {"quantum_contrast", matrix_json(t.quantum_contrast)},
              {"error_sigmas", err}};
}

json to_json(const ErrorSummary &s) {
  json per = json::array();
  for (double e : s.per_state_error) per.push_back(number_or_null(e));
  return json{{"dim", s.dim},
              {"theta_rad", s.theta},
              {"per_state_error", per},
              {"mean_total_error", number_or_null(s.mean_total_error)},
              {"mean_error_sigma", number_or_null(s.mean_error_sigma)},
              {"mesd_bound", number_or_null(s.mesd_bound)},
              {"verdict", std::string(to_string(s.verdict))}};
}

}  // namespace usdq
