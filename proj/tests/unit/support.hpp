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

// Seeded generators for property tests. Every property test draws its cases
// from a fixed seed so a failure names a reproducible input.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "usdq/theory.hpp"

namespace usdq::testing {

class CaseGen {
 public:
  explicit CaseGen(std::uint64_t seed) : engine_(seed) {}

  int dim(int lo = 2, int hi = 14) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  /// theta in (0, theta_max(d)], staying clear of the degenerate end.
  double theta(int d, double lo_frac = 0.01) {
    const double hi = theta_max(d);
    return std::uniform_real_distribution<double>(lo_frac * hi, hi)(engine_);
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  long long count(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(engine_);
  }

  std::pair<int, double> point() {
    const int d = dim();
    return {d, theta(d)};
  }

 private:
  std::mt19937_64 engine_;
};

inline constexpr int kPropertyCases = 200;

}  // namespace usdq::testing
