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

#include <stdexcept>
#include <string>
#include <string_view>

namespace usdq {

/// Base class for every error raised by the toolkit. `kind()` is a stable
/// machine-readable tag; the CLI reports it in its error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string_view kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  std::string_view kind() const noexcept { return kind_; }

 private:
  std::string_view kind_;
};

#define USDQ_DEFINE_ERROR(Name, tag)                                  \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string &message) : Error(tag, message) {} \
  }

USDQ_DEFINE_ERROR(InvalidDimension, "invalid_dimension");
USDQ_DEFINE_ERROR(DomainError, "domain_error");
USDQ_DEFINE_ERROR(DegenerateFamily, "degenerate_family");
USDQ_DEFINE_ERROR(LiftabilityError, "liftability_error");
USDQ_DEFINE_ERROR(ShapeError, "shape_error");
USDQ_DEFINE_ERROR(ConfigError, "configuration_error");
USDQ_DEFINE_ERROR(InsufficientData, "insufficient_data");
USDQ_DEFINE_ERROR(DegenerateRow, "degenerate_row");
USDQ_DEFINE_ERROR(UnsupportedConfiguration, "unsupported_configuration");
USDQ_DEFINE_ERROR(FormatError, "format_error");

#undef USDQ_DEFINE_ERROR

}  // namespace usdq
