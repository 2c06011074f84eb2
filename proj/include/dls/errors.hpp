// Copyright 2026 The dlsamp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DLS_ERRORS_HPP
#define DLS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace dls {

// Shape/size mismatches between states, parameters and models.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// State space (or block) too large to enumerate.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid numeric input: NaN log-ratios, non-positive probabilities,
// negative step sizes, and the like.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed parameter or config files.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ODE integration produced an invalid distribution; retry with smaller dt.
struct StepSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config validation failure carrying every violation found, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid config:";
    for (const auto& s : v) {
      out += "\n  - ";
      out += s;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace dls

#endif  // DLS_ERRORS_HPP
