// Copyright 2026 The qskyrmion Authors
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

#ifndef QSKY_SRC_CLI_CONFIG_HPP
#define QSKY_SRC_CLI_CONFIG_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsky/hilbert.hpp"
#include "qsky/modes.hpp"

namespace qsky::cli {

/// Invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Required input file absent; maps to exit code 3.
class MissingInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateSpec {
  std::optional<std::string> file;
  OamProjection ell_a{{0, 1.0}};
  double q = 1.0;
  double tuning = 0.5;
  std::optional<std::vector<int>> ells;  // explicit l1, l2, l3
  std::string extract = "none";          // none | ghz | reference
};

struct RunConfig {
  StateSpec state;
  GridSpec grid;
  ProjectionAngles angles{0.5 * kPi, 0.0};
  std::vector<double> theta_samples;
  std::vector<double> alpha_samples;
  std::string output_dir;
  std::uint64_t seed = 0;

  double central_radius = std::numeric_limits<double>::quiet_NaN();
  std::string stokes_format = "both";  // csv | binary | both
  bool rasters = true;

  std::int64_t counts_per_setting = 10000;
  bool noiseless = false;
  bool witnesses_only = false;
  std::optional<std::string> rho_file;
  std::optional<std::string> target_file;

  std::string pol_b = "R";
  std::optional<int> ell_i;
  std::optional<int> ell_j;
  int fringe_samples = 64;
  std::optional<double> werner_p;
};

/// Strict parse: unknown keys and type errors raise ConfigError with the
/// file name and line of the offending key.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_config_json(RunConfig& cfg, const std::string& text, const std::string& source);

/// Comma-separated list of numbers; tokens may use "pi" (e.g. "pi/2", "2pi").
std::vector<double> parse_number_list(const std::string& text);
/// "0" or "0,-1" (equal superposition) or "0:0.6,-1:0.8" (real amplitudes).
OamProjection parse_projection(const std::string& text);

/// Range checks shared by every command; throws ConfigError.
void validate(const RunConfig& cfg);

/// Canonical JSON of the resolved configuration (output_dir excluded).
nlohmann::json canonical_json(const RunConfig& cfg);
std::uint64_t fnv1a64(const std::string& text);

}  // namespace qsky::cli

#endif  // QSKY_SRC_CLI_CONFIG_HPP
