// Copyright 2026 The isingsim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>

#include "isingsim/analysis.hpp"

/// Command-line surface: sweeps to CSV, verification of the series
/// expansions and robustness claims, robust-range queries, and sequence
/// dumps.
namespace isingsim {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;  // verification or runtime failure
inline constexpr int kExitUsage = 2;    // bad flags or config

struct RunConfig {
  enum class Command { Sweep, Verify, Range, Dump };

  Command command = Command::Sweep;
  SequenceFamily family = SequenceFamily::Bb1Ising;
  double theta = 0.0;  // radians; parse_angle("0.5pi") is the CLI default
  double eps_min = -0.1;
  double eps_max = 0.1;
  double eps_step = 0.001;
  ErrorAxis axis = ErrorAxis::Coupling;
  double threshold = 1e-6;
  double search_max = 1.0;
  std::string claim = "expansions";  // verify: expansions|flatness|range-ratio|all
  bool json = false;                 // dump
  std::string output_path;           // empty = standard output
};

/// Parses "0.5pi", "90deg", or a plain radian value.
double parse_angle(const std::string& text);

/// Parses "min:max:step" into the config; throws std::invalid_argument on
/// malformed input, min >= max, or step <= 0.
void parse_eps_range(const std::string& text, RunConfig& cfg);

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_range(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_dump(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full argv-level entry point used by main(); returns the process exit
/// status (0 success, 1 verification failure, 2 usage error).
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace isingsim
