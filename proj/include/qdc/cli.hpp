// Copyright 2026 The qdctl Authors
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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qdc/dynamics.hpp"
#include "qdc/spec_io.hpp"

namespace qdc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

enum class Command { analyze, split, fidelity, optimize, demo };

std::string to_string(Command command);

struct RunConfig {
  Command command = Command::analyze;
  std::filesystem::path spec_path;
  std::filesystem::path output_path;   // empty: standard output
  std::filesystem::path summary_path;  // optimize; empty: <output>.json
  std::optional<double> tolerance;
  std::optional<CouplingUnit> units;
  std::uint64_t seed = 0;

  // fidelity
  std::vector<double> taus;  // empty: default log grid
  bool exact = false;
  std::optional<double> dt_max;
  CoefficientVariant variant = CoefficientVariant::as_printed;
  std::vector<double> state;  // real amplitudes; optimize defaults to |1,1>

  // optimize
  int segments = 40;
  std::optional<double> duration;  // default 50 hbar / mu_1
  int iterations = 2000;
  std::vector<double> target;  // empty: random state from the seed

  // demo
  int demo_levels = 3;
};

/// Default relaxation-time grid: 41 log-spaced points from 1e-15 s to 1e-11 s.
std::vector<double> default_tau_grid();

/// Closure summary, every condition report and the sufficiency cross-check.
/// `violation` is set when a sufficient condition passes on a system the
/// closure finds uncontrollable.
nlohmann::json analyze_report(const SystemSpec& spec, double tolerance, bool& violation);

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_split(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_fidelity(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_optimize(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_demo(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.command and maps exceptions onto exit codes:
/// input problems -> 2, numeric failures -> 3.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses `qdctl <command> [options]` and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdc::cli
