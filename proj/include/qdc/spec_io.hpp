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

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "qdc/hamiltonians.hpp"

namespace qdc {

enum class CouplingUnit { eV, J };

std::string to_string(CouplingUnit unit);
/// Accepts "eV" or "J"; throws InvalidSpecError otherwise.
CouplingUnit parse_coupling_unit(const std::string& text);

// Spec documents look like
//
//   {
//     "N": 3,
//     "energies": [0.5, 1.5, 2.5],
//     "dipoles": [{"n": 1, "k": 1, "p": 1, "value": 1.73}, ...],
//     "excitation_inter": [{"n": 1, "k": 1, "p": 2, "value": 1e-4}, ...],
//     "excitation_intra": [{"n": 2, "value": 1e-4}, ...],
//     "units": {"coupling": "eV"}
//   }
//
// Parsing is strict: unknown keys, duplicate entries and out-of-range labels
// are rejected. Missing coupling entries are zero. Excitation couplings given
// in joules are converted to eV on load; documents are always written in eV.

/// `unit_override` replaces a missing "units" field; it must agree with a
/// present one.
SystemSpec spec_from_json(const nlohmann::json& doc,
                          std::optional<CouplingUnit> unit_override = std::nullopt);
nlohmann::json spec_to_json(const SystemSpec& spec);

SystemSpec load_spec(const std::filesystem::path& path,
                     std::optional<CouplingUnit> unit_override = std::nullopt);
void save_spec(const SystemSpec& spec, const std::filesystem::path& path);

}  // namespace qdc
