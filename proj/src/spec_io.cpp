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

#include "qdc/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "qdc/errors.hpp"

namespace qdc {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  if (!obj.is_object()) throw InvalidSpecError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw InvalidSpecError("unknown key '" + key + "' in " + where);
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidSpecError("missing key '" + std::string(key) + "' in " + where);
  return *it;
}

int require_int(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) {
    throw InvalidSpecError("'" + std::string(key) + "' in " + where + " must be an integer");
  }
  return v.get<int>();
}

double require_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) {
    throw InvalidSpecError("'" + std::string(key) + "' in " + where + " must be a number");
  }
  return v.get<double>();
}

void read_table(const json& doc, const char* name, double scale, CouplingTable& table) {
  auto it = doc.find(name);
  if (it == doc.end()) return;
  if (!it->is_array()) throw InvalidSpecError(std::string(name) + " must be an array");
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& e = (*it)[i];
    const std::string where = std::string(name) + "[" + std::to_string(i) + "]";
    reject_unknown_keys(e, {"n", "k", "p", "value"}, where);
    const int n = require_int(e, "n", where);
    const int k = require_int(e, "k", where);
    const int p = require_int(e, "p", where);
    const double value = require_number(e, "value", where);
    if (!seen.insert({n, k, p}).second) throw InvalidSpecError("duplicate entry " + where);
    try {
      table(n, k, p) = value / scale;
    } catch (const IndexError& err) {
      throw InvalidSpecError(where + ": " + err.what());
    }
  }
}

json write_table(const CouplingTable& table) {
  json out = json::array();
  for (int n = 1; n < table.levels(); ++n) {
    for (int k = 1; k <= degeneracy(n); ++k) {
      for (int p = 1; p <= 2; ++p) {
        out.push_back({{"n", n}, {"k", k}, {"p", p}, {"value", table(n, k, p)}});
      }
    }
  }
  return out;
}

}  // namespace

std::string to_string(CouplingUnit unit) { return unit == CouplingUnit::J ? "J" : "eV"; }

CouplingUnit parse_coupling_unit(const std::string& text) {
  if (text == "eV") return CouplingUnit::eV;
  if (text == "J") return CouplingUnit::J;
  throw InvalidSpecError("coupling unit must be \"eV\" or \"J\", got \"" + text + "\"");
}

SystemSpec spec_from_json(const json& doc, std::optional<CouplingUnit> unit_override) {
  reject_unknown_keys(doc, {"N", "energies", "dipoles", "excitation_inter", "excitation_intra",
                            "units"},
                      "spec");
  const int levels = require_int(doc, "N", "spec");
  if (levels < 2) throw InvalidSpecError("N must be >= 2, got " + std::to_string(levels));

  std::optional<CouplingUnit> unit;
  if (auto it = doc.find("units"); it != doc.end()) {
    reject_unknown_keys(*it, {"coupling"}, "units");
    const json& c = require(*it, "coupling", "units");
    if (!c.is_string()) throw InvalidSpecError("units.coupling must be a string");
    unit = parse_coupling_unit(c.get<std::string>());
  }
  if (unit_override) {
    if (unit && *unit != *unit_override) {
      throw InvalidSpecError("--units " + to_string(*unit_override) +
                             " conflicts with the document's units.coupling " + to_string(*unit));
    }
    unit = unit_override;
  }
  const double scale = unit.value_or(CouplingUnit::eV) == CouplingUnit::J ? kJoulesPerEv : 1.0;

  SystemSpec spec = SystemSpec::zeros(levels);
  const json& energies = require(doc, "energies", "spec");
  if (!energies.is_array()) throw InvalidSpecError("energies must be an array");
  if (energies.size() != static_cast<std::size_t>(levels)) {
    throw InvalidSpecError("expected " + std::to_string(levels) + " energies, got " +
                           std::to_string(energies.size()));
  }
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (!energies[i].is_number()) throw InvalidSpecError("energies must be numbers");
    spec.energies[i] = energies[i].get<double>();
  }

  read_table(doc, "dipoles", 1.0, spec.dipoles);
  read_table(doc, "excitation_inter", scale, spec.excitation_inter);

  if (auto it = doc.find("excitation_intra"); it != doc.end()) {
    if (!it->is_array()) throw InvalidSpecError("excitation_intra must be an array");
    std::set<int> seen;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& e = (*it)[i];
      const std::string where = "excitation_intra[" + std::to_string(i) + "]";
      reject_unknown_keys(e, {"n", "value"}, where);
      const int n = require_int(e, "n", where);
      if (n < 2 || n > levels) throw InvalidSpecError(where + ": level out of range");
      if (!seen.insert(n).second) throw InvalidSpecError("duplicate entry " + where);
      spec.intra(n) = require_number(e, "value", where) / scale;
    }
  }

  spec.validate();
  return spec;
}

json spec_to_json(const SystemSpec& spec) {
  spec.validate();
  json intra = json::array();
  for (int n = 2; n <= spec.levels; ++n) intra.push_back({{"n", n}, {"value", spec.intra(n)}});
  return {{"N", spec.levels},
          {"energies", spec.energies},
          {"dipoles", write_table(spec.dipoles)},
          {"excitation_inter", write_table(spec.excitation_inter)},
          {"excitation_intra", intra},
          {"units", {{"coupling", "eV"}}}};
}

SystemSpec load_spec(const std::filesystem::path& path, std::optional<CouplingUnit> unit_override) {
  std::ifstream in(path);
  if (!in) throw InvalidSpecError("cannot open spec file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw InvalidSpecError("malformed JSON in " + path.string() + ": " + err.what());
  }
  try {
    return spec_from_json(doc, unit_override);
  } catch (const json::exception& err) {
    throw InvalidSpecError(path.string() + ": " + err.what());
  }
}

void save_spec(const SystemSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidSpecError("cannot write " + path.string());
  out << spec_to_json(spec).dump(2) << '\n';
}

}  // namespace qdc
