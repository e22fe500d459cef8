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

#include "qdc/hamiltonians.hpp"

#include <cmath>
#include <string>

#include "qdc/errors.hpp"

namespace qdc {
namespace {

void fill_adjacent(Eigen::MatrixXcd& m, const CouplingTable& table, int levels) {
  for (int n = 1; n < levels; ++n) {
    for (int k = 1; k <= degeneracy(n); ++k) {
      for (int p = 1; p <= 2; ++p) {
        const int i = flatten({n, k}, levels);
        const int j = flatten({n + 1, p}, levels);
        m(i, j) = table(n, k, p);
        m(j, i) = table(n, k, p);
      }
    }
  }
}

}  // namespace

CouplingTable::CouplingTable(int levels) : levels_(levels), values_(size_for(levels), 0.0) {}

std::size_t CouplingTable::size_for(int levels) {
  return levels < 2 ? 0 : static_cast<std::size_t>(2 + 4 * (levels - 2));
}

std::size_t CouplingTable::offset(int n, int k, int p) const {
  if (n < 1 || n >= levels_ || k < 1 || k > degeneracy(n) || p < 1 || p > 2) {
    throw IndexError("coupling label (" + std::to_string(n) + std::to_string(k) + "," +
                     std::to_string(n + 1) + std::to_string(p) + ") out of range for N=" +
                     std::to_string(levels_));
  }
  if (n == 1) return static_cast<std::size_t>(p - 1);
  return static_cast<std::size_t>(2 + 4 * (n - 2) + 2 * (k - 1) + (p - 1));
}

SystemSpec SystemSpec::zeros(int levels) {
  basis_dimension(levels);
  SystemSpec spec;
  spec.levels = levels;
  spec.energies.resize(static_cast<std::size_t>(levels));
  for (int n = 0; n < levels; ++n) spec.energies[static_cast<std::size_t>(n)] = n;
  spec.dipoles = CouplingTable(levels);
  spec.excitation_inter = CouplingTable(levels);
  spec.excitation_intra.assign(static_cast<std::size_t>(levels - 1), 0.0);
  return spec;
}

void SystemSpec::validate() const {
  if (levels < 2) {
    throw InvalidSpecError("N must be >= 2, got " + std::to_string(levels));
  }
  if (energies.size() != static_cast<std::size_t>(levels)) {
    throw InvalidSpecError("expected " + std::to_string(levels) + " energies, got " +
                           std::to_string(energies.size()));
  }
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (!std::isfinite(energies[i])) throw InvalidSpecError("non-finite energy");
    if (i > 0 && !(energies[i] > energies[i - 1])) {
      throw InvalidSpecError("energies must be strictly increasing (E_" + std::to_string(i + 1) +
                             " <= E_" + std::to_string(i) + ")");
    }
  }
  const auto check_table = [&](const CouplingTable& t, const char* name) {
    if (t.levels() != levels || t.values().size() != CouplingTable::size_for(levels)) {
      throw InvalidSpecError(std::string(name) + " table does not match N");
    }
    for (double v : t.values()) {
      if (!std::isfinite(v)) throw InvalidSpecError(std::string("non-finite entry in ") + name);
    }
  };
  check_table(dipoles, "dipoles");
  check_table(excitation_inter, "excitation_inter");
  if (excitation_intra.size() != static_cast<std::size_t>(levels - 1)) {
    throw InvalidSpecError("excitation_intra must have N-1 entries");
  }
  for (double v : excitation_intra) {
    if (!std::isfinite(v)) throw InvalidSpecError("non-finite entry in excitation_intra");
  }
}

SystemSpec explicit_example_spec(int levels) {
  SystemSpec spec = SystemSpec::zeros(levels);
  for (int n = 1; n <= levels; ++n) spec.energies[static_cast<std::size_t>(n - 1)] = n - 0.5;
  for (int i = 1; i < levels; ++i) {
    for (int j = 1; j <= degeneracy(i); ++j) {
      for (int k = 1; k <= 2; ++k) {
        spec.dipoles(i, j, k) = std::sqrt(static_cast<double>(levels + 3 - i - j - k));
      }
    }
  }
  return spec;
}

OperatorMatrix build_h0(const SystemSpec& spec) {
  spec.validate();
  const int d = spec.dimension();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int pos = 0; pos < d; ++pos) {
    m(pos, pos) = spec.energies[static_cast<std::size_t>(unflatten(pos, spec.levels).n - 1)];
  }
  return {std::move(m), OperatorKind::hermitian};
}

OperatorMatrix build_hi(const SystemSpec& spec) {
  spec.validate();
  const int d = spec.dimension();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  fill_adjacent(m, spec.dipoles, spec.levels);
  return {std::move(m), OperatorKind::hermitian};
}

OperatorMatrix build_he(const SystemSpec& spec) {
  spec.validate();
  const int d = spec.dimension();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  fill_adjacent(m, spec.excitation_inter, spec.levels);
  for (int n = 2; n <= spec.levels; ++n) {
    const int i = flatten({n, 1}, spec.levels);
    const int j = flatten({n, 2}, spec.levels);
    m(i, j) = spec.intra(n);
    m(j, i) = spec.intra(n);
  }
  return {std::move(m), OperatorKind::hermitian};
}

std::vector<double> energy_gaps(const SystemSpec& spec) {
  spec.validate();
  std::vector<double> gaps;
  gaps.reserve(spec.energies.size() - 1);
  for (std::size_t i = 1; i < spec.energies.size(); ++i) {
    gaps.push_back(spec.energies[i] - spec.energies[i - 1]);
  }
  return gaps;
}

OperatorMatrix traceless_part(const OperatorMatrix& h) {
  const int d = h.dim();
  if (d == 0) return h;
  const Complex shift = h.entries().trace() / static_cast<double>(d);
  Eigen::MatrixXcd m = h.entries();
  m.diagonal().array() -= shift;
  return {std::move(m), h.kind()};
}

}  // namespace qdc
