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

#include <vector>

#include "qdc/hilbert.hpp"

namespace qdc {

// Physical constants in the units used throughout: energies in eV, time in s.
inline constexpr double kHbarEvSeconds = 6.582119569e-16;
inline constexpr double kJoulesPerEv = 1.602176634e-19;

/// Coupling between adjacent levels, c_{nk,n+1p}, for 1 <= n <= N-1,
/// 1 <= k <= degeneracy(n), p in {1, 2}.
///
/// Storage follows the block layout used by the equal-gap analysis: level 1
/// holds (c_{11,21}, c_{11,22}); every later level n holds
/// (c_{n1,n+11}, c_{n1,n+12}, c_{n2,n+11}, c_{n2,n+12}).
class CouplingTable {
 public:
  CouplingTable() = default;
  explicit CouplingTable(int levels);

  static std::size_t size_for(int levels);

  int levels() const { return levels_; }
  double operator()(int n, int k, int p) const { return values_[offset(n, k, p)]; }
  double& operator()(int n, int k, int p) { return values_[offset(n, k, p)]; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Throws IndexError for labels outside the table.
  std::size_t offset(int n, int k, int p) const;

  friend bool operator==(const CouplingTable&, const CouplingTable&) = default;

 private:
  int levels_ = 0;
  std::vector<double> values_;
};

/// Full description of a degenerate N-level system.
struct SystemSpec {
  int levels = 0;                          // N
  std::vector<double> energies;            // E_1 < ... < E_N, eV
  CouplingTable dipoles;                   // dimensionless weights d_{nk,n+1p}
  CouplingTable excitation_inter;          // g_{nk,n+1p}, eV
  std::vector<double> excitation_intra;    // g_{n1,n2} for n = 2..N at [n-2], eV

  /// Zero couplings, energies 0, 1, ..., N-1.
  static SystemSpec zeros(int levels);

  double intra(int n) const { return excitation_intra.at(static_cast<std::size_t>(n - 2)); }
  double& intra(int n) { return excitation_intra.at(static_cast<std::size_t>(n - 2)); }

  int dimension() const { return basis_dimension(levels); }

  /// Throws InvalidSpecError describing the first violated invariant.
  void validate() const;

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

/// E_n = n - 1/2, d_{ij,i+1k} = sqrt(N + 3 - i - j - k): equally spaced
/// levels with a coupling pattern that is completely controllable for every N.
SystemSpec explicit_example_spec(int levels);

OperatorMatrix build_h0(const SystemSpec& spec);
OperatorMatrix build_hi(const SystemSpec& spec);
OperatorMatrix build_he(const SystemSpec& spec);

/// mu_i = E_{i+1} - E_i for i = 1..N-1.
std::vector<double> energy_gaps(const SystemSpec& spec);

/// H - (tr H / d) 1. Keeps the symmetry flag of the input.
OperatorMatrix traceless_part(const OperatorMatrix& h);

}  // namespace qdc
