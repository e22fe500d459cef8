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

#include <Eigen/Dense>

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qdc/hamiltonians.hpp"

namespace qdc {

// Comparisons in the checkers are exact inequalities made robust by a margin
// of kConditionMargin times the largest magnitude entering each comparison.
inline constexpr double kConditionMargin = 1e-9;

enum class ConditionId {
  lemma1,
  theorem1,
  theorem2,
  elim_no_crossing,
  elim_gap_distinct,
  elimination,  // elim_no_crossing AND elim_gap_distinct
};

std::string to_string(ConditionId id);

using Witness = std::variant<double, std::vector<double>, Eigen::MatrixXd, std::string>;

struct ConditionReport {
  ConditionId id = ConditionId::lemma1;
  bool applicable = true;
  bool pass = false;
  std::map<std::string, Witness> witnesses;
  std::vector<std::string> notes;

  const Witness& witness(const std::string& name) const { return witnesses.at(name); }
  double scalar(const std::string& name) const { return std::get<double>(witnesses.at(name)); }
};

nlohmann::json to_json(const ConditionReport& report);

/// Parameters of the equal-gap analysis (K^2, nu, b, the G_i blocks and their
/// eigen-decompositions).
struct EqualGapParameters {
  int levels = 0;
  std::vector<double> k2;  // K^2_{ij,ij}, indexed by basis position of (i, j)
  CouplingTable nu;        // nu_{ij,i+1k} in the dipole table layout
  std::vector<double> b;   // b[0] = 0, then b_1 .. b_{N-1}

  // Block i-1 describes G_i: 2x2 for i = 1, 4x4 otherwise, ordered as
  // (d_{i1,i+11}, d_{i1,i+12}, d_{i2,i+11}, d_{i2,i+12}).
  std::vector<Eigen::MatrixXd> g;
  std::vector<Eigen::VectorXd> lambdas;  // ascending
  std::vector<Eigen::MatrixXd> u;        // rows are eigenvectors: U G U^T = diag(lambda)
  std::vector<Eigen::VectorXd> c;        // C = U d for the block's couplings

  double k2_at(LevelIndex index) const { return k2.at(static_cast<std::size_t>(flatten(index, levels))); }
};

/// True when every gap equals mu_1 within the condition margin.
bool has_equal_gaps(const SystemSpec& spec);

/// Coupling determinants d_{n1,n+11} d_{n2,n+12} - d_{n1,n+12} d_{n2,n+11}
/// nonzero for 2 <= n <= N-1. Inapplicable for N = 2.
ConditionReport check_lemma1(const SystemSpec& spec);

/// First gap distinct from all others, the (p, q) inequality, and Lemma 1.
/// Inapplicable for N = 2.
ConditionReport check_theorem1(const SystemSpec& spec);

/// Throws ContractError unless N >= 3 and all gaps are equal.
EqualGapParameters equal_gap_parameters(const SystemSpec& spec);

/// Lemma 1, the first-block conditions (lambda_11, lambda_12 nonzero and
/// distinct, C_{11,21}, C_{11,22} nonzero) and global distinctness of all
/// nonzero lambdas. Inapplicable for N = 2; throws ContractError for unequal
/// gaps.
ConditionReport check_theorem2(const SystemSpec& spec);

/// First-order splitting E_n -/+ |g_{n1,n2}| of the excited levels, checked
/// for level crossings and for a first gap distinct from every other gap.
ConditionReport check_no_crossing(const SystemSpec& spec);
ConditionReport check_gap_distinct(const SystemSpec& spec);
ConditionReport check_elimination(const SystemSpec& spec);

/// Split spectrum in basis order: E_1, E_2 - G_2, E_2 + G_2, ...
std::vector<double> split_energies(const SystemSpec& spec);

}  // namespace qdc
