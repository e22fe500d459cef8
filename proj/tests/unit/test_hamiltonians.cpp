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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qdc/errors.hpp"
#include "qdc/hamiltonians.hpp"
#include "test_support.hpp"

namespace qdc {
namespace {

TEST(CouplingTable, LayoutAndBounds) {
  EXPECT_EQ(CouplingTable::size_for(2), 2u);
  EXPECT_EQ(CouplingTable::size_for(3), 6u);
  EXPECT_EQ(CouplingTable::size_for(4), 10u);
  CouplingTable t(3);
  EXPECT_EQ(t.offset(1, 1, 1), 0u);
  EXPECT_EQ(t.offset(1, 1, 2), 1u);
  EXPECT_EQ(t.offset(2, 1, 1), 2u);
  EXPECT_EQ(t.offset(2, 2, 2), 5u);
  EXPECT_THROW(t.offset(1, 2, 1), IndexError);
  EXPECT_THROW(t.offset(3, 1, 1), IndexError);
  EXPECT_THROW(t.offset(2, 1, 3), IndexError);
}

TEST(SystemSpec, ValidateRejectsBadEnergies) {
  SystemSpec s = SystemSpec::zeros(3);
  EXPECT_NO_THROW(s.validate());
  s.energies = {0.0, 1.0, 1.0};
  EXPECT_THROW(s.validate(), InvalidSpecError);
  s.energies = {0.0, 1.0};
  EXPECT_THROW(s.validate(), InvalidSpecError);
  s.energies = {0.0, 1.0, NAN};
  EXPECT_THROW(s.validate(), InvalidSpecError);
}

TEST(SystemSpec, ValidateRejectsNonFiniteCouplings) {
  SystemSpec s = SystemSpec::zeros(2);
  s.dipoles(1, 1, 2) = INFINITY;
  EXPECT_THROW(s.validate(), InvalidSpecError);
}

TEST(BuildH0, DiagonalWithDegenerateDoublets) {
  SystemSpec s = SystemSpec::zeros(3);
  s.energies = {0.0, 1.0, 2.0};
  const auto h0 = build_h0(s);
  Eigen::VectorXcd diag(5);
  diag << 0, 1, 1, 2, 2;
  EXPECT_EQ(h0.entries().diagonal(), diag);
  EXPECT_EQ((h0.entries() - Eigen::MatrixXcd(diag.asDiagonal())).norm(), 0.0);
}

TEST(BuildHi, ExplicitExampleEntries) {
  const auto hi = build_hi(explicit_example_spec(3)).entries();
  // d_{11,21} = sqrt(3 + 3 - 1 - 1 - 1), d_{11,22} = sqrt(2)
  EXPECT_DOUBLE_EQ(hi(0, 1).real(), std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(hi(0, 2).real(), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(hi(1, 3).real(), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(hi(1, 4).real(), 1.0);
  EXPECT_DOUBLE_EQ(hi(2, 3).real(), 1.0);
  EXPECT_DOUBLE_EQ(hi(2, 4).real(), 0.0);
  EXPECT_EQ(hi(0, 0), Complex(0.0));
  EXPECT_EQ(hi(1, 2), Complex(0.0));  // no intra-level dipole
  EXPECT_EQ(hi(0, 3), Complex(0.0));  // no skip-level dipole
}

TEST(BuildHe, IncludesIntraLevelTerm) {
  SystemSpec s = SystemSpec::zeros(2);
  s.excitation_inter(1, 1, 1) = 0.3;
  s.intra(2) = 0.7;
  const auto he = build_he(s).entries();
  EXPECT_EQ(he(0, 1), Complex(0.3));
  EXPECT_EQ(he(1, 0), Complex(0.3));
  EXPECT_EQ(he(1, 2), Complex(0.7));
  EXPECT_EQ(he(2, 1), Complex(0.7));
  EXPECT_EQ(he(0, 2), Complex(0.0));
}

TEST(Hamiltonians, HermitianForRandomSpecs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    SystemSpec s = testing::random_spec(2 + trial % 5, trial % 2 == 0, rng);
    for (double& v : s.excitation_inter.values()) v = 0.01 * (trial + 1);
    for (double& v : s.excitation_intra) v = -0.02;
    EXPECT_TRUE(is_hermitian(build_h0(s).entries()));
    EXPECT_TRUE(is_hermitian(build_hi(s).entries()));
    EXPECT_TRUE(is_hermitian(build_he(s).entries()));
  }
}

TEST(TracelessPart, RemovesTraceKeepsKind) {
  const auto h0 = build_h0(explicit_example_spec(4));
  const auto t = traceless_part(h0);
  EXPECT_NEAR(std::abs(t.entries().trace()), 0.0, 1e-14);
  EXPECT_EQ(t.kind(), OperatorKind::hermitian);
  const auto st = traceless_part(h0.scaled(Complex(0, 1)));
  EXPECT_NEAR(std::abs(st.entries().trace()), 0.0, 1e-14);
  EXPECT_EQ(st.kind(), OperatorKind::skew_hermitian);
}

TEST(EnergyGaps, Differences) {
  SystemSpec s = SystemSpec::zeros(4);
  s.energies = {0.0, 1.0, 2.5, 3.0};
  const auto gaps = energy_gaps(s);
  ASSERT_EQ(gaps.size(), 3u);
  EXPECT_DOUBLE_EQ(gaps[0], 1.0);
  EXPECT_DOUBLE_EQ(gaps[1], 1.5);
  EXPECT_DOUBLE_EQ(gaps[2], 0.5);
}

TEST(ExplicitExample, EnergiesAreHalfIntegers) {
  const SystemSpec s = explicit_example_spec(5);
  for (int n = 1; n <= 5; ++n) EXPECT_DOUBLE_EQ(s.energies[static_cast<std::size_t>(n - 1)], n - 0.5);
  EXPECT_DOUBLE_EQ(s.dipoles(1, 1, 1), std::sqrt(5.0));
  EXPECT_DOUBLE_EQ(s.dipoles(4, 2, 2), 0.0);
}

}  // namespace
}  // namespace qdc
