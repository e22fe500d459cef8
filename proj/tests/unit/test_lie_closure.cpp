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

#include <algorithm>
#include <numeric>
#include <random>

#include "qdc/errors.hpp"
#include "qdc/lie_closure.hpp"
#include "test_support.hpp"

namespace qdc {
namespace {

std::vector<OperatorMatrix> generators_of(const SystemSpec& s) {
  return {traceless_part(build_h0(s)).scaled(Complex(0, 1)), build_hi(s).scaled(Complex(0, 1))};
}

std::vector<Eigen::MatrixXcd> raw(const std::vector<OperatorMatrix>& ops) {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& op : ops) out.push_back(op.entries());
  return out;
}

TEST(CloseAlgebra, SingleGeneratorIsOneDimensional) {
  const std::vector<OperatorMatrix> gens = {make_x({1, 1}, {2, 1}, 2)};
  const auto r = close_algebra(gens);
  EXPECT_EQ(r.dimension, 1);
  EXPECT_FALSE(r.controllable);
  EXPECT_EQ(r.hilbert_dimension, 3);
}

TEST(CloseAlgebra, ContractErrors) {
  const auto x = make_x({1, 1}, {2, 1}, 2);
  const std::vector<OperatorMatrix> hermitian = {x.scaled(Complex(0, 1))};
  EXPECT_THROW(close_algebra(hermitian), ContractError);
  const std::vector<OperatorMatrix> traced = {
      OperatorMatrix(Complex(0, 1) * Eigen::MatrixXcd::Identity(3, 3), OperatorKind::skew_hermitian)};
  EXPECT_THROW(close_algebra(traced), ContractError);
  const std::vector<OperatorMatrix> mixed = {x, make_x({1, 1}, {2, 1}, 3)};
  EXPECT_THROW(close_algebra(mixed), ContractError);
  const std::vector<OperatorMatrix> ok = {x};
  EXPECT_THROW(close_algebra(ok, 0.0), std::invalid_argument);
  EXPECT_THROW(close_algebra(ok, -1e-9), std::invalid_argument);
  EXPECT_THROW(close_algebra(std::span<const OperatorMatrix>{}), ContractError);
}

TEST(CloseAlgebra, FullSuThreeFromStandardGenerators) {
  // x and y on both adjacent pairs generate su(3) for N=2.
  const std::vector<OperatorMatrix> gens = {make_x({1, 1}, {2, 1}, 2), make_x({1, 1}, {2, 2}, 2),
                                            make_y({1, 1}, {2, 1}, 2), make_y({1, 1}, {2, 2}, 2)};
  const auto r = close_algebra(gens);
  EXPECT_EQ(r.dimension, 8);
  EXPECT_TRUE(r.controllable);
}

TEST(Controllability, TwoLevelIsSuTwoPlusUOne) {
  SystemSpec s = SystemSpec::zeros(2);
  s.dipoles(1, 1, 1) = 0.8;
  s.dipoles(1, 1, 2) = -0.3;
  const auto r = is_completely_controllable(s);
  EXPECT_EQ(r.dimension, 4);
  EXPECT_FALSE(r.controllable);
}

TEST(Controllability, ExplicitExampleThreeLevels) {
  const auto r = is_completely_controllable(explicit_example_spec(3));
  EXPECT_EQ(r.dimension, 24);
  EXPECT_TRUE(r.controllable);
}

TEST(Controllability, ExplicitExampleFourLevelsMatchesSvdOracle) {
  const SystemSpec s = explicit_example_spec(4);
  const auto r = is_completely_controllable(s);
  EXPECT_EQ(r.dimension, 48);
  EXPECT_TRUE(r.controllable);
  EXPECT_EQ(testing::lie_dimension_by_svd(raw(generators_of(s))), 48);
}

TEST(Controllability, ZeroDipolesLeaveOnlyDrift) {
  const auto r = is_completely_controllable(SystemSpec::zeros(3));
  EXPECT_EQ(r.dimension, 1);
  EXPECT_FALSE(r.controllable);
}

TEST(Controllability, AgreesWithSvdOracleOnRandomSpecs) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    SystemSpec s = testing::random_spec(2 + trial % 3, trial % 2 == 0, rng);
    if (trial % 4 == 3 && s.levels >= 3) {
      // Rank-deficient couplings exercise a non-generic closure.
      s.dipoles(2, 1, 1) = s.dipoles(2, 2, 1);
      s.dipoles(2, 1, 2) = s.dipoles(2, 2, 2);
    }
    const auto r = is_completely_controllable(s);
    EXPECT_EQ(r.dimension, testing::lie_dimension_by_svd(raw(generators_of(s)))) << "trial " << trial;
  }
}

TEST(ClosureResult, BasisIsOrthonormal) {
  const auto r = is_completely_controllable(explicit_example_spec(3));
  ASSERT_EQ(static_cast<int>(r.basis.size()), r.dimension);
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    EXPECT_TRUE(is_skew_hermitian(r.basis[i].entries()));
    for (std::size_t j = 0; j <= i; ++j) {
      EXPECT_NEAR(frobenius_inner(r.basis[i], r.basis[j]), i == j ? 1.0 : 0.0, 1e-9);
    }
  }
}

TEST(ClosureResult, CommutatorsStayInSpan) {
  SystemSpec s = explicit_example_spec(3);
  s.dipoles(2, 1, 1) = s.dipoles(2, 2, 1);  // non-full algebra
  s.dipoles(2, 1, 2) = s.dipoles(2, 2, 2);
  for (const SystemSpec& spec : {explicit_example_spec(3), s}) {
    const auto r = is_completely_controllable(spec);
    for (std::size_t i = 0; i < r.basis.size(); ++i) {
      for (std::size_t j = i + 1; j < r.basis.size(); ++j) {
        const auto c = commutator(r.basis[i], r.basis[j]).entries();
        EXPECT_LE(residual_norm(c, r.basis), 10 * r.tolerance * std::max(1.0, c.norm()));
      }
    }
  }
}

TEST(ClosureResult, DimensionBoundedAndRoundsCounted) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const SystemSpec s = testing::random_spec(3, false, rng);
    const auto r = is_completely_controllable(s);
    EXPECT_GE(r.dimension, 1);
    EXPECT_LE(r.dimension, r.hilbert_dimension * r.hilbert_dimension - 1);
    EXPECT_EQ(r.controllable, r.dimension == r.hilbert_dimension * r.hilbert_dimension - 1);
    EXPECT_GE(r.rounds, 1);
  }
}

TEST(ClosureResult, MonotoneInGeneratorSet) {
  // Adding a generator never shrinks the closure.
  const auto base = generators_of(explicit_example_spec(3));
  const std::vector<OperatorMatrix> first = {base[0]};
  const auto r1 = close_algebra(first);
  const auto r2 = close_algebra(base);
  EXPECT_LE(r1.dimension, r2.dimension);
}

TEST(Invariance, EnergyShiftPermutationAndScaling) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    SystemSpec s = testing::random_spec(3, trial % 2 == 0, rng);
    if (trial >= 3) s.dipoles(2, 1, 1) = s.dipoles(2, 1, 2) = 0.0;
    const int dim = is_completely_controllable(s).dimension;

    SystemSpec shifted = s;
    for (double& e : shifted.energies) e += 7.0;
    EXPECT_EQ(is_completely_controllable(shifted).dimension, dim);

    SystemSpec scaled = s;
    for (double& d : scaled.dipoles.values()) d *= -2.5;
    EXPECT_EQ(is_completely_controllable(scaled).dimension, dim);

    std::vector<int> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(5, 5);
    for (int i = 0; i < 5; ++i) p(i, perm[static_cast<std::size_t>(i)]) = 1.0;
    std::vector<OperatorMatrix> conj;
    for (const auto& g : generators_of(s)) {
      conj.emplace_back(p * g.entries() * p.adjoint(), OperatorKind::skew_hermitian);
    }
    EXPECT_EQ(close_algebra(conj).dimension, dim);
  }
}

TEST(Exec, SerialAndParallelAgree) {
  const auto gens = generators_of(explicit_example_spec(4));
  const auto a = close_algebra(gens, kDefaultClosureTolerance, Exec::serial);
  const auto b = close_algebra(gens, kDefaultClosureTolerance, Exec::openmp);
  ASSERT_EQ(a.dimension, b.dimension);
  EXPECT_EQ(a.rounds, b.rounds);
  for (std::size_t i = 0; i < a.basis.size(); ++i) {
    EXPECT_EQ(a.basis[i].entries(), b.basis[i].entries());
  }
}

}  // namespace
}  // namespace qdc
