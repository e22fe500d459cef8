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

#include <random>

#include "qdc/errors.hpp"
#include "qdc/hilbert.hpp"

namespace qdc {
namespace {

// Matrix unit |a><b| built without the library.
Eigen::MatrixXcd unit(int d, int a, int b) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  m(a, b) = 1.0;
  return m;
}

TEST(BasisDimension, CountsDoublets) {
  EXPECT_EQ(basis_dimension(2), 3);
  EXPECT_EQ(basis_dimension(3), 5);
  EXPECT_EQ(basis_dimension(10), 19);
  EXPECT_THROW(basis_dimension(1), InvalidSpecError);
  EXPECT_THROW(basis_dimension(0), InvalidSpecError);
}

TEST(Flatten, OrdersGroundThenDoublets) {
  EXPECT_EQ(flatten({1, 1}, 3), 0);
  EXPECT_EQ(flatten({2, 1}, 3), 1);
  EXPECT_EQ(flatten({2, 2}, 3), 2);
  EXPECT_EQ(flatten({3, 1}, 3), 3);
  EXPECT_EQ(flatten({3, 2}, 3), 4);
}

TEST(Flatten, RejectsOutOfRange) {
  EXPECT_THROW(flatten({1, 2}, 3), IndexError);
  EXPECT_THROW(flatten({4, 1}, 3), IndexError);
  EXPECT_THROW(flatten({0, 1}, 3), IndexError);
  EXPECT_THROW(flatten({2, 3}, 3), IndexError);
  EXPECT_THROW(unflatten(5, 3), IndexError);
  EXPECT_THROW(unflatten(-1, 3), IndexError);
}

TEST(Flatten, RoundTripsEveryPosition) {
  for (int levels = 2; levels <= 7; ++levels) {
    for (int pos = 0; pos < basis_dimension(levels); ++pos) {
      EXPECT_EQ(flatten(unflatten(pos, levels), levels), pos);
    }
  }
}

TEST(Generators, XMatchesDefinition) {
  const auto x = make_x({1, 1}, {2, 1}, 2);
  Eigen::MatrixXcd expected = Complex(0, 1) * (unit(3, 0, 1) + unit(3, 1, 0));
  EXPECT_EQ(x.entries(), expected);
  EXPECT_EQ(x.kind(), OperatorKind::skew_hermitian);
}

TEST(Generators, YAndHMatchDefinition) {
  const auto y = make_y({2, 1}, {3, 2}, 3);
  EXPECT_EQ(y.entries(), unit(5, 1, 4) - unit(5, 4, 1));
  const auto h = make_h({2, 2}, {3, 1}, 3);
  EXPECT_EQ(h.entries(), Complex(0, 1) * (unit(5, 2, 2) - unit(5, 3, 3)));
}

TEST(Generators, RequireOrderedLabels) {
  EXPECT_THROW(make_x({2, 1}, {1, 1}, 2), IndexError);
  EXPECT_THROW(make_y({2, 1}, {2, 1}, 2), IndexError);
  EXPECT_THROW(make_h({3, 1}, {2, 2}, 3), IndexError);
  EXPECT_THROW(make_x({1, 1}, {4, 1}, 3), IndexError);
}

TEST(Generators, SameLevelPairIsAllowed) {
  // The doublet partners (n,1) < (n,2) are valid labels.
  EXPECT_NO_THROW(make_y({2, 1}, {2, 2}, 2));
}

TEST(OperatorMatrix, ValidatesKind) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(OperatorMatrix(m, OperatorKind::hermitian), ContractError);
  EXPECT_THROW(OperatorMatrix(m, OperatorKind::skew_hermitian), ContractError);
  EXPECT_NO_THROW(OperatorMatrix(m, OperatorKind::general));
  EXPECT_THROW(OperatorMatrix(Eigen::MatrixXcd::Zero(2, 3), OperatorKind::general), ShapeError);
}

TEST(OperatorMatrix, ScaledTracksKind) {
  const auto x = make_x({1, 1}, {2, 2}, 2);
  EXPECT_EQ(x.scaled(2.0).kind(), OperatorKind::skew_hermitian);
  EXPECT_EQ(x.scaled(Complex(0, 1)).kind(), OperatorKind::hermitian);
  EXPECT_EQ(x.scaled(Complex(1, 1)).kind(), OperatorKind::general);
}

TEST(Commutator, RejectsShapeMismatch) {
  EXPECT_THROW(commutator(make_x({1, 1}, {2, 1}, 2), make_x({1, 1}, {2, 1}, 3)), ShapeError);
}

TEST(Commutator, KindFollowsOperands) {
  const auto x = make_x({1, 1}, {2, 1}, 2);
  const auto hx = x.scaled(Complex(0, 1));  // Hermitian
  EXPECT_EQ(commutator(x, x).kind(), OperatorKind::skew_hermitian);
  EXPECT_EQ(commutator(hx, hx).kind(), OperatorKind::skew_hermitian);
  EXPECT_EQ(commutator(hx, x).kind(), OperatorKind::hermitian);
}

TEST(Commutator, SelfCommutatorVanishes) {
  const auto x = make_x({1, 1}, {2, 1}, 3);
  EXPECT_EQ(commutator(x, x).entries().norm(), 0.0);
}

TEST(Commutator, AntisymmetricAndJacobi) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  auto random_skew = [&]() {
    Eigen::MatrixXcd m(5, 5);
    for (int i = 0; i < 25; ++i) m.data()[i] = {n01(rng), n01(rng)};
    return OperatorMatrix(0.5 * (m - m.adjoint()), OperatorKind::skew_hermitian);
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_skew(), b = random_skew(), c = random_skew();
    EXPECT_LT((commutator(a, b).entries() + commutator(b, a).entries()).norm(), 1e-12);
    const Eigen::MatrixXcd jacobi = commutator(a, commutator(b, c)).entries() +
                                    commutator(b, commutator(c, a)).entries() +
                                    commutator(c, commutator(a, b)).entries();
    EXPECT_LT(jacobi.norm(), 1e-11);
  }
}

TEST(FrobeniusInner, RealPartOfTraceProduct) {
  const auto x = make_x({1, 1}, {2, 1}, 2);
  const auto y = make_y({1, 1}, {2, 1}, 2);
  EXPECT_DOUBLE_EQ(frobenius_inner(x, x), 2.0);
  EXPECT_DOUBLE_EQ(frobenius_inner(x, y), 0.0);
  EXPECT_DOUBLE_EQ(frobenius_inner(y, y), 2.0);
}

TEST(Predicates, DetectHermiticity) {
  Eigen::MatrixXcd h(2, 2);
  h << 1.0, Complex(0, 2), Complex(0, -2), 3.0;
  EXPECT_TRUE(is_hermitian(h));
  EXPECT_FALSE(is_skew_hermitian(h));
  EXPECT_TRUE(is_skew_hermitian(Complex(0, 1) * h));
  EXPECT_FALSE(is_hermitian(Eigen::MatrixXcd::Zero(2, 3)));
}

}  // namespace
}  // namespace qdc
