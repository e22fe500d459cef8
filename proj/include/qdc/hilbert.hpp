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

#include <complex>
#include <string>

namespace qdc {

using Complex = std::complex<double>;

// Hermiticity checks are absolute on unit-scale matrices; larger matrices are
// checked against 1e-12 times their largest entry.
inline constexpr double kHermiticityTolerance = 1e-12;

/// Number of Hilbert-space states for N levels with a non-degenerate ground
/// state and two-fold degenerate excited states: 2N - 1.
int basis_dimension(int levels);

/// Degeneracy of level n (1-based): 1 for the ground level, 2 otherwise.
constexpr int degeneracy(int n) { return n == 1 ? 1 : 2; }

/// A state label |n, k>. Level n is 1-based, sublevel k runs over
/// 1..degeneracy(n).
struct LevelIndex {
  int n = 1;
  int k = 1;

  friend bool operator==(const LevelIndex&, const LevelIndex&) = default;
};

/// Position of |n, k> in the fixed basis ordering
/// (1,1), (2,1), (2,2), (3,1), (3,2), ...
/// Throws IndexError when the label does not exist for `levels` levels.
int flatten(LevelIndex index, int levels);

/// Inverse of flatten().
LevelIndex unflatten(int position, int levels);

std::string to_string(LevelIndex index);

enum class OperatorKind { hermitian, skew_hermitian, general };

/// Dense complex square matrix carrying a (validated) symmetry flag.
class OperatorMatrix {
 public:
  /// Throws ContractError if `kind` is hermitian/skew_hermitian and the
  /// entries violate it beyond kHermiticityTolerance.
  OperatorMatrix(Eigen::MatrixXcd entries, OperatorKind kind);

  static OperatorMatrix zero(int dim, OperatorKind kind);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  OperatorKind kind() const { return kind_; }

  Complex operator()(int row, int col) const { return entries_(row, col); }

  OperatorMatrix scaled(Complex factor) const;

 private:
  Eigen::MatrixXcd entries_;
  OperatorKind kind_;
};

bool is_hermitian(const Eigen::MatrixXcd& m, double tolerance = kHermiticityTolerance);
bool is_skew_hermitian(const Eigen::MatrixXcd& m, double tolerance = kHermiticityTolerance);

// Skew-Hermitian su(d) generators on the degenerate level basis:
//   x_{a,b} = i(|a><b| + |b><a|)
//   y_{a,b} = |a><b| - |b><a|
//   h_{a,b} = i(|a><a| - |b><b|)
// `a` must strictly precede `b` in the basis ordering.
OperatorMatrix make_x(LevelIndex a, LevelIndex b, int levels);
OperatorMatrix make_y(LevelIndex a, LevelIndex b, int levels);
OperatorMatrix make_h(LevelIndex a, LevelIndex b, int levels);

/// AB - BA. Two skew-Hermitian (or two Hermitian) inputs give a
/// skew-Hermitian result; one of each gives a Hermitian result.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// Re tr(A^dagger B).
double frobenius_inner(const OperatorMatrix& a, const OperatorMatrix& b);
double frobenius_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace qdc
