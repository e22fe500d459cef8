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

#include <span>
#include <vector>

#include "qdc/exec.hpp"
#include "qdc/hamiltonians.hpp"
#include "qdc/hilbert.hpp"

namespace qdc {

inline constexpr double kDefaultClosureTolerance = 1e-9;

/// The real Lie algebra generated by a set of skew-Hermitian traceless
/// matrices, with an orthonormal (Frobenius) basis.
struct ClosureResult {
  int dimension = 0;
  int hilbert_dimension = 0;
  bool controllable = false;  // dimension == hilbert_dimension^2 - 1, i.e. su(d)
  std::vector<OperatorMatrix> basis;
  int rounds = 0;
  double tolerance = kDefaultClosureTolerance;
};

/// Closes `generators` under commutation.
///
/// Generators are normalized and orthonormalized first. Each round then forms
/// the commutator of every element admitted in the previous round with every
/// element before it, in index order, and admits the part orthogonal to the
/// current span when its norm exceeds `tolerance` times the larger of the
/// candidate norm and 1 (the norm of the unit operands). Orthogonalization is
/// modified Gram-Schmidt with one repeat pass when more than 99.9% of the
/// candidate cancels. Stops at the fixpoint or at d^2 - 1 elements.
///
/// Throws ContractError for non-skew-Hermitian, non-traceless or mismatched
/// generators and std::invalid_argument for tolerance <= 0.
ClosureResult close_algebra(std::span<const OperatorMatrix> generators,
                            double tolerance = kDefaultClosureTolerance,
                            Exec exec = Exec::openmp);

/// Closure of {i traceless(H_0), i H_I}.
ClosureResult is_completely_controllable(const SystemSpec& spec,
                                         double tolerance = kDefaultClosureTolerance,
                                         Exec exec = Exec::openmp);

/// Norm of the part of `m` orthogonal to span(basis); basis must be
/// orthonormal.
double residual_norm(const Eigen::MatrixXcd& m, std::span<const OperatorMatrix> basis);

}  // namespace qdc
