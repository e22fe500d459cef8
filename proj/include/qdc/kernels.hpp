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

// Data-parallel inner loops. Every kernel has a plain serial loop (the
// reference) and an OpenMP loop selected by Exec; the two paths evaluate the
// same per-element expressions and agree bitwise.

#include <Eigen/Dense>

#include <span>
#include <utility>
#include <vector>

#include "qdc/exec.hpp"

namespace qdc::kernels {

using IndexPair = std::pair<int, int>;

/// [basis[i], basis[j]] for every (i, j) in `pairs`, in order.
std::vector<Eigen::MatrixXcd> commutator_batch(std::span<const Eigen::MatrixXcd> basis,
                                               std::span<const IndexPair> pairs, Exec exec);

/// Piecewise-constant control model H(f) = diag(drift) + f * control, with
/// real symmetric `control` (energies in eV, time in s).
struct SegmentModel {
  Eigen::VectorXd drift;
  Eigen::MatrixXd control;
  double hbar = 0.0;
};

/// exp(-i dt H(f) / hbar) through the eigendecomposition of the real
/// symmetric segment Hamiltonian.
Eigen::MatrixXcd segment_propagator(const SegmentModel& model, double amplitude, double dt);

/// Central-difference derivative of F = |<target| U_K ... U_1 |initial>|^2
/// with respect to each segment amplitude.
///
/// forward[k] is the state after k segments (forward[0] = initial) and
/// backward[k] = (U_K ... U_{k+1})^dagger target (backward[K] = target), so
/// that changing segment k only touches the middle factor of
/// F = |backward[k]^dagger U_k forward[k-1]|^2.
std::vector<double> segment_fd_gradient(const SegmentModel& model, std::span<const double> dts,
                                        std::span<const double> amplitudes,
                                        std::span<const Eigen::VectorXcd> forward,
                                        std::span<const Eigen::VectorXcd> backward, double step,
                                        Exec exec);

}  // namespace qdc::kernels
