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

#include <cmath>
#include <complex>

#include "qdc/kernels.hpp"

namespace qdc::kernels {
namespace {

double local_fidelity(const SegmentModel& model, double amplitude, double dt,
                      const Eigen::VectorXcd& before, const Eigen::VectorXcd& after) {
  const std::complex<double> overlap = after.dot(segment_propagator(model, amplitude, dt) * before);
  return std::norm(overlap);
}

double component(const SegmentModel& model, std::span<const double> dts,
                 std::span<const double> amplitudes, std::span<const Eigen::VectorXcd> forward,
                 std::span<const Eigen::VectorXcd> backward, double step, std::size_t k) {
  const double a = amplitudes[k];
  const double up = local_fidelity(model, a + step, dts[k], forward[k], backward[k + 1]);
  const double down = local_fidelity(model, a - step, dts[k], forward[k], backward[k + 1]);
  return (up - down) / (2.0 * step);
}

}  // namespace

Eigen::MatrixXcd segment_propagator(const SegmentModel& model, double amplitude, double dt) {
  Eigen::MatrixXd h = amplitude * model.control;
  h.diagonal() += model.drift;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::MatrixXd& v = eig.eigenvectors();
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    phases(i) = std::polar(1.0, -eig.eigenvalues()(i) * dt / model.hbar);
  }
  const Eigen::MatrixXcd vc = v.cast<std::complex<double>>();
  return vc * phases.asDiagonal() * vc.transpose();
}

std::vector<double> segment_fd_gradient(const SegmentModel& model, std::span<const double> dts,
                                        std::span<const double> amplitudes,
                                        std::span<const Eigen::VectorXcd> forward,
                                        std::span<const Eigen::VectorXcd> backward, double step,
                                        Exec exec) {
  const auto n = static_cast<long>(amplitudes.size());
  std::vector<double> grad(amplitudes.size());
  if (exec == Exec::serial) {
    for (long k = 0; k < n; ++k) {
      grad[static_cast<std::size_t>(k)] = component(model, dts, amplitudes, forward, backward, step,
                                                    static_cast<std::size_t>(k));
    }
  } else {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) {
      grad[static_cast<std::size_t>(k)] = component(model, dts, amplitudes, forward, backward, step,
                                                    static_cast<std::size_t>(k));
    }
  }
  return grad;
}

}  // namespace qdc::kernels
