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

#include "qdc/kernels.hpp"

namespace qdc::kernels {

std::vector<Eigen::MatrixXcd> commutator_batch(std::span<const Eigen::MatrixXcd> basis,
                                               std::span<const IndexPair> pairs, Exec exec) {
  std::vector<Eigen::MatrixXcd> out(pairs.size());
  const auto n = static_cast<long>(pairs.size());
  if (exec == Exec::serial) {
    for (long t = 0; t < n; ++t) {
      const auto& a = basis[static_cast<std::size_t>(pairs[static_cast<std::size_t>(t)].first)];
      const auto& b = basis[static_cast<std::size_t>(pairs[static_cast<std::size_t>(t)].second)];
      out[static_cast<std::size_t>(t)] = a * b - b * a;
    }
  } else {
#pragma omp parallel for schedule(static)
    for (long t = 0; t < n; ++t) {
      const auto& a = basis[static_cast<std::size_t>(pairs[static_cast<std::size_t>(t)].first)];
      const auto& b = basis[static_cast<std::size_t>(pairs[static_cast<std::size_t>(t)].second)];
      out[static_cast<std::size_t>(t)] = a * b - b * a;
    }
  }
  return out;
}

}  // namespace qdc::kernels
