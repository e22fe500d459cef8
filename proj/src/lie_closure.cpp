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

#include "qdc/lie_closure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdc/errors.hpp"
#include "qdc/kernels.hpp"

namespace qdc {
namespace {

// Candidates per commutator batch. Admission stays sequential in pair order,
// so the batch size only affects how much work is wasted once d^2-1 is hit.
constexpr std::size_t kBatchSize = 256;
constexpr double kRepassFraction = 1e-3;

double norm(const Eigen::MatrixXcd& m) { return m.norm(); }

class SpanBuilder {
 public:
  SpanBuilder(double tolerance, std::size_t capacity) : tolerance_(tolerance), capacity_(capacity) {}

  // floor: norm scale below which a candidate counts as numerically zero.
  bool try_admit(const Eigen::MatrixXcd& candidate, double floor) {
    const double n0 = norm(candidate);
    if (n0 == 0.0) return false;
    Eigen::MatrixXcd r = candidate;
    project_out(r);
    double n1 = norm(r);
    if (n1 < kRepassFraction * n0) {
      project_out(r);
      n1 = norm(r);
    }
    if (!(n1 > tolerance_ * std::max(n0, floor))) return false;
    r = 0.5 * (r - r.adjoint()).eval();
    r /= norm(r);
    basis_.push_back(std::move(r));
    return true;
  }

  bool full() const { return basis_.size() >= capacity_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<Eigen::MatrixXcd>& basis() const { return basis_; }

 private:
  void project_out(Eigen::MatrixXcd& r) const {
    for (const auto& b : basis_) r -= frobenius_inner(b, r) * b;
  }

  double tolerance_;
  std::size_t capacity_;
  std::vector<Eigen::MatrixXcd> basis_;
};

}  // namespace

double residual_norm(const Eigen::MatrixXcd& m, std::span<const OperatorMatrix> basis) {
  Eigen::MatrixXcd r = m;
  for (const auto& b : basis) r -= frobenius_inner(b.entries(), r) * b.entries();
  for (const auto& b : basis) r -= frobenius_inner(b.entries(), r) * b.entries();
  return r.norm();
}

ClosureResult close_algebra(std::span<const OperatorMatrix> generators, double tolerance,
                            Exec exec) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("closure tolerance must be positive");
  if (generators.empty()) throw ContractError("close_algebra needs at least one generator");
  const int d = generators.front().dim();
  for (const auto& g : generators) {
    if (g.dim() != d) throw ContractError("generators have different dimensions");
    if (!is_skew_hermitian(g.entries())) throw ContractError("generator is not skew-Hermitian");
    const double scale = std::max(1.0, g.entries().cwiseAbs().maxCoeff());
    if (std::abs(g.entries().trace()) > kHermiticityTolerance * scale * d) {
      throw ContractError("generator is not traceless");
    }
  }

  const auto capacity = static_cast<std::size_t>(d) * static_cast<std::size_t>(d) - 1;
  SpanBuilder span(tolerance, capacity);
  for (const auto& g : generators) {
    const double n = g.entries().norm();
    if (n == 0.0 || span.full()) continue;
    span.try_admit(g.entries() / n, 0.0);
  }

  ClosureResult result;
  result.hilbert_dimension = d;
  result.tolerance = tolerance;

  std::size_t processed = 0;
  std::vector<kernels::IndexPair> pairs;
  while (processed < span.size() && !span.full()) {
    const std::size_t end = span.size();
    ++result.rounds;
    pairs.clear();
    for (std::size_t i = processed; i < end; ++i) {
      for (std::size_t j = 0; j < i; ++j) pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    for (std::size_t start = 0; start < pairs.size() && !span.full(); start += kBatchSize) {
      const std::size_t count = std::min(kBatchSize, pairs.size() - start);
      // Admissions below may reallocate the basis, so the view is rebuilt per
      // batch; the batch itself only reads the first `end` elements.
      const auto candidates = kernels::commutator_batch(
          std::span<const Eigen::MatrixXcd>(span.basis().data(), end),
          std::span<const kernels::IndexPair>(pairs).subspan(start, count), exec);
      for (const auto& c : candidates) {
        if (span.full()) break;
        span.try_admit(c, 1.0);
      }
    }
    processed = end;
  }

  result.basis.reserve(span.size());
  for (const auto& b : span.basis()) result.basis.emplace_back(b, OperatorKind::skew_hermitian);
  result.dimension = static_cast<int>(span.size());
  result.controllable = span.size() == capacity;
  return result;
}

ClosureResult is_completely_controllable(const SystemSpec& spec, double tolerance, Exec exec) {
  spec.validate();
  const std::vector<OperatorMatrix> generators = {
      traceless_part(build_h0(spec)).scaled(Complex(0, 1)),
      build_hi(spec).scaled(Complex(0, 1)),
  };
  return close_algebra(generators, tolerance, exec);
}

}  // namespace qdc
