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

#include <exception>
#include <stdexcept>

#include "qdc/dynamics.hpp"

namespace qdc {
namespace {

FidelitySample evaluate(const SystemSpec& spec, const StateVector& state, double tau,
                        const SweepOptions& options, double dt_max) {
  FidelitySample s;
  s.tau = tau;
  s.f_perturbative = fidelity_perturbative(spec, state, tau, options.variant);
  if (options.with_exact) s.f_exact = fidelity_exact(spec, state, tau, dt_max);
  return s;
}

}  // namespace

FidelityCurve sweep_tau(const SystemSpec& spec, const StateVector& state,
                        std::span<const double> taus, const SweepOptions& options) {
  if (taus.empty()) throw std::invalid_argument("tau grid is empty");
  for (double t : taus) {
    if (!(t >= 0.0)) throw std::invalid_argument("tau grid entries must be >= 0");
  }
  spec.validate();
  const double dt_max = options.dt_max.value_or(default_exact_step(spec));

  FidelityCurve curve;
  curve.samples.resize(taus.size());
  std::vector<std::exception_ptr> errors(taus.size());
  const auto n = static_cast<long>(taus.size());
  if (options.exec == Exec::serial) {
    for (long i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      curve.samples[u] = evaluate(spec, state, taus[u], options, dt_max);
    }
  } else {
    // Points differ wildly in cost (exact steps scale with tau).
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      try {
        curve.samples[u] = evaluate(spec, state, taus[u], options, dt_max);
      } catch (...) {
        errors[u] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return curve;
}

}  // namespace qdc
