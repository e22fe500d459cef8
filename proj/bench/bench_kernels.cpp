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

// Wall-clock comparison of the serial and OpenMP paths of each kernel.
// Usage: qdc_bench [repeats]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "qdc/dynamics.hpp"
#include "qdc/hamiltonians.hpp"
#include "qdc/kernels.hpp"
#include "qdc/lie_closure.hpp"
#include "qdc/spec_io.hpp"

namespace {

using namespace qdc;

template <typename F>
double best_of(int repeats, F&& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %9.3f ms   openmp %9.3f ms   speedup %5.2fx\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel);
}

void bench_commutators(int repeats) {
  const auto closure = is_completely_controllable(explicit_example_spec(4));
  std::vector<Eigen::MatrixXcd> basis;
  for (const auto& b : closure.basis) basis.push_back(b.entries());
  std::vector<kernels::IndexPair> pairs;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(basis.size()); ++j) pairs.emplace_back(i, j);
  }
  const auto run = [&](Exec e) {
    return best_of(repeats, [&] { kernels::commutator_batch(basis, pairs, e); });
  };
  report("commutator_batch (1128 x 7x7)", run(Exec::serial), run(Exec::openmp));
}

void bench_gradient(int repeats) {
  const SystemSpec spec = explicit_example_spec(5);
  kernels::SegmentModel model;
  model.drift = build_h0(spec).entries().diagonal().real();
  model.control = build_hi(spec).entries().real();
  model.hbar = kHbarEvSeconds;

  const int segments = 400;
  const double dt = 200.0 * kHbarEvSeconds / segments;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  std::vector<double> dts(segments, dt), amps(segments);
  for (double& a : amps) a = u(rng);

  const auto initial = StateVector::basis_state(9, 0).amplitudes();
  const auto target = random_state(9, 11).amplitudes();
  std::vector<Eigen::VectorXcd> forward(segments + 1), backward(segments + 1);
  std::vector<Eigen::MatrixXcd> props(segments);
  for (int k = 0; k < segments; ++k) props[k] = kernels::segment_propagator(model, amps[k], dt);
  forward[0] = initial;
  for (int k = 0; k < segments; ++k) forward[k + 1] = props[k] * forward[k];
  backward[segments] = target;
  for (int k = segments; k > 0; --k) backward[k - 1] = props[k - 1].adjoint() * backward[k];

  const auto run = [&](Exec e) {
    return best_of(repeats, [&] {
      kernels::segment_fd_gradient(model, dts, amps, forward, backward, 1e-6, e);
    });
  };
  report("segment_fd_gradient (400 seg)", run(Exec::serial), run(Exec::openmp));
}

void bench_sweep(int repeats) {
  const SystemSpec spec = load_spec(QDC_DATA_DIR "/excitation_g1e-22.json");
  const StateVector state(Eigen::Vector3cd(std::sqrt(0.5), 0.5, 0.5));
  const auto taus = log_spaced(1e-15, 1e-12, 24);
  const auto run = [&](Exec e) {
    SweepOptions o;
    o.with_exact = true;
    o.exec = e;
    return best_of(repeats, [&] { sweep_tau(spec, state, taus, o); });
  };
  report("sweep_tau exact (24 taus)", run(Exec::serial), run(Exec::openmp));
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("OpenMP threads: %d, best of %d\n", omp_get_max_threads(), repeats);
  bench_commutators(repeats);
  bench_gradient(repeats);
  bench_sweep(repeats);
  return 0;
}
