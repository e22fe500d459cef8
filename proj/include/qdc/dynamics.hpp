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

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qdc/exec.hpp"
#include "qdc/hamiltonians.hpp"
#include "qdc/kernels.hpp"

namespace qdc {

inline constexpr double kNormTolerance = 1e-10;

/// Normalized amplitudes C_{np} in the level basis.
class StateVector {
 public:
  /// Throws ContractError unless | ||amplitudes|| - 1 | <= kNormTolerance.
  explicit StateVector(Eigen::VectorXcd amplitudes);

  static StateVector normalized(Eigen::VectorXcd amplitudes);
  static StateVector basis_state(int dim, int position);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_(i); }

 private:
  Eigen::VectorXcd amplitudes_;
};

/// Uniformly distributed pure state (normalized complex Gaussian vector).
StateVector random_state(int dim, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Relaxation of the excitation field
//
// After the target |psi(T)> is reached the excitation field decays as
// H(t) = H_0 + exp(-(t-T)/tau) H_e; the state is compared with the target at
// the half-decay time T_e = T + tau ln 2.

enum class CoefficientVariant {
  // Neighbour-level terms use C_{m-1,k}(T) and C_{m+1,k}(T) inside the sums
  // over p; an amplitude label that does not exist (k = 2 on the ground
  // level) contributes zero.
  as_printed,
  // Neighbour-level terms use C_{m-1,p}(T) and C_{m+1,p}(T), which is plain
  // first-order time-dependent perturbation theory.
  corrected,
};

std::string to_string(CoefficientVariant variant);

/// First-order corrections C^(1)_{mk}(T_e) in basis order. tau = 0 gives zeros.
/// Throws std::invalid_argument for tau < 0.
Eigen::VectorXcd first_order_coefficients(const SystemSpec& spec, const StateVector& state,
                                          double tau,
                                          CoefficientVariant variant = CoefficientVariant::as_printed);

/// |<psi(T)|psi_I(T_e)>|^2 / <psi_I(T_e)|psi_I(T_e)> with
/// psi_I = C + C^(1).
double fidelity_perturbative(const SystemSpec& spec, const StateVector& state, double tau,
                             CoefficientVariant variant = CoefficientVariant::as_printed);

/// Step bound for fidelity_exact that resolves the fastest interaction-picture
/// phase and the coupling strength: 0.02 hbar / max(|E_a - E_b|, |g_ab|) over
/// nonzero excitation couplings.
double default_exact_step(const SystemSpec& spec);

/// Fidelity from integrating the decaying-field Schrödinger equation in the
/// interaction picture (free H_0 phases removed) with classical RK4 from T to
/// T_e. The step is the largest of equal steps not exceeding dt_max or tau/1000.
/// Returns 1 for tau = 0 or when the step underflows.
double fidelity_exact(const SystemSpec& spec, const StateVector& state, double tau, double dt_max);

struct FidelitySample {
  double tau = 0.0;
  double f_perturbative = 1.0;
  std::optional<double> f_exact;
};

struct FidelityCurve {
  std::vector<FidelitySample> samples;
};

struct SweepOptions {
  bool with_exact = false;
  std::optional<double> dt_max;  // default_exact_step(spec) when empty
  CoefficientVariant variant = CoefficientVariant::as_printed;
  Exec exec = Exec::openmp;
};

/// Fidelity at each tau (independent points, evaluated in parallel under
/// Exec::openmp). Throws std::invalid_argument for an empty grid or tau < 0.
FidelityCurve sweep_tau(const SystemSpec& spec, const StateVector& state,
                        std::span<const double> taus, const SweepOptions& options = {});

/// n points from lo to hi, evenly spaced in log10; n = 1 gives {lo}.
std::vector<double> log_spaced(double lo, double hi, int n);

/// CSV `tau,F_pert,F_exact`, 17 significant digits, preceded by `# ` lines.
void write_csv(std::ostream& out, const FidelityCurve& curve,
               std::span<const std::string> metadata = {});

// ---------------------------------------------------------------------------
// Direct control: H = H_0 + f(t) H_I with piecewise-constant f.

struct PulseSegment {
  double dt = 0.0;         // s
  double amplitude = 0.0;  // eV
};

struct PulseSchedule {
  double duration = 0.0;
  std::vector<PulseSegment> segments;
  double achieved_fidelity = 0.0;

  /// n equal segments with the given amplitudes.
  static PulseSchedule uniform(double duration, std::span<const double> amplitudes);

  /// Throws ContractError unless every dt > 0 and the dts sum to duration
  /// within 1e-12 relative.
  void validate() const;
};

/// CSV `t_start,dt,amplitude`, 17 significant digits.
void write_csv(std::ostream& out, const PulseSchedule& schedule,
               std::span<const std::string> metadata = {});

kernels::SegmentModel segment_model(const SystemSpec& spec);

/// Applies the segment propagators exp(-i dt_k (H_0 + f_k H_I) / hbar) in time
/// order.
StateVector evolve_piecewise(const SystemSpec& spec, const StateVector& initial,
                             const PulseSchedule& schedule);

/// |<target| U(schedule) |initial>|^2.
double transfer_fidelity(const SystemSpec& spec, const StateVector& initial,
                         const StateVector& target, const PulseSchedule& schedule);

struct OptimizerOptions {
  int n_segments = 40;
  double duration = 0.0;  // s; required
  int iterations = 2000;
  std::uint64_t seed = 0;
  double stop_fidelity = 1.0 - 1e-8;
  Exec exec = Exec::openmp;
};

/// Gradient ascent on |<target|U(f)|initial>|^2 over the segment amplitudes,
/// with central finite-difference gradients (step 1e-6 mu_1) and a
/// backtracking line search. The initial amplitudes are uniform in
/// [-0.1, 0.1] mu_1 from `seed`. Returns the best schedule found.
PulseSchedule optimize_pulse(const SystemSpec& spec, const StateVector& initial,
                             const StateVector& target, const OptimizerOptions& options);

}  // namespace qdc
