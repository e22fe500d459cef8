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

#include "qdc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qdc/errors.hpp"

namespace qdc {
namespace {

constexpr Complex kI(0.0, 1.0);
constexpr long kMaxExactSteps = 2'000'000'000L;

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_metadata(std::ostream& out, std::span<const std::string> metadata) {
  for (const auto& line : metadata) out << "# " << line << '\n';
}

void require_state_dim(const SystemSpec& spec, const StateVector& state) {
  if (state.dim() != spec.dimension()) {
    throw ShapeError("state has " + std::to_string(state.dim()) + " amplitudes, system has " +
                     std::to_string(spec.dimension()) + " states");
  }
}

double schedule_fidelity(const kernels::SegmentModel& model, std::span<const double> dts,
                         std::span<const double> amplitudes, const Eigen::VectorXcd& initial,
                         const Eigen::VectorXcd& target) {
  Eigen::VectorXcd psi = initial;
  for (std::size_t k = 0; k < dts.size(); ++k) {
    psi = kernels::segment_propagator(model, amplitudes[k], dts[k]) * psi;
  }
  return std::norm(target.dot(psi));
}

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  const double n = amplitudes_.norm();
  if (!(std::abs(n - 1.0) <= kNormTolerance)) {
    throw ContractError("state vector is not normalized (norm " + format17(n) + ")");
  }
}

StateVector StateVector::normalized(Eigen::VectorXcd amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ContractError("cannot normalize a zero state");
  return StateVector(amplitudes / n);
}

StateVector StateVector::basis_state(int dim, int position) {
  if (position < 0 || position >= dim) throw IndexError("basis state out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(position) = 1.0;
  return StateVector(std::move(v));
}

StateVector random_state(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return StateVector::normalized(std::move(v));
}

std::string to_string(CoefficientVariant variant) {
  return variant == CoefficientVariant::corrected ? "corrected" : "as_printed";
}

Eigen::VectorXcd first_order_coefficients(const SystemSpec& spec, const StateVector& state,
                                          double tau, CoefficientVariant variant) {
  spec.validate();
  require_state_dim(spec, state);
  if (!(tau >= 0.0)) throw std::invalid_argument("relaxation time must be >= 0");
  const int levels = spec.levels;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(spec.dimension());
  if (tau == 0.0) return out;

  const Eigen::MatrixXcd he = build_he(spec).entries();
  const double hbar = kHbarEvSeconds;
  const double log2 = std::numbers::ln2;
  const auto energy = [&](int n) { return spec.energies[static_cast<std::size_t>(n - 1)]; };
  const auto amp = [&](int n, int k) -> Complex {
    if (k > degeneracy(n)) return 0.0;
    return state[flatten({n, k}, levels)];
  };
  const auto g = [&](int m, int k, int n, int p) {
    return he(flatten({m, k}, levels), flatten({n, p}, levels));
  };
  // E_{m,n}(tau) (1 - exp(i w_{mn} tau ln2) / 2)
  const auto neighbour_factor = [&](int m, int n) {
    const double de = energy(m) - energy(n);
    const Complex propagator = 1.0 / Complex(de, hbar / tau);
    return propagator * (1.0 - 0.5 * std::exp(kI * (de / hbar) * tau * log2));
  };
  const Complex same_level = tau / (2.0 * kI * hbar);

  for (int m = 1; m <= levels; ++m) {
    for (int k = 1; k <= degeneracy(m); ++k) {
      Complex c = 0.0;
      if (m > 1) {
        const Complex f = neighbour_factor(m, m - 1);
        for (int p = 1; p <= degeneracy(m - 1); ++p) {
          const Complex a = variant == CoefficientVariant::as_printed ? amp(m - 1, k) : amp(m - 1, p);
          c += f * a * g(m, k, m - 1, p);
        }
      }
      for (int p = 1; p <= degeneracy(m); ++p) c += same_level * amp(m, p) * g(m, k, m, p);
      if (m < levels) {
        const Complex f = neighbour_factor(m, m + 1);
        for (int p = 1; p <= degeneracy(m + 1); ++p) {
          const Complex a = variant == CoefficientVariant::as_printed ? amp(m + 1, k) : amp(m + 1, p);
          c += f * a * g(m, k, m + 1, p);
        }
      }
      out(flatten({m, k}, levels)) = c;
    }
  }
  return out;
}

double fidelity_perturbative(const SystemSpec& spec, const StateVector& state, double tau,
                             CoefficientVariant variant) {
  const Eigen::VectorXcd psi_i =
      state.amplitudes() + first_order_coefficients(spec, state, tau, variant);
  const double norm2 = psi_i.squaredNorm();
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw NumericError("perturbed state has zero or non-finite norm");
  }
  return std::norm(state.amplitudes().dot(psi_i)) / norm2;
}

double default_exact_step(const SystemSpec& spec) {
  const Eigen::MatrixXcd he = build_he(spec).entries();
  const Eigen::MatrixXcd h0 = build_h0(spec).entries();
  double rate = 0.0;
  for (Eigen::Index a = 0; a < he.rows(); ++a) {
    for (Eigen::Index b = 0; b < he.cols(); ++b) {
      if (he(a, b) == 0.0) continue;
      rate = std::max(rate, std::abs(h0(a, a).real() - h0(b, b).real()));
      rate = std::max(rate, std::abs(he(a, b)));
    }
  }
  if (rate == 0.0) rate = spec.energies.back() - spec.energies.front();
  return 0.02 * kHbarEvSeconds / rate;
}

double fidelity_exact(const SystemSpec& spec, const StateVector& state, double tau, double dt_max) {
  spec.validate();
  require_state_dim(spec, state);
  if (!(tau >= 0.0)) throw std::invalid_argument("relaxation time must be >= 0");
  if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");
  if (tau == 0.0) return 1.0;

  const double horizon = tau * std::numbers::ln2;
  const double cap = std::min(dt_max, tau / 1000.0);
  const double steps_real = std::ceil(horizon / cap);
  if (!std::isfinite(steps_real) || steps_real > static_cast<double>(kMaxExactSteps)) {
    throw NumericError("exact integration needs too many steps; raise dt_max");
  }
  const long steps = std::max(1L, static_cast<long>(steps_real));
  const double h = horizon / static_cast<double>(steps);
  if (!(h > 0.0) || !std::isnormal(h)) return 1.0;  // tau -> 0 limit

  const Eigen::MatrixXcd he = build_he(spec).entries();
  const int d = spec.dimension();
  Eigen::VectorXd energies(d);
  const double mean = build_h0(spec).entries().diagonal().real().mean();
  for (int i = 0; i < d; ++i) energies(i) = spec.energies[static_cast<std::size_t>(unflatten(i, spec.levels).n - 1)] - mean;
  const double hbar = kHbarEvSeconds;

  // d psi_I / ds = -(i/hbar) e^{-s/tau} P(s) H_e P(s)^* psi_I,  P(s) = diag(e^{i E s / hbar})
  Eigen::VectorXcd phase(d);
  const auto rhs = [&](double s, const Eigen::VectorXcd& psi) -> Eigen::VectorXcd {
    for (int i = 0; i < d; ++i) phase(i) = std::polar(1.0, energies(i) * s / hbar);
    Eigen::VectorXcd v = he * phase.conjugate().cwiseProduct(psi);
    return (-kI * std::exp(-s / tau) / hbar) * phase.cwiseProduct(v);
  };

  Eigen::VectorXcd psi = state.amplitudes();
  for (long n = 0; n < steps; ++n) {
    const double s = static_cast<double>(n) * h;
    const Eigen::VectorXcd k1 = rhs(s, psi);
    const Eigen::VectorXcd k2 = rhs(s + 0.5 * h, psi + 0.5 * h * k1);
    const Eigen::VectorXcd k3 = rhs(s + 0.5 * h, psi + 0.5 * h * k2);
    const Eigen::VectorXcd k4 = rhs(s + h, psi + h * k3);
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const double norm2 = psi.squaredNorm();
  if (!std::isfinite(norm2) || norm2 == 0.0) throw NumericError("exact integration diverged");
  return std::norm(state.amplitudes().dot(psi)) / norm2;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (n < 1 || !(lo > 0.0) || !(hi > 0.0)) {
    throw std::invalid_argument("log grid needs n >= 1 and positive bounds");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) return {lo};
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < n; ++i) out.push_back(std::pow(10.0, a + (b - a) * i / (n - 1)));
  out.front() = lo;
  out.back() = hi;
  return out;
}

void write_csv(std::ostream& out, const FidelityCurve& curve, std::span<const std::string> metadata) {
  write_metadata(out, metadata);
  out << "tau,F_pert,F_exact\n";
  for (const auto& s : curve.samples) {
    out << format17(s.tau) << ',' << format17(s.f_perturbative) << ',';
    if (s.f_exact) out << format17(*s.f_exact);
    out << '\n';
  }
}

PulseSchedule PulseSchedule::uniform(double duration, std::span<const double> amplitudes) {
  PulseSchedule s;
  s.duration = duration;
  const double dt = duration / static_cast<double>(amplitudes.size());
  for (double a : amplitudes) s.segments.push_back({dt, a});
  return s;
}

void PulseSchedule::validate() const {
  if (segments.empty()) throw ContractError("pulse schedule has no segments");
  double total = 0.0;
  for (const auto& seg : segments) {
    if (!(seg.dt > 0.0)) throw ContractError("pulse segment with non-positive dt");
    if (!std::isfinite(seg.amplitude)) throw ContractError("non-finite pulse amplitude");
    total += seg.dt;
  }
  if (!(std::abs(total - duration) <= 1e-12 * std::abs(duration))) {
    throw ContractError("segment durations do not sum to the schedule duration");
  }
}

void write_csv(std::ostream& out, const PulseSchedule& schedule,
               std::span<const std::string> metadata) {
  write_metadata(out, metadata);
  out << "t_start,dt,amplitude\n";
  double t = 0.0;
  for (const auto& seg : schedule.segments) {
    out << format17(t) << ',' << format17(seg.dt) << ',' << format17(seg.amplitude) << '\n';
    t += seg.dt;
  }
}

kernels::SegmentModel segment_model(const SystemSpec& spec) {
  kernels::SegmentModel model;
  model.drift = build_h0(spec).entries().diagonal().real();
  model.control = build_hi(spec).entries().real();
  model.hbar = kHbarEvSeconds;
  return model;
}

StateVector evolve_piecewise(const SystemSpec& spec, const StateVector& initial,
                             const PulseSchedule& schedule) {
  spec.validate();
  require_state_dim(spec, initial);
  schedule.validate();
  const auto model = segment_model(spec);
  Eigen::VectorXcd psi = initial.amplitudes();
  for (const auto& seg : schedule.segments) {
    psi = kernels::segment_propagator(model, seg.amplitude, seg.dt) * psi;
  }
  return StateVector(std::move(psi));
}

double transfer_fidelity(const SystemSpec& spec, const StateVector& initial,
                         const StateVector& target, const PulseSchedule& schedule) {
  require_state_dim(spec, target);
  return std::norm(target.amplitudes().dot(evolve_piecewise(spec, initial, schedule).amplitudes()));
}

PulseSchedule optimize_pulse(const SystemSpec& spec, const StateVector& initial,
                             const StateVector& target, const OptimizerOptions& options) {
  spec.validate();
  require_state_dim(spec, initial);
  require_state_dim(spec, target);
  if (options.n_segments < 1) throw std::invalid_argument("need at least one segment");
  if (!(options.duration > 0.0)) throw std::invalid_argument("duration must be positive");
  if (options.iterations < 0) throw std::invalid_argument("iterations must be >= 0");

  const auto model = segment_model(spec);
  const double scale = energy_gaps(spec).front();
  const double fd_step = 1e-6 * scale;
  const auto k_count = static_cast<std::size_t>(options.n_segments);
  const std::vector<double> dts(k_count, options.duration / static_cast<double>(k_count));

  const Eigen::VectorXcd& psi0 = initial.amplitudes();
  const Eigen::VectorXcd& chi = target.amplitudes();
  const std::vector<double> zero(k_count, 0.0);
  const double zero_fidelity = schedule_fidelity(model, dts, zero, psi0, chi);
  if (zero_fidelity >= options.stop_fidelity) {
    PulseSchedule out = PulseSchedule::uniform(options.duration, zero);
    out.achieved_fidelity = zero_fidelity;
    return out;
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-0.1 * scale, 0.1 * scale);
  std::vector<double> amps(k_count);
  for (auto& a : amps) a = uniform(rng);
  double fidelity = schedule_fidelity(model, dts, amps, psi0, chi);

  std::vector<Eigen::VectorXcd> forward(k_count + 1), backward(k_count + 1);
  std::vector<Eigen::MatrixXcd> props(k_count);
  std::vector<double> trial(k_count), direction(k_count, 0.0), prev_grad;
  double rate = 0.0;  // step length along the direction, amplitude units per gradient unit

  for (int iter = 0; iter < options.iterations && fidelity < options.stop_fidelity; ++iter) {
    for (std::size_t k = 0; k < k_count; ++k) {
      props[k] = kernels::segment_propagator(model, amps[k], dts[k]);
    }
    forward[0] = psi0;
    for (std::size_t k = 0; k < k_count; ++k) forward[k + 1] = props[k] * forward[k];
    backward[k_count] = chi;
    for (std::size_t k = k_count; k > 0; --k) backward[k - 1] = props[k - 1].adjoint() * backward[k];

    const auto grad = kernels::segment_fd_gradient(model, dts, amps, forward, backward, fd_step,
                                                   options.exec);
    double gmax = 0.0, gg = 0.0;
    for (double g : grad) {
      gmax = std::max(gmax, std::abs(g));
      gg += g * g;
    }
    if (gmax == 0.0) break;
    if (rate == 0.0) rate = 0.1 * scale / gmax;

    // Polak-Ribiere+ direction; plain gradient on the first pass or when not ascending.
    double beta = 0.0;
    if (!prev_grad.empty()) {
      double num = 0.0, den = 0.0;
      for (std::size_t k = 0; k < k_count; ++k) {
        num += grad[k] * (grad[k] - prev_grad[k]);
        den += prev_grad[k] * prev_grad[k];
      }
      beta = den > 0.0 ? std::max(0.0, num / den) : 0.0;
    }
    double slope = 0.0;
    for (std::size_t k = 0; k < k_count; ++k) {
      direction[k] = grad[k] + beta * direction[k];
      slope += direction[k] * grad[k];
    }
    if (!(slope > 0.0)) direction = grad;
    prev_grad = grad;

    bool improved = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      for (std::size_t k = 0; k < k_count; ++k) trial[k] = amps[k] + rate * direction[k];
      const double f = schedule_fidelity(model, dts, trial, psi0, chi);
      if (f > fidelity) {
        amps.swap(trial);
        fidelity = f;
        improved = true;
        rate *= 2.0;
        break;
      }
      rate *= 0.5;
    }
    if (!improved) {
      if (beta == 0.0) break;
      prev_grad.clear();  // retry along the bare gradient next pass
      std::fill(direction.begin(), direction.end(), 0.0);
      rate = 0.1 * scale / gmax;
    }
  }

  if (zero_fidelity >= fidelity) {
    amps = zero;
    fidelity = zero_fidelity;
  }

  PulseSchedule out = PulseSchedule::uniform(options.duration, amps);
  out.achieved_fidelity = fidelity;
  return out;
}

}  // namespace qdc
