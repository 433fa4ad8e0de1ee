#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramanecho/atom_params.hpp"
#include "ramanecho/density_matrix.hpp"
#include "ramanecho/pulses.hpp"

namespace ramanecho {

// Integration produced a non-finite or unphysical state.
struct NumericError : std::runtime_error {
  double time_us;
  NumericError(const std::string& what, double t)
      : std::runtime_error(what + " at t = " + std::to_string(t) + " us"), time_us(t) {}
};

// Rotating-frame generator H/hbar in rad/us. Couplings carry the half-amplitude
// convention, so the pulse area integral(Omega_R dt) = 2 pi gives a complete
// ground-state swap with the excited state emptied.
inline Matrix3c build_hamiltonian(const DriveSample& d, const AtomParams& p) {
  Matrix3c h = Matrix3c::Zero();
  h(0, 2) = -d.omega_p / 2.0;
  h(2, 0) = -std::conj(d.omega_p) / 2.0;
  h(1, 2) = -d.omega_c / 2.0;
  h(2, 1) = -std::conj(d.omega_c) / 2.0;
  h(1, 1) = -p.delta;
  h(2, 2) = -p.Delta;
  return h;
}

// Population relaxation |3> -> |1>,|2> plus per-coherence dephasing. Traceless.
inline Matrix3c relaxation_rhs(const Matrix3c& rho, const AtomParams& p) {
  Matrix3c r = Matrix3c::Zero();
  const complexd r33 = rho(2, 2);
  r(0, 0) = p.Gamma31 * r33;
  r(1, 1) = p.Gamma32 * r33;
  r(2, 2) = -(p.Gamma31 + p.Gamma32) * r33;
  r(0, 1) = -p.gamma12 * rho(0, 1);
  r(1, 0) = std::conj(r(0, 1));
  r(0, 2) = -p.gamma13 * rho(0, 2);
  r(2, 0) = std::conj(r(0, 2));
  r(1, 2) = -p.gamma23 * rho(1, 2);
  r(2, 1) = std::conj(r(1, 2));
  return r;
}

// drho/dt = -i [H, rho] + R(rho).
inline Matrix3c total_rhs(const Matrix3c& rho, const DriveSample& d, const AtomParams& p) {
  const Matrix3c h = build_hamiltonian(d, p);
  const complexd minus_i(0.0, -1.0);
  return minus_i * (h * rho - rho * h) + relaxation_rhs(rho, p);
}

namespace detail {

// One classical RK4 step under a fixed Hamiltonian, followed by re-symmetrization.
inline void rk4_step_fixed(DensityMatrix& rho, const Matrix3c& h, const AtomParams& p, double dt) {
  const complexd minus_i(0.0, -1.0);
  auto rhs = [&](const Matrix3c& r) -> Matrix3c {
    return minus_i * (h * r - r * h) + relaxation_rhs(r, p);
  };
  const Matrix3c k1 = rhs(rho.m);
  const Matrix3c k2 = rhs(rho.m + (dt / 2.0) * k1);
  const Matrix3c k3 = rhs(rho.m + (dt / 2.0) * k2);
  const Matrix3c k4 = rhs(rho.m + dt * k3);
  rho.m += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  rho.symmetrize();
}

}  // namespace detail

// Target step for driven intervals: at least 800 steps per period of the
// fastest scale (generalized Rabi or detuning) and 200 per segment, capped
// at 2e-3 us. Keeps the RK4 global error well under 1e-8 for the pulse
// amplitudes used here.
inline double recommended_dt(double omega_r, double delta, double Delta, double segment_duration) {
  double dt = 2e-3;
  if (segment_duration > 0.0) dt = std::min(dt, segment_duration / 200.0);
  const double fast = std::max({omega_r, std::abs(delta), std::abs(Delta)});
  if (fast > 0.0) dt = std::min(dt, two_pi / (800.0 * fast));
  return dt;
}

// Single RK4 step against a drive schedule. The drive must be constant over
// [t, t+dt]; a step straddling a segment boundary is a caller error.
inline DensityMatrix rk4_step(const DensityMatrix& rho, double t, double dt,
                              const Sequence& drive, const AtomParams& p) {
  if (dt <= 0.0) throw std::invalid_argument("rk4_step: dt must be > 0");
  for (double b : segment_boundaries(drive)) {
    if (b > t + 1e-12 && b < t + dt - 1e-12)
      throw std::invalid_argument("rk4_step: step [" + std::to_string(t) + ", " +
                                  std::to_string(t + dt) + "] crosses segment boundary at " +
                                  std::to_string(b));
  }
  const DriveSample d = drive_at(drive, t + dt / 2.0);
  const Matrix3c h = build_hamiltonian(d, p);
  DensityMatrix out = rho;
  detail::rk4_step_fixed(out, h, p, dt);
  return out;
}

// Exact propagator for zero drive: the Hamiltonian is diagonal, so coherences
// pick up pure phases (and decay), populations follow the Gamma rate equations.
inline DensityMatrix propagate_field_free(const DensityMatrix& rho, double dt, const AtomParams& p) {
  if (dt < 0.0) throw std::invalid_argument("propagate_field_free: dt must be >= 0");
  DensityMatrix out = rho;
  const complexd i_unit(0.0, 1.0);
  out.m(0, 1) *= std::exp(-(i_unit * p.delta + p.gamma12) * dt);
  out.m(0, 2) *= std::exp(-(i_unit * p.Delta + p.gamma13) * dt);
  out.m(1, 2) *= std::exp(-(i_unit * (p.Delta - p.delta) + p.gamma23) * dt);
  out.m(1, 0) = std::conj(out.m(0, 1));
  out.m(2, 0) = std::conj(out.m(0, 2));
  out.m(2, 1) = std::conj(out.m(1, 2));
  const double big_gamma = p.Gamma31 + p.Gamma32;
  if (big_gamma > 0.0) {
    const complexd r33 = rho.m(2, 2);
    const double decay = std::exp(-big_gamma * dt);
    out.m(2, 2) = r33 * decay;
    out.m(0, 0) = rho.m(0, 0) + (p.Gamma31 / big_gamma) * r33 * (1.0 - decay);
    out.m(1, 1) = rho.m(1, 1) + (p.Gamma32 / big_gamma) * r33 * (1.0 - decay);
  }
  return out;
}

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

namespace detail {

inline void check_state(const DensityMatrix& rho, double t) {
  if (!rho.is_finite()) throw NumericError("non-finite density matrix", t);
  if (rho.trace_error() > 1e-9) throw NumericError("trace deviates from 1", t);
  if (rho.hermiticity_error() > 1e-12) throw NumericError("state not Hermitian", t);
  if (rho.min_eigenvalue() < -1e-7) throw NumericError("state not positive", t);
}

}  // namespace detail

// Piecewise integration of a drive schedule: RK4 inside pulse segments, exact
// field-free propagation between them. Snapshots are recorded on the uniform
// sample grid k * sample_interval. Deterministic: identical inputs give
// bit-identical output.
inline Trajectory integrate_sequence(const DensityMatrix& rho0, const Sequence& seq,
                                     const AtomParams& p, double sample_interval) {
  if (sample_interval <= 0.0)
    throw std::invalid_argument("integrate_sequence: sample_interval must be > 0");
  {
    const auto violations = validate_sequence(seq);
    if (!violations.empty()) {
      std::string msg = "integrate_sequence: invalid sequence:";
      for (const auto& v : violations) msg += "\n  " + v;
      throw std::invalid_argument(msg);
    }
  }

  const double span = seq.total_span;
  const long n_samples = static_cast<long>(std::floor(span / sample_interval + 1e-9)) + 1;
  std::vector<double> events;
  events.reserve(n_samples + 8);
  for (long k = 0; k < n_samples; ++k) events.push_back(k * sample_interval);
  for (double b : segment_boundaries(seq))
    if (b > 0.0 && b < span) events.push_back(b);
  events.push_back(span);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-12; }),
               events.end());

  Trajectory traj;
  traj.times.reserve(n_samples);
  traj.states.reserve(n_samples);

  DensityMatrix rho = rho0;
  rho.symmetrize();
  auto is_sample = [&](double t) {
    const double k = t / sample_interval;
    return std::abs(k - std::round(k)) < 1e-9 && std::round(k) < n_samples;
  };
  if (is_sample(0.0)) {
    detail::check_state(rho, 0.0);
    traj.times.push_back(0.0);
    traj.states.push_back(rho);
  }

  for (size_t e = 0; e + 1 < events.size(); ++e) {
    const double a = events[e];
    const double b = events[e + 1];
    const double mid = a + (b - a) / 2.0;
    const DriveSample d = drive_at(seq, mid);
    if (d.is_zero()) {
      rho = propagate_field_free(rho, b - a, p);
    } else {
      double seg_duration = b - a;
      for (const auto& pulse : seq.pulses) {
        if (pulse.t_start() <= mid && mid < pulse.t_end())
          seg_duration = std::max(seg_duration, pulse.t_end() - pulse.t_start());
      }
      const double omega_r = generalized_rabi(std::abs(d.omega_p), std::abs(d.omega_c));
      const double dt_target = recommended_dt(omega_r, p.delta, p.Delta, seg_duration);
      const long n = std::max(1L, static_cast<long>(std::ceil((b - a) / dt_target - 1e-12)));
      const double dt = (b - a) / n;
      const Matrix3c h = build_hamiltonian(d, p);
      for (long s = 0; s < n; ++s) detail::rk4_step_fixed(rho, h, p, dt);
    }
    if (is_sample(b)) {
      detail::check_state(rho, b);
      traj.times.push_back(b);
      traj.states.push_back(rho);
    }
  }
  return traj;
}

// Closed-form state for constant resonant drive (delta = Delta = 0, no decay)
// from rho(0) = |1><1|, real non-negative amplitudes. The state stays pure:
// rho = c c^dagger with the dark component frozen and the bright component
// Rabi-flopping to |3> at Omega_R.
inline DensityMatrix resonant_lambda_oracle(double omega_p, double omega_c, double t) {
  if (omega_p < 0.0 || omega_c < 0.0)
    throw std::invalid_argument("resonant_lambda_oracle: amplitudes must be >= 0");
  const double omega_r = generalized_rabi(omega_p, omega_c);
  if (omega_r <= 0.0) throw std::invalid_argument("resonant_lambda_oracle: Omega_R must be > 0");
  const double half = omega_r * t / 2.0;
  const double c = std::cos(half);
  const double s = std::sin(half);
  Eigen::Vector3cd amp;
  amp(0) = (omega_c * omega_c + omega_p * omega_p * c) / (omega_r * omega_r);
  amp(1) = (omega_p * omega_c / (omega_r * omega_r)) * (c - 1.0);
  amp(2) = complexd(0.0, 1.0) * (omega_p / omega_r) * s;
  DensityMatrix rho;
  rho.m = amp * amp.adjoint();
  return rho;
}

}  // namespace ramanecho
