#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ramanecho/units.hpp"

namespace ramanecho {

using Vector3 = Eigen::Vector3d;

// A beam: unit propagation direction plus optical angular frequency (rad/s).
// The wavevector magnitude is omega/c (rad/m).
struct WaveVector {
  Vector3 direction = Vector3::UnitZ();
  double omega = 0.0;

  WaveVector() = default;
  WaveVector(const Vector3& dir, double omega_rad_per_s) : direction(dir), omega(omega_rad_per_s) {
    if (omega <= 0.0) throw std::invalid_argument("WaveVector: omega must be > 0");
    const double n = direction.norm();
    if (std::abs(n - 1.0) > 1e-12) {
      if (n == 0.0) throw std::invalid_argument("WaveVector: zero direction");
      direction /= n;
    }
  }

  Vector3 k() const { return direction * (omega / speed_of_light); }
};

// Beams of the protocol: data probe, data/rephasing coupling, readout coupling.
struct BeamGeometry {
  WaveVector k_P;
  WaveVector k_C1;
  WaveVector k_C2;
};

enum class GeometryClass { backward_conjugate, forward, noncollinear, mismatched };

inline std::string to_string(GeometryClass c) {
  switch (c) {
    case GeometryClass::backward_conjugate: return "backward_conjugate";
    case GeometryClass::forward: return "forward";
    case GeometryClass::noncollinear: return "noncollinear";
    default: return "mismatched";
  }
}

struct EchoGeometry {
  Vector3 k_E_vector = Vector3::Zero();  // rad/m, unnormalized vector sum
  double omega_E = 0.0;                  // rad/s
  double mismatch = 0.0;                 // | |k_E| - omega_E/c |, rad/m
  GeometryClass classification = GeometryClass::mismatched;
};

// Wavevector of the spin grating written by the data pulse, K = k_P - k_C1.
// The grating is frozen: nothing between writing and readout changes it.
inline Vector3 spin_grating_wavevector(const WaveVector& k_p, const WaveVector& k_c1) {
  return k_p.k() - k_c1.k();
}

inline GeometryClass classify_geometry(const EchoGeometry& e, const Vector3& probe_direction,
                                       double tol = 1e-6) {
  const double k_mag = e.omega_E / speed_of_light;
  if (e.mismatch > tol * k_mag) return GeometryClass::mismatched;
  const double norm = e.k_E_vector.norm();
  if (norm == 0.0) return GeometryClass::mismatched;
  const double cosine = e.k_E_vector.dot(probe_direction) / norm;
  if (1.0 + cosine <= tol) return GeometryClass::backward_conjugate;
  if (1.0 - cosine <= tol) return GeometryClass::forward;
  return GeometryClass::noncollinear;
}

// Echo direction and frequency from wavevector/energy conservation:
// k_E = k_P - k_C1 + k_C2, omega_E = omega_P - omega_C1 + omega_C2.
// The mismatch measures how far |k_E| is from the free-propagation value.
inline EchoGeometry echo_wavevector(const BeamGeometry& g, double tol = 1e-6) {
  EchoGeometry e;
  e.omega_E = g.k_P.omega - g.k_C1.omega + g.k_C2.omega;
  if (e.omega_E <= 0.0) throw std::invalid_argument("echo_wavevector: omega_E must be > 0");
  e.k_E_vector = g.k_P.k() - g.k_C1.k() + g.k_C2.k();
  e.mismatch = std::abs(e.k_E_vector.norm() - e.omega_E / speed_of_light);
  e.classification = classify_geometry(e, g.k_P.direction, tol);
  return e;
}

inline double phase_mismatch(const EchoGeometry& e) { return e.mismatch; }

}  // namespace ramanecho
