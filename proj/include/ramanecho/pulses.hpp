#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramanecho/density_matrix.hpp"
#include "ramanecho/units.hpp"

namespace ramanecho {

enum class Leg { probe, coupling };          // probe drives |1>-|3>, coupling drives |2>-|3>
enum class Envelope { rect };
enum class PulseLabel { D, R1, R2, C2, custom };

inline std::string to_string(PulseLabel l) {
  switch (l) {
    case PulseLabel::D: return "D";
    case PulseLabel::R1: return "R1";
    case PulseLabel::R2: return "R2";
    case PulseLabel::C2: return "C2";
    default: return "custom";
  }
}

inline PulseLabel pulse_label_from_string(const std::string& s) {
  if (s == "D") return PulseLabel::D;
  if (s == "R1") return PulseLabel::R1;
  if (s == "R2") return PulseLabel::R2;
  if (s == "C2") return PulseLabel::C2;
  return PulseLabel::custom;
}

// One rectangular drive on one optical leg. Amplitude is angular (rad/us),
// phase in rad, support is the half-open interval [t_start, t_start+duration).
struct PulseSegment {
  Leg leg = Leg::probe;
  double amplitude = 0.0;
  double phase = 0.0;
  double t_start = 0.0;
  double duration = 0.0;
  Envelope envelope = Envelope::rect;
  std::string k_label;

  double t_end() const { return t_start + duration; }
  bool contains(double t) const { return t >= t_start && t < t_end(); }
  complexd complex_amplitude() const { return std::polar(amplitude, phase); }
};

// A two-color Raman pulse: probe and coupling legs switched together.
// C2 (the optical readout) carries only the coupling leg.
struct RamanPulse {
  PulseLabel label = PulseLabel::custom;
  std::optional<PulseSegment> probe;
  std::optional<PulseSegment> coupling;

  double t_start() const {
    double t = std::numeric_limits<double>::infinity();
    if (probe) t = std::min(t, probe->t_start);
    if (coupling) t = std::min(t, coupling->t_start);
    return t;
  }
  double t_end() const {
    double t = -std::numeric_limits<double>::infinity();
    if (probe) t = std::max(t, probe->t_end());
    if (coupling) t = std::max(t, coupling->t_end());
    return t;
  }
  double center() const { return (t_start() + t_end()) / 2.0; }
};

struct Sequence {
  std::vector<RamanPulse> pulses;
  double total_span = 0.0;
};

// Instantaneous complex Rabi amplitudes on the two legs.
struct DriveSample {
  complexd omega_p{0.0, 0.0};
  complexd omega_c{0.0, 0.0};
  bool is_zero() const { return omega_p == complexd{0.0, 0.0} && omega_c == complexd{0.0, 0.0}; }
};

inline double generalized_rabi(double omega_p, double omega_c) {
  return std::hypot(omega_p, omega_c);
}

// Area of a rectangular pulse: Omega_R * duration when both legs are present,
// Omega * duration for a single leg.
inline double pulse_area(const RamanPulse& p) {
  if (p.probe && p.coupling)
    return generalized_rabi(p.probe->amplitude, p.coupling->amplitude) * p.probe->duration;
  if (p.probe) return p.probe->amplitude * p.probe->duration;
  if (p.coupling) return p.coupling->amplitude * p.coupling->duration;
  return 0.0;
}

// Duration giving area 2(2n-1)pi, the n-th complete-transfer pulse length.
inline double solve_duration_for_area(double omega_r, int n) {
  if (omega_r <= 0.0) throw std::invalid_argument("solve_duration_for_area: omega_r must be > 0");
  if (n < 1) throw std::invalid_argument("solve_duration_for_area: n must be >= 1");
  return 2.0 * (2.0 * n - 1.0) * M_PI / omega_r;
}

inline RamanPulse make_raman_pulse(PulseLabel label, double omega_p, double omega_c,
                                   double t_start, double duration,
                                   double phase_p = 0.0, double phase_c = 0.0,
                                   const std::string& k_probe = "kP",
                                   const std::string& k_coupling = "kC1") {
  if (duration <= 0.0) throw std::invalid_argument("make_raman_pulse: duration must be > 0");
  if (omega_p < 0.0 || omega_c < 0.0)
    throw std::invalid_argument("make_raman_pulse: amplitudes must be >= 0");
  if (label == PulseLabel::C2 && omega_p != 0.0)
    throw std::invalid_argument("make_raman_pulse: C2 is coupling-only, probe leg not allowed");
  RamanPulse p;
  p.label = label;
  if (label != PulseLabel::C2)
    p.probe = PulseSegment{Leg::probe, omega_p, phase_p, t_start, duration, Envelope::rect, k_probe};
  p.coupling = PulseSegment{Leg::coupling, omega_c, phase_c, t_start, duration, Envelope::rect, k_coupling};
  return p;
}

// Sum of active segments per leg at time t; zero outside all segments.
inline DriveSample drive_at(const Sequence& seq, double t) {
  DriveSample d;
  for (const auto& pulse : seq.pulses) {
    if (pulse.probe && pulse.probe->contains(t)) d.omega_p += pulse.probe->complex_amplitude();
    if (pulse.coupling && pulse.coupling->contains(t)) d.omega_c += pulse.coupling->complex_amplitude();
  }
  return d;
}

// All violations found, empty if the sequence is well formed.
inline std::vector<std::string> validate_sequence(const Sequence& seq) {
  std::vector<std::string> v;
  auto seg_check = [&v](const PulseSegment& s, const std::string& where) {
    if (s.duration <= 0.0) v.push_back(where + ": duration must be > 0");
    if (s.amplitude < 0.0) v.push_back(where + ": amplitude must be >= 0");
  };
  for (size_t i = 0; i < seq.pulses.size(); ++i) {
    const auto& p = seq.pulses[i];
    const std::string name = "pulse[" + std::to_string(i) + "](" + to_string(p.label) + ")";
    if (!p.probe && !p.coupling) {
      v.push_back(name + ": no segments");
      continue;
    }
    if (p.probe) seg_check(*p.probe, name + ".probe");
    if (p.coupling) seg_check(*p.coupling, name + ".coupling");
    if (p.label == PulseLabel::C2 && p.probe)
      v.push_back(name + ": C2 must be coupling-only");
    if ((p.label == PulseLabel::D || p.label == PulseLabel::R1 || p.label == PulseLabel::R2) &&
        (!p.probe || !p.coupling))
      v.push_back(name + ": D/R1/R2 must carry both legs");
    if (p.probe && p.coupling &&
        (p.probe->t_start != p.coupling->t_start || p.probe->duration != p.coupling->duration))
      v.push_back(name + ": legs not time-aligned");
    if (p.t_end() > seq.total_span)
      v.push_back(name + ": extends past total_span");
  }
  for (size_t i = 0; i < seq.pulses.size(); ++i) {
    for (size_t j = i + 1; j < seq.pulses.size(); ++j) {
      const auto& a = seq.pulses[i];
      const auto& b = seq.pulses[j];
      if (a.t_start() < b.t_end() && b.t_start() < a.t_end())
        v.push_back("pulse[" + std::to_string(i) + "] overlaps pulse[" + std::to_string(j) + "]");
    }
  }
  return v;
}

// Segment start/end times, sorted and deduplicated; integration steps and
// drive lookups must never straddle these.
inline std::vector<double> segment_boundaries(const Sequence& seq) {
  std::vector<double> b;
  for (const auto& p : seq.pulses) {
    for (const auto* s : {p.probe ? &*p.probe : nullptr, p.coupling ? &*p.coupling : nullptr}) {
      if (!s) continue;
      b.push_back(s->t_start);
      b.push_back(s->t_end());
    }
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(),
                      [](double x, double y) { return std::abs(x - y) < 1e-12; }),
          b.end());
  return b;
}

}  // namespace ramanecho
