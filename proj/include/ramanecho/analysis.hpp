#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramanecho/ensemble.hpp"

namespace ramanecho {

enum class EchoKind { spin_echo, optical_readout };

inline std::string to_string(EchoKind k) {
  return k == EchoKind::spin_echo ? "spin_echo" : "optical_readout";
}

// A detected coherence revival (|<rho12>| peak) or readout transient
// (|Im <rho13>| peak), with the ensemble inversion status at the peak.
struct EchoEvent {
  double time = 0.0;       // us
  double amplitude = 0.0;
  bool inverted = false;   // averaged rho22 > rho11 at the peak
  EchoKind kind = EchoKind::spin_echo;
};

struct EchoTimes {
  double t_e1 = 0.0;
  double t_e2 = 0.0;
  bool degenerate = false;  // first echo coincides with or follows the second rephasing pulse
};

// Two-pulse rephasing: T_E1 = 2 T_R1 - T_D; the second rephasing reflects it
// again, T_E2 = 2 T_R2 - T_E1. Times refer to pulse centers.
inline EchoTimes predicted_echo_times(double t_d, double t_r1, double t_r2) {
  if (!(t_d < t_r1 && t_r1 < t_r2))
    throw std::invalid_argument("predicted_echo_times: need T_D < T_R1 < T_R2");
  EchoTimes e;
  e.t_e1 = 2.0 * t_r1 - t_d;
  e.t_e2 = 2.0 * t_r2 - e.t_e1;
  e.degenerate = e.t_e1 >= t_r2;
  return e;
}

namespace detail {

inline bool outside_supports(const Sequence& seq, double t) {
  for (const auto& p : seq.pulses) {
    if (p.probe && p.probe->contains(t)) return false;
    if (p.coupling && p.coupling->contains(t)) return false;
  }
  return true;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

inline size_t nearest_sample(const std::vector<double>& times, double t) {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0;
  if (it == times.end()) return times.size() - 1;
  const size_t hi = it - times.begin();
  return (t - times[hi - 1] <= times[hi] - t) ? hi - 1 : hi;
}

// Reference level for echo detection: median |<rho12>| over the 2 us
// following the data pulse (the first pulse when no pulse is labeled D).
inline double post_data_plateau(const EnsembleTrajectory& traj, const Sequence& seq) {
  double data_end = 0.0;
  bool found = false;
  for (const auto& p : seq.pulses) {
    if (p.label == PulseLabel::D) {
      data_end = p.t_end();
      found = true;
      break;
    }
  }
  if (!found && !seq.pulses.empty()) {
    data_end = std::numeric_limits<double>::infinity();
    for (const auto& p : seq.pulses) data_end = std::min(data_end, p.t_end());
  }
  std::vector<double> window;
  for (size_t i = 0; i < traj.size(); ++i)
    if (traj.times[i] >= data_end && traj.times[i] <= data_end + 2.0)
      window.push_back(traj.abs_rho12[i]);
  return median(std::move(window));
}

}  // namespace detail

// Local maxima of |<rho12>| outside pulse supports that exceed
// threshold_frac times the post-data-pulse plateau.
inline std::vector<EchoEvent> detect_spin_echoes(const EnsembleTrajectory& traj,
                                                 const Sequence& seq,
                                                 double threshold_frac = 0.5) {
  if (traj.size() < 3) return {};
  const double spacing = traj.times[1] - traj.times[0];
  if (spacing >= 0.2)
    throw std::invalid_argument("detect_spin_echoes: trajectory must be sampled finer than 0.2 us");
  const double threshold = threshold_frac * detail::post_data_plateau(traj, seq);
  std::vector<EchoEvent> events;
  for (size_t i = 1; i + 1 < traj.size(); ++i) {
    const double v = traj.abs_rho12[i];
    if (v < threshold) continue;
    if (!(v > traj.abs_rho12[i - 1] && v >= traj.abs_rho12[i + 1])) continue;
    if (!detail::outside_supports(seq, traj.times[i - 1]) ||
        !detail::outside_supports(seq, traj.times[i]) ||
        !detail::outside_supports(seq, traj.times[i + 1]))
      continue;
    events.push_back({traj.times[i], v, traj.rho22[i] > traj.rho11[i], EchoKind::spin_echo});
  }
  return events;
}

// Peak of |Im <rho13>| inside a readout window.
inline std::optional<EchoEvent> detect_optical_readout(const EnsembleTrajectory& traj,
                                                       double window_start, double window_end) {
  std::optional<EchoEvent> best;
  for (size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    if (t < window_start || t > window_end) continue;
    const double v = std::abs(traj.im_rho13[i]);
    if (!best || v > best->amplitude)
      best = EchoEvent{t, v, traj.rho22[i] > traj.rho11[i], EchoKind::optical_readout};
  }
  return best;
}

inline bool inversion_at(const EnsembleTrajectory& traj, double t) {
  if (traj.times.empty() || t < traj.times.front() - 1e-9 || t > traj.times.back() + 1e-9)
    throw std::out_of_range("inversion_at: time outside simulated span");
  const size_t i = detail::nearest_sample(traj.times, t);
  return traj.rho22[i] > traj.rho11[i];
}

struct ReadoutMetrics {
  double peak_im_rho13 = 0.0;
  double depletion_fraction = 0.0;
};

// Compares a run with the readout pulse against the same protocol without it.
// peak_im_rho13 is the largest |Im <rho13>| inside the readout window;
// depletion is the relative loss of |<rho12>| at the first sample past it.
inline ReadoutMetrics readout_metrics(const EnsembleTrajectory& with_c2,
                                      const EnsembleTrajectory& without_c2,
                                      double window_start, double window_end) {
  if (with_c2.size() != without_c2.size())
    throw std::invalid_argument("readout_metrics: trajectories must share the time grid");
  for (size_t i = 0; i < with_c2.size(); ++i)
    if (std::abs(with_c2.times[i] - without_c2.times[i]) > 1e-9)
      throw std::invalid_argument("readout_metrics: trajectories must share the time grid");

  ReadoutMetrics m;
  for (size_t i = 0; i < with_c2.size(); ++i) {
    const double t = with_c2.times[i];
    if (t >= window_start && t <= window_end)
      m.peak_im_rho13 = std::max(m.peak_im_rho13, std::abs(with_c2.im_rho13[i]));
  }
  size_t eval = with_c2.size();
  for (size_t i = 0; i < with_c2.size(); ++i) {
    if (with_c2.times[i] >= window_end - 1e-9) {
      eval = i;
      break;
    }
  }
  if (eval == with_c2.size())
    throw std::invalid_argument("readout_metrics: no sample at or after the window end");
  const double ref = without_c2.abs_rho12[eval];
  m.depletion_fraction = ref > 0.0 ? 1.0 - with_c2.abs_rho12[eval] / ref : 0.0;
  return m;
}

struct ConjugationFit {
  double max_residual = 0.0;  // rad
  double global_phase = 0.0;  // fitted phi0, reported not asserted
};

// Tests the rephasing property: a hard pulse conjugates every group's
// detuning-accumulated phase up to one global phase, so
// arg(rho12_after) + arg(rho12_before) should be constant across groups.
inline ConjugationFit conjugation_check(const std::vector<std::pair<double, complexd>>& before,
                                        const std::vector<std::pair<double, complexd>>& after) {
  if (before.size() != after.size() || before.empty())
    throw std::invalid_argument("conjugation_check: group lists must match and be nonempty");
  complexd acc{0.0, 0.0};
  for (size_t i = 0; i < before.size(); ++i) {
    if (std::abs(before[i].first - after[i].first) > 1e-12)
      throw std::invalid_argument("conjugation_check: delta grids differ");
    if (std::abs(before[i].second) == 0.0 || std::abs(after[i].second) == 0.0)
      throw std::invalid_argument("conjugation_check: zero-magnitude coherence in a group");
    acc += after[i].second * before[i].second;
  }
  ConjugationFit fit;
  fit.global_phase = std::arg(acc);
  const complexd rot = std::polar(1.0, -fit.global_phase);
  for (size_t i = 0; i < before.size(); ++i) {
    const double r = std::abs(std::arg(after[i].second * before[i].second * rot));
    fit.max_residual = std::max(fit.max_residual, r);
  }
  return fit;
}

// Per-group (delta, rho12) pairs at the sample nearest t, restricted to
// |delta| <= max_abs_delta. Requires per-group trajectories.
inline std::vector<std::pair<double, complexd>> group_coherences_at(
    const EnsembleTrajectory& traj, double t,
    double max_abs_delta = std::numeric_limits<double>::infinity()) {
  if (traj.per_group.empty())
    throw std::invalid_argument("group_coherences_at: per-group trajectories were not kept");
  const size_t s = detail::nearest_sample(traj.times, t);
  std::vector<std::pair<double, complexd>> out;
  for (size_t i = 0; i < traj.groups.size(); ++i) {
    if (std::abs(traj.groups[i].delta) <= max_abs_delta)
      out.emplace_back(traj.groups[i].delta, traj.per_group[i].states[s].rho12());
  }
  return out;
}

struct SweepResult {
  std::vector<double> values;
  std::vector<double> objectives;
  double argbest = 0.0;  // value attaining the largest objective
};

namespace detail {

inline double best_value(const std::vector<double>& values, const std::vector<double>& obj) {
  size_t best = 0;
  for (size_t i = 1; i < obj.size(); ++i)
    if (obj[i] > obj[best]) best = i;
  return values[best];
}

}  // namespace detail

// Coupling-amplitude sweep for the data pulse: the probe amplitude is fixed,
// the duration is re-solved so every pulse keeps a 2 pi area. The objective
// is the excitation efficiency: end-of-pulse ensemble |<rho12>| relative to
// the resonant group's |rho12| under the same pulse. A hard coupling makes
// the whole ensemble track the resonant group and drives the ratio to 1.
inline SweepResult sweep_coupling(const Sequence& seq_template,
                                  const std::vector<double>& omega_c_values,
                                  const EnsembleSpec& spec, const AtomParams& base) {
  if (omega_c_values.empty())
    throw std::invalid_argument("sweep_coupling: value list must be nonempty");
  const RamanPulse* data = nullptr;
  for (const auto& p : seq_template.pulses)
    if (p.label == PulseLabel::D) data = &p;
  if (!data || !data->probe)
    throw std::invalid_argument("sweep_coupling: template must contain a D pulse with a probe leg");
  const double omega_p = data->probe->amplitude;
  const double t_start = data->probe->t_start;

  SweepResult result;
  result.values = omega_c_values;
  const EnsembleSpec resonant{0.0, 1, spec.truncation};
  for (double omega_c : omega_c_values) {
    const double omega_r = generalized_rabi(omega_p, omega_c);
    const double duration = solve_duration_for_area(omega_r, 1);
    Sequence seq;
    seq.pulses.push_back(make_raman_pulse(PulseLabel::D, omega_p, omega_c, t_start, duration));
    seq.total_span = t_start + duration;
    const double h = duration / 1000.0;
    const auto ens = run_ensemble(seq, spec, base, h);
    const auto res = run_ensemble(seq, resonant, base, h);
    const double denom = res.abs_rho12.back();
    result.objectives.push_back(denom > 0.0 ? ens.abs_rho12.back() / denom : 0.0);
  }
  result.argbest = detail::best_value(result.values, result.objectives);
  return result;
}

struct ReadoutAreaSweep {
  SweepResult sweep;  // objective: depletion fraction of the stored coherence
  std::optional<double> smallest_area_reaching_09;
};

// Readout-area sweep: the template's C2 amplitude and switch-on time are kept,
// the duration is scaled to realize each requested area (rad). Depletion is
// measured against a companion run without C2 on the same sample grid.
inline ReadoutAreaSweep sweep_readout_area(const std::vector<double>& areas,
                                           const Sequence& fig4_template,
                                           const EnsembleSpec& spec, const AtomParams& base,
                                           double sample_interval) {
  if (areas.empty()) throw std::invalid_argument("sweep_readout_area: area list must be nonempty");
  for (double a : areas)
    if (a <= 0.0) throw std::invalid_argument("sweep_readout_area: areas must be > 0");

  const RamanPulse* c2 = nullptr;
  Sequence without;
  without.total_span = fig4_template.total_span;
  for (const auto& p : fig4_template.pulses) {
    if (p.label == PulseLabel::C2) {
      if (c2) throw std::invalid_argument("sweep_readout_area: template must contain exactly one C2");
      c2 = &p;
    } else {
      without.pulses.push_back(p);
    }
  }
  if (!c2 || !c2->coupling)
    throw std::invalid_argument("sweep_readout_area: template must contain a C2 pulse");
  const double amplitude = c2->coupling->amplitude;
  if (amplitude <= 0.0)
    throw std::invalid_argument("sweep_readout_area: C2 amplitude must be > 0");
  const double onset = c2->coupling->t_start;

  double max_span = fig4_template.total_span;
  for (double a : areas) max_span = std::max(max_span, onset + a / amplitude + 1.0);
  without.total_span = max_span;
  const auto reference = run_ensemble(without, spec, base, sample_interval);

  ReadoutAreaSweep out;
  out.sweep.values = areas;
  for (double area : areas) {
    const double duration = area / amplitude;
    Sequence with = without;
    with.pulses.push_back(make_raman_pulse(PulseLabel::C2, 0.0, amplitude, onset, duration));
    with.total_span = std::max(fig4_template.total_span, onset + duration + 1.0);
    const auto traj = run_ensemble(with, spec, base, sample_interval);
    size_t eval = traj.size();
    for (size_t i = 0; i < traj.size(); ++i) {
      if (traj.times[i] >= onset + duration - 1e-9) {
        eval = i;
        break;
      }
    }
    if (eval == traj.size())
      throw std::invalid_argument("sweep_readout_area: no sample past the readout window");
    if (std::abs(reference.times[eval] - traj.times[eval]) > 1e-9)
      throw std::runtime_error("sweep_readout_area: sample grids diverged");
    const double ref = reference.abs_rho12[eval];
    const double depletion = ref > 0.0 ? 1.0 - traj.abs_rho12[eval] / ref : 0.0;
    out.sweep.objectives.push_back(depletion);
    if (depletion >= 0.9 &&
        (!out.smallest_area_reaching_09 || area < *out.smallest_area_reaching_09))
      out.smallest_area_reaching_09 = area;
  }
  out.sweep.argbest = detail::best_value(out.sweep.values, out.sweep.objectives);
  return out;
}

}  // namespace ramanecho
