#pragma once

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ramanecho/dynamics.hpp"
#include "ramanecho/units.hpp"

namespace ramanecho {

// Gaussian spin inhomogeneous broadening, discretized on a uniform grid of
// two-photon detunings. n_groups is odd so delta = 0 is always a node.
struct EnsembleSpec {
  double sigma_delta = 0.0;  // rad/us
  int n_groups = 1;
  double truncation = 4.0;   // grid spans +- truncation * sigma

  static EnsembleSpec from_fwhm_khz(double fwhm_khz, int n_groups = 201, double truncation = 4.0) {
    return EnsembleSpec{khz_to_rad_per_us(fwhm_to_sigma(fwhm_khz)), n_groups, truncation};
  }
};

struct Group {
  double delta = 0.0;
  double weight = 1.0;
};

inline std::vector<Group> make_detuning_grid(const EnsembleSpec& spec) {
  if (spec.n_groups < 1) throw std::invalid_argument("make_detuning_grid: n_groups must be >= 1");
  if (spec.sigma_delta < 0.0) throw std::invalid_argument("make_detuning_grid: sigma_delta must be >= 0");
  if (spec.truncation <= 0.0) throw std::invalid_argument("make_detuning_grid: truncation must be > 0");
  if (spec.sigma_delta == 0.0 || spec.n_groups == 1) return {Group{0.0, 1.0}};
  if (spec.n_groups % 2 == 0)
    throw std::invalid_argument("make_detuning_grid: n_groups must be odd");

  const int n = spec.n_groups;
  const int mid = (n - 1) / 2;
  const double step = spec.truncation * spec.sigma_delta / mid;
  std::vector<Group> groups(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (i - mid) * step;
    const double w = std::exp(-d * d / (2.0 * spec.sigma_delta * spec.sigma_delta));
    groups[i] = {d, w};
    sum += w;
  }
  for (auto& g : groups) g.weight /= sum;
  return groups;
}

// Weighted coherent sum. The macroscopic coherence (and so the echo emission)
// is the complex average, not the average of moduli.
inline complexd ensemble_average(const std::vector<std::pair<double, complexd>>& weighted) {
  complexd acc{0.0, 0.0};
  for (const auto& [w, z] : weighted) acc += w * z;
  return acc;
}

// Weighted-average observables on the sample grid, plus (optionally) the
// per-group trajectories they were formed from.
struct EnsembleTrajectory {
  std::vector<double> times;
  std::vector<double> rho11, rho22, rho33;
  std::vector<double> re_rho12, im_rho12, abs_rho12;
  std::vector<double> im_rho13, abs_rho13;
  std::vector<Group> groups;
  std::vector<Trajectory> per_group;  // empty unless requested

  size_t size() const { return times.size(); }
};

// Integrates every detuning group independently (delta overridden per group)
// and merges in fixed group order. Group runs may execute on several threads;
// the result is bit-identical regardless of thread count.
inline EnsembleTrajectory run_ensemble(const Sequence& seq, const EnsembleSpec& spec,
                                       const AtomParams& base, double sample_interval,
                                       bool keep_per_group = false, unsigned n_threads = 0) {
  const std::vector<Group> groups = make_detuning_grid(spec);
  const size_t n = groups.size();
  std::vector<Trajectory> per_group(n);
  std::vector<std::string> errors(n);

  auto run_group = [&](size_t i) {
    AtomParams p = base;
    p.delta = groups[i].delta;
    try {
      per_group[i] = integrate_sequence(DensityMatrix::ground(), seq, p, sample_interval);
    } catch (const std::exception& ex) {
      errors[i] = "group " + std::to_string(i) + " (delta = " + std::to_string(groups[i].delta) +
                  " rad/us): " + ex.what();
    }
  };

  unsigned workers = n_threads == 0 ? std::thread::hardware_concurrency() : n_threads;
  workers = std::max(1u, std::min<unsigned>(workers, n));
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) run_group(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) run_group(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("run_ensemble: " + e);

  EnsembleTrajectory out;
  out.groups = groups;
  out.times = per_group[0].times;
  const size_t n_samples = out.times.size();
  for (size_t i = 0; i < n; ++i) {
    if (per_group[i].times.size() != n_samples)
      throw std::runtime_error("run_ensemble: inconsistent sample grids across groups");
  }
  out.rho11.resize(n_samples);
  out.rho22.resize(n_samples);
  out.rho33.resize(n_samples);
  out.re_rho12.resize(n_samples);
  out.im_rho12.resize(n_samples);
  out.abs_rho12.resize(n_samples);
  out.im_rho13.resize(n_samples);
  out.abs_rho13.resize(n_samples);
  for (size_t s = 0; s < n_samples; ++s) {
    double p11 = 0.0, p22 = 0.0, p33 = 0.0;
    complexd c12{0.0, 0.0}, c13{0.0, 0.0};
    for (size_t i = 0; i < n; ++i) {
      const double w = groups[i].weight;
      const DensityMatrix& rho = per_group[i].states[s];
      p11 += w * std::real(rho.rho11());
      p22 += w * std::real(rho.rho22());
      p33 += w * std::real(rho.rho33());
      c12 += w * rho.rho12();
      c13 += w * rho.rho13();
    }
    out.rho11[s] = p11;
    out.rho22[s] = p22;
    out.rho33[s] = p33;
    out.re_rho12[s] = std::real(c12);
    out.im_rho12[s] = std::imag(c12);
    out.abs_rho12[s] = std::abs(c12);
    out.im_rho13[s] = std::imag(c13);
    out.abs_rho13[s] = std::abs(c13);
  }
  if (keep_per_group) out.per_group = std::move(per_group);
  return out;
}

}  // namespace ramanecho
