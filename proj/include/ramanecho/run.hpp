#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ramanecho/config.hpp"
#include "ramanecho/io.hpp"
#include "ramanecho/report.hpp"
#include "ramanecho/svg.hpp"

namespace ramanecho {

struct RunOptions {
  std::filesystem::path out_dir;
  bool per_group = false;
  bool svg = false;
};

struct RunArtifacts {
  EnsembleTrajectory trajectory;
  EchoReport report;
};

namespace detail {

inline std::optional<EchoTimes> predict_from_sequence(const Sequence& seq) {
  std::optional<double> t_d, t_r1, t_r2;
  for (const auto& p : seq.pulses) {
    if (p.label == PulseLabel::D) t_d = p.center();
    if (p.label == PulseLabel::R1) t_r1 = p.center();
    if (p.label == PulseLabel::R2) t_r2 = p.center();
  }
  if (t_d && t_r1 && t_r2 && *t_d < *t_r1 && *t_r1 < *t_r2)
    return predicted_echo_times(*t_d, *t_r1, *t_r2);
  return std::nullopt;
}

inline std::optional<std::pair<double, double>> readout_window(const Sequence& seq) {
  for (const auto& p : seq.pulses)
    if (p.label == PulseLabel::C2 && p.coupling)
      return std::make_pair(p.coupling->t_start, p.coupling->t_end());
  return std::nullopt;
}

}  // namespace detail

// Runs a configuration end to end: ensemble integration, echo detection,
// timing prediction, geometry classification, readout comparison when the
// schedule carries a C2 pulse, and file emission.
inline RunArtifacts execute_run(const RunConfig& cfg, const RunOptions& opt) {
  const Sequence seq = to_sequence(cfg);
  const EnsembleSpec spec = to_ensemble_spec(cfg);
  const AtomParams params = to_atom_params(cfg);
  const bool keep_groups = opt.per_group || cfg.output.per_group;

  RunArtifacts art;
  art.report.warnings = validate(params);
  art.trajectory = run_ensemble(seq, spec, params, cfg.output.sample_interval_us, keep_groups);

  if (cfg.output.sample_interval_us < 0.2)
    art.report.events = detect_spin_echoes(art.trajectory, seq);
  art.report.predicted = detail::predict_from_sequence(seq);

  const EchoGeometry geo = echo_wavevector(to_beam_geometry(cfg));
  art.report.geometry_class = geo.classification;
  art.report.geometry_mismatch = geo.mismatch;

  if (const auto window = detail::readout_window(seq)) {
    Sequence without = seq;
    without.pulses.clear();
    for (const auto& p : seq.pulses)
      if (p.label != PulseLabel::C2) without.pulses.push_back(p);
    const auto reference =
        run_ensemble(without, spec, params, cfg.output.sample_interval_us, false);
    art.report.readout =
        readout_metrics(art.trajectory, reference, window->first, window->second);
    if (const auto e = detect_optical_readout(art.trajectory, window->first, window->second))
      art.report.events.push_back(*e);
  }

  write_file_atomic(opt.out_dir / cfg.output.paths.averaged_csv, averaged_csv(art.trajectory));
  if (keep_groups)
    write_file_atomic(opt.out_dir / cfg.output.paths.per_group_csv,
                      per_group_csv(art.trajectory));
  if (opt.svg)
    write_file_atomic(opt.out_dir / cfg.output.paths.svg,
                      render_trajectory_svg(art.trajectory, "ensemble trajectory"));
  write_file_atomic(opt.out_dir / cfg.output.paths.report_json, serialize_report(art.report));
  return art;
}

// Materializes a preset configuration to disk, then runs it.
inline RunArtifacts execute_preset(const std::string& name, const RunOptions& opt) {
  const RunConfig cfg = preset_to_config(preset_from_string(name));
  write_file_atomic(opt.out_dir / "config.json", serialize_config(cfg));
  return execute_run(cfg, opt);
}

// Parameter sweeps over the configured protocol. omega_c values are ordinary
// kHz; c2_area values are areas in rad.
inline EchoReport execute_sweep(const RunConfig& cfg, const std::string& param,
                                const std::vector<double>& values, const RunOptions& opt) {
  if (values.empty()) throw ConfigError("sweep: value list must be nonempty");
  const Sequence seq = to_sequence(cfg);
  const EnsembleSpec spec = to_ensemble_spec(cfg);
  const AtomParams params = to_atom_params(cfg);

  EchoReport report;
  report.warnings = validate(params);
  SweepTable table;
  std::string csv;
  if (param == "omega_c") {
    std::vector<double> omegas;
    for (double khz : values) omegas.push_back(khz_to_rad_per_us(khz));
    const SweepResult r = sweep_coupling(seq, omegas, spec, params);
    table.parameter = "omega_c";
    table.values = values;
    table.objectives = r.objectives;
    table.argbest = rad_per_us_to_khz(r.argbest);
    csv = "omega_c_khz,objective\n";
    for (size_t i = 0; i < values.size(); ++i)
      csv += format_number(values[i]) + "," + format_number(r.objectives[i]) + "\n";
  } else if (param == "c2_area") {
    const ReadoutAreaSweep r =
        sweep_readout_area(values, seq, spec, params, cfg.output.sample_interval_us);
    table.parameter = "c2_area";
    table.values = values;
    table.objectives = r.sweep.objectives;
    table.argbest = r.sweep.argbest;
    table.smallest_area_reaching_09 = r.smallest_area_reaching_09;
    csv = "c2_area_rad,depletion\n";
    for (size_t i = 0; i < values.size(); ++i)
      csv += format_number(values[i]) + "," + format_number(r.sweep.objectives[i]) + "\n";
  } else {
    throw ConfigError("sweep: unknown parameter '" + param + "' (expected omega_c or c2_area)");
  }
  report.sweeps.push_back(table);

  write_file_atomic(opt.out_dir / "sweep.csv", csv);
  write_file_atomic(opt.out_dir / cfg.output.paths.report_json, serialize_report(report));
  return report;
}

}  // namespace ramanecho
