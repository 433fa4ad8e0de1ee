#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ramanecho/atom_params.hpp"
#include "ramanecho/ensemble.hpp"
#include "ramanecho/geometry.hpp"
#include "ramanecho/presets.hpp"
#include "ramanecho/pulses.hpp"
#include "ramanecho/units.hpp"

namespace ramanecho {

using json = nlohmann::json;

// A configuration (or CLI usage) problem. Carries one diagnostic per
// violation, each prefixed with the offending field path.
struct ConfigError : std::runtime_error {
  std::vector<std::string> diagnostics;
  explicit ConfigError(std::vector<std::string> diags)
      : std::runtime_error(join(diags)), diagnostics(std::move(diags)) {}
  explicit ConfigError(const std::string& diag) : ConfigError(std::vector<std::string>{diag}) {}

 private:
  static std::string join(const std::vector<std::string>& diags) {
    std::string s = "configuration error";
    for (const auto& d : diags) s += "\n  " + d;
    return s;
  }
};

struct SystemConfig {
  double gamma31_per_us = 0.0;
  double gamma32_per_us = 0.0;
  double gamma12_per_us = 0.0;
  double gamma13_per_us = 0.0;
  double gamma23_per_us = 0.0;
  double delta_probe_khz = 0.0;  // one-photon detuning, ordinary frequency
};

struct EnsembleConfig {
  double fwhm_khz = 100.0;
  int groups = 201;
  double truncation_sigma = 4.0;
};

// One pulse of the schedule. Frequencies are ordinary (kHz), converted to
// angular internally; phase applies to both legs.
struct PulseEntry {
  std::string label = "custom";
  double t_start_us = 0.0;
  double duration_us = 0.0;
  double omega_p_khz = 0.0;
  double omega_c_khz = 0.0;
  double phase_deg = 0.0;
  std::string k_probe = "kP";
  std::string k_coupling = "kC1";
};

struct BeamConfig {
  std::array<double, 3> direction{0.0, 0.0, 1.0};
  double wavelength_nm = 606.0;
};

struct GeometryConfig {
  std::map<std::string, BeamConfig> beams = {
      {"kP", BeamConfig{{0.0, 0.0, 1.0}, 606.0}},
      {"kC1", BeamConfig{{0.0, 0.0, 1.0}, 606.0}},
      {"kC2", BeamConfig{{0.0, 0.0, -1.0}, 606.0}},
  };
  std::string probe = "kP";
  std::string coupling1 = "kC1";
  std::string coupling2 = "kC2";
};

struct OutputPaths {
  std::string averaged_csv = "averaged.csv";
  std::string per_group_csv = "per_group.csv";
  std::string report_json = "report.json";
  std::string svg = "plot.svg";
};

struct OutputConfig {
  double sample_interval_us = 0.02;
  double span_us = 0.0;
  bool per_group = false;
  OutputPaths paths;
};

struct RunConfig {
  SystemConfig system;
  EnsembleConfig ensemble;
  std::vector<PulseEntry> sequence;
  GeometryConfig geometry;
  OutputConfig output;
};

namespace detail {

class ConfigReader {
 public:
  explicit ConfigReader(std::vector<std::string>& diags) : diags_(diags) {}

  void expect_keys(const json& j, const std::string& path,
                   std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
      diags_.push_back(path + ": expected an object");
      return;
    }
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) diags_.push_back(path + "." + key + ": unknown key");
    }
  }

  template <typename T>
  void read(const json& j, const std::string& path, const char* key, T& out) {
    if (!j.is_object() || !j.contains(key)) return;
    const json& v = j.at(key);
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) {
        diags_.push_back(path + "." + key + ": expected a boolean");
        return;
      }
    } else if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) {
        diags_.push_back(path + "." + key + ": expected an integer");
        return;
      }
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) {
        diags_.push_back(path + "." + key + ": expected a number");
        return;
      }
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) {
        diags_.push_back(path + "." + key + ": expected a string");
        return;
      }
    }
    out = v.get<T>();
  }

  void check(bool ok, const std::string& message) {
    if (!ok) diags_.push_back(message);
  }

 private:
  std::vector<std::string>& diags_;
};

}  // namespace detail

inline Sequence to_sequence(const RunConfig& cfg) {
  Sequence seq;
  seq.total_span = cfg.output.span_us;
  for (const auto& e : cfg.sequence) {
    const double phase = e.phase_deg * M_PI / 180.0;
    seq.pulses.push_back(make_raman_pulse(pulse_label_from_string(e.label),
                                          khz_to_rad_per_us(e.omega_p_khz),
                                          khz_to_rad_per_us(e.omega_c_khz), e.t_start_us,
                                          e.duration_us, phase, phase, e.k_probe, e.k_coupling));
  }
  return seq;
}

inline AtomParams to_atom_params(const RunConfig& cfg) {
  AtomParams p;
  p.Delta = khz_to_rad_per_us(cfg.system.delta_probe_khz);
  p.Gamma31 = cfg.system.gamma31_per_us;
  p.Gamma32 = cfg.system.gamma32_per_us;
  p.gamma12 = cfg.system.gamma12_per_us;
  p.gamma13 = cfg.system.gamma13_per_us;
  p.gamma23 = cfg.system.gamma23_per_us;
  return p;
}

inline EnsembleSpec to_ensemble_spec(const RunConfig& cfg) {
  return EnsembleSpec::from_fwhm_khz(cfg.ensemble.fwhm_khz, cfg.ensemble.groups,
                                     cfg.ensemble.truncation_sigma);
}

inline BeamGeometry to_beam_geometry(const RunConfig& cfg) {
  auto beam = [&](const std::string& name) {
    const BeamConfig& b = cfg.geometry.beams.at(name);
    return WaveVector{Vector3{b.direction[0], b.direction[1], b.direction[2]},
                      wavelength_nm_to_omega(b.wavelength_nm)};
  };
  return BeamGeometry{beam(cfg.geometry.probe), beam(cfg.geometry.coupling1),
                      beam(cfg.geometry.coupling2)};
}

// Parses and fully validates a configuration document. Unknown keys, type
// errors, constraint violations and sequence problems are all collected and
// reported together, each with its field path.
inline RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("syntax: ") + e.what());
  }

  std::vector<std::string> diags;
  detail::ConfigReader r(diags);
  RunConfig cfg;

  r.expect_keys(j, "$", {"system", "ensemble", "sequence", "geometry", "output"});

  if (j.contains("system")) {
    const json& s = j["system"];
    r.expect_keys(s, "system",
                  {"gamma31_per_us", "gamma32_per_us", "gamma12_per_us", "gamma13_per_us",
                   "gamma23_per_us", "delta_probe_khz"});
    r.read(s, "system", "gamma31_per_us", cfg.system.gamma31_per_us);
    r.read(s, "system", "gamma32_per_us", cfg.system.gamma32_per_us);
    r.read(s, "system", "gamma12_per_us", cfg.system.gamma12_per_us);
    r.read(s, "system", "gamma13_per_us", cfg.system.gamma13_per_us);
    r.read(s, "system", "gamma23_per_us", cfg.system.gamma23_per_us);
    r.read(s, "system", "delta_probe_khz", cfg.system.delta_probe_khz);
    r.check(cfg.system.gamma31_per_us >= 0.0, "system.gamma31_per_us: must be >= 0");
    r.check(cfg.system.gamma32_per_us >= 0.0, "system.gamma32_per_us: must be >= 0");
    r.check(cfg.system.gamma12_per_us >= 0.0, "system.gamma12_per_us: must be >= 0");
    r.check(cfg.system.gamma13_per_us >= 0.0, "system.gamma13_per_us: must be >= 0");
    r.check(cfg.system.gamma23_per_us >= 0.0, "system.gamma23_per_us: must be >= 0");
  }

  if (j.contains("ensemble")) {
    const json& e = j["ensemble"];
    r.expect_keys(e, "ensemble", {"fwhm_khz", "groups", "truncation_sigma"});
    r.read(e, "ensemble", "fwhm_khz", cfg.ensemble.fwhm_khz);
    r.read(e, "ensemble", "groups", cfg.ensemble.groups);
    r.read(e, "ensemble", "truncation_sigma", cfg.ensemble.truncation_sigma);
    r.check(cfg.ensemble.fwhm_khz >= 0.0, "ensemble.fwhm_khz: must be >= 0");
    r.check(cfg.ensemble.groups >= 1, "ensemble.groups: must be >= 1");
    r.check(cfg.ensemble.groups % 2 == 1, "ensemble.groups: must be odd");
    r.check(cfg.ensemble.truncation_sigma > 0.0, "ensemble.truncation_sigma: must be > 0");
  }

  if (j.contains("sequence")) {
    if (!j["sequence"].is_array()) {
      diags.push_back("sequence: expected an array");
    } else {
      size_t i = 0;
      for (const json& p : j["sequence"]) {
        const std::string path = "sequence[" + std::to_string(i) + "]";
        r.expect_keys(p, path,
                      {"label", "t_start_us", "duration_us", "omega_p_khz", "omega_c_khz",
                       "phase_deg", "k_labels"});
        PulseEntry entry;
        r.read(p, path, "label", entry.label);
        r.read(p, path, "t_start_us", entry.t_start_us);
        r.read(p, path, "duration_us", entry.duration_us);
        r.read(p, path, "omega_p_khz", entry.omega_p_khz);
        r.read(p, path, "omega_c_khz", entry.omega_c_khz);
        r.read(p, path, "phase_deg", entry.phase_deg);
        if (p.is_object() && p.contains("k_labels")) {
          const json& k = p["k_labels"];
          r.expect_keys(k, path + ".k_labels", {"probe", "coupling"});
          r.read(k, path + ".k_labels", "probe", entry.k_probe);
          r.read(k, path + ".k_labels", "coupling", entry.k_coupling);
        }
        r.check(entry.duration_us > 0.0, path + ".duration_us: must be > 0");
        r.check(entry.omega_p_khz >= 0.0, path + ".omega_p_khz: must be >= 0");
        r.check(entry.omega_c_khz >= 0.0, path + ".omega_c_khz: must be >= 0");
        r.check(!(entry.label == "C2" && entry.omega_p_khz != 0.0),
                path + ": C2 is coupling-only, omega_p_khz must be 0");
        cfg.sequence.push_back(entry);
        ++i;
      }
    }
  } else {
    diags.push_back("sequence: required section missing");
  }

  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    r.expect_keys(g, "geometry", {"beams", "roles"});
    if (g.is_object() && g.contains("beams")) {
      if (!g["beams"].is_object()) {
        diags.push_back("geometry.beams: expected an object");
      } else {
        cfg.geometry.beams.clear();
        for (const auto& [name, b] : g["beams"].items()) {
          const std::string path = "geometry.beams." + name;
          r.expect_keys(b, path, {"direction", "wavelength_nm"});
          BeamConfig beam;
          if (b.is_object() && b.contains("direction")) {
            const json& d = b["direction"];
            if (!d.is_array() || d.size() != 3 || !d[0].is_number() || !d[1].is_number() ||
                !d[2].is_number()) {
              diags.push_back(path + ".direction: expected [x, y, z]");
            } else {
              beam.direction = {d[0].get<double>(), d[1].get<double>(), d[2].get<double>()};
              const double n = std::hypot(beam.direction[0], beam.direction[1], beam.direction[2]);
              r.check(n > 0.0, path + ".direction: must be nonzero");
            }
          }
          r.read(b, path, "wavelength_nm", beam.wavelength_nm);
          r.check(beam.wavelength_nm > 0.0, path + ".wavelength_nm: must be > 0");
          cfg.geometry.beams[name] = beam;
        }
      }
    }
    if (g.is_object() && g.contains("roles")) {
      const json& roles = g["roles"];
      r.expect_keys(roles, "geometry.roles", {"probe", "coupling1", "coupling2"});
      r.read(roles, "geometry.roles", "probe", cfg.geometry.probe);
      r.read(roles, "geometry.roles", "coupling1", cfg.geometry.coupling1);
      r.read(roles, "geometry.roles", "coupling2", cfg.geometry.coupling2);
    }
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    r.expect_keys(o, "output", {"sample_interval_us", "span_us", "per_group", "paths"});
    r.read(o, "output", "sample_interval_us", cfg.output.sample_interval_us);
    r.read(o, "output", "span_us", cfg.output.span_us);
    r.read(o, "output", "per_group", cfg.output.per_group);
    if (o.is_object() && o.contains("paths")) {
      const json& p = o["paths"];
      r.expect_keys(p, "output.paths", {"averaged_csv", "per_group_csv", "report_json", "svg"});
      r.read(p, "output.paths", "averaged_csv", cfg.output.paths.averaged_csv);
      r.read(p, "output.paths", "per_group_csv", cfg.output.paths.per_group_csv);
      r.read(p, "output.paths", "report_json", cfg.output.paths.report_json);
      r.read(p, "output.paths", "svg", cfg.output.paths.svg);
    }
  } else {
    diags.push_back("output: required section missing");
  }
  r.check(cfg.output.sample_interval_us > 0.0, "output.sample_interval_us: must be > 0");
  r.check(cfg.output.span_us > 0.0, "output.span_us: must be > 0");

  // cross references and sequence-level checks
  for (size_t i = 0; i < cfg.sequence.size(); ++i) {
    const auto& e = cfg.sequence[i];
    const std::string path = "sequence[" + std::to_string(i) + "]";
    if (e.label != "C2" && !cfg.geometry.beams.count(e.k_probe))
      diags.push_back(path + ".k_labels.probe: beam '" + e.k_probe + "' not defined in geometry");
    if (!cfg.geometry.beams.count(e.k_coupling))
      diags.push_back(path + ".k_labels.coupling: beam '" + e.k_coupling +
                      "' not defined in geometry");
  }
  for (const auto& [role, name] : {std::pair<std::string, std::string>{"probe", cfg.geometry.probe},
                                   {"coupling1", cfg.geometry.coupling1},
                                   {"coupling2", cfg.geometry.coupling2}}) {
    if (!cfg.geometry.beams.count(name))
      diags.push_back("geometry.roles." + role + ": beam '" + name + "' not defined");
  }

  if (diags.empty()) {
    try {
      const Sequence seq = to_sequence(cfg);
      for (const auto& v : validate_sequence(seq)) diags.push_back("sequence: " + v);
    } catch (const std::invalid_argument& e) {
      diags.push_back(std::string("sequence: ") + e.what());
    }
  }

  if (!diags.empty()) throw ConfigError(diags);
  return cfg;
}

inline json to_json(const RunConfig& cfg) {
  json seq = json::array();
  for (const auto& e : cfg.sequence) {
    json entry = {{"label", e.label},
                  {"t_start_us", e.t_start_us},
                  {"duration_us", e.duration_us},
                  {"omega_c_khz", e.omega_c_khz},
                  {"phase_deg", e.phase_deg}};
    if (e.label == "C2") {
      entry["k_labels"] = {{"coupling", e.k_coupling}};
    } else {
      entry["omega_p_khz"] = e.omega_p_khz;
      entry["k_labels"] = {{"probe", e.k_probe}, {"coupling", e.k_coupling}};
    }
    seq.push_back(entry);
  }
  json beams = json::object();
  for (const auto& [name, b] : cfg.geometry.beams)
    beams[name] = {{"direction", b.direction}, {"wavelength_nm", b.wavelength_nm}};
  return json{
      {"system",
       {{"gamma31_per_us", cfg.system.gamma31_per_us},
        {"gamma32_per_us", cfg.system.gamma32_per_us},
        {"gamma12_per_us", cfg.system.gamma12_per_us},
        {"gamma13_per_us", cfg.system.gamma13_per_us},
        {"gamma23_per_us", cfg.system.gamma23_per_us},
        {"delta_probe_khz", cfg.system.delta_probe_khz}}},
      {"ensemble",
       {{"fwhm_khz", cfg.ensemble.fwhm_khz},
        {"groups", cfg.ensemble.groups},
        {"truncation_sigma", cfg.ensemble.truncation_sigma}}},
      {"sequence", seq},
      {"geometry",
       {{"beams", beams},
        {"roles",
         {{"probe", cfg.geometry.probe},
          {"coupling1", cfg.geometry.coupling1},
          {"coupling2", cfg.geometry.coupling2}}}}},
      {"output",
       {{"sample_interval_us", cfg.output.sample_interval_us},
        {"span_us", cfg.output.span_us},
        {"per_group", cfg.output.per_group},
        {"paths",
         {{"averaged_csv", cfg.output.paths.averaged_csv},
          {"per_group_csv", cfg.output.paths.per_group_csv},
          {"report_json", cfg.output.paths.report_json},
          {"svg", cfg.output.paths.svg}}}}}};
}

inline std::string serialize_config(const RunConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

// The preset bundles expressed in the configuration vocabulary.
inline RunConfig preset_to_config(PresetName name) {
  const PresetBundle b = preset_sequence(name);
  RunConfig cfg;
  cfg.ensemble.fwhm_khz =
      b.ensemble.sigma_delta == 0.0
          ? 0.0
          : rad_per_us_to_khz(b.ensemble.sigma_delta) * (2.0 * std::sqrt(2.0 * std::log(2.0)));
  cfg.ensemble.groups = b.ensemble.n_groups;
  cfg.ensemble.truncation_sigma = b.ensemble.truncation;
  cfg.output.span_us = b.seq.total_span;
  cfg.output.sample_interval_us = b.sample_interval;
  for (const auto& p : b.seq.pulses) {
    PulseEntry e;
    e.label = to_string(p.label);
    const PulseSegment& ref = p.coupling ? *p.coupling : *p.probe;
    e.t_start_us = ref.t_start;
    e.duration_us = ref.duration;
    if (p.probe) {
      e.omega_p_khz = rad_per_us_to_khz(p.probe->amplitude);
      e.k_probe = p.probe->k_label;
    }
    if (p.coupling) {
      e.omega_c_khz = rad_per_us_to_khz(p.coupling->amplitude);
      e.k_coupling = p.coupling->k_label;
    }
    cfg.sequence.push_back(e);
  }
  return cfg;
}

}  // namespace ramanecho
