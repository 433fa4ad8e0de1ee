#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ramanecho/analysis.hpp"
#include "ramanecho/geometry.hpp"

namespace ramanecho {

struct SweepTable {
  std::string parameter;
  std::vector<double> values;
  std::vector<double> objectives;
  double argbest = 0.0;
  std::optional<double> smallest_area_reaching_09;
};

// Structured results of a run: what was detected, what the timing relation
// predicts, readout and geometry numbers, and any sweep tables.
struct EchoReport {
  std::string amplitude_convention =
      "half-amplitude: Hamiltonian couplings are -Omega/2, pulse area is the time integral "
      "of Omega_R, and a 2*pi area swaps the ground states with the excited state emptied";
  std::vector<EchoEvent> events;
  std::optional<EchoTimes> predicted;
  std::optional<GeometryClass> geometry_class;
  double geometry_mismatch = 0.0;
  std::optional<ReadoutMetrics> readout;
  std::vector<SweepTable> sweeps;
  std::vector<std::string> warnings;
};

inline nlohmann::json to_json(const EchoReport& r) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : r.events) {
    events.push_back({{"kind", to_string(e.kind)},
                      {"time_us", e.time},
                      {"amplitude", e.amplitude},
                      {"inverted", e.inverted}});
  }
  nlohmann::json j{{"conventions", {{"amplitude", r.amplitude_convention}}},
                   {"events", events}};
  if (r.predicted) {
    j["predicted"] = {{"t_e1_us", r.predicted->t_e1},
                      {"t_e2_us", r.predicted->t_e2},
                      {"degenerate", r.predicted->degenerate}};
  } else {
    j["predicted"] = nullptr;
  }
  if (r.geometry_class) {
    j["geometry"] = {{"class", to_string(*r.geometry_class)}, {"mismatch", r.geometry_mismatch}};
  } else {
    j["geometry"] = nullptr;
  }
  if (r.readout) {
    j["readout"] = {{"peak_im_rho13", r.readout->peak_im_rho13},
                    {"depletion", r.readout->depletion_fraction}};
  } else {
    j["readout"] = nullptr;
  }
  if (!r.sweeps.empty()) {
    nlohmann::json sweeps = nlohmann::json::array();
    for (const auto& s : r.sweeps) {
      nlohmann::json t{{"parameter", s.parameter},
                       {"values", s.values},
                       {"objectives", s.objectives},
                       {"argbest", s.argbest}};
      if (s.smallest_area_reaching_09)
        t["smallest_area_reaching_09"] = *s.smallest_area_reaching_09;
      sweeps.push_back(t);
    }
    j["sweeps"] = sweeps;
  }
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

inline std::string serialize_report(const EchoReport& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace ramanecho
