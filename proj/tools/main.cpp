// Command-line front end: run a configuration, run a named preset, or drive a
// parameter sweep. Exit codes: 0 success, 2 configuration error, 3 numeric
// failure during integration.

#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ramanecho/run.hpp"

namespace {

std::vector<double> parse_value_list(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size())
      throw ramanecho::ConfigError("--values: cannot parse '" + item + "' as a number");
    values.push_back(v);
  }
  if (values.empty()) throw ramanecho::ConfigError("--values: no values given");
  return values;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void print_summary(const ramanecho::EchoReport& report) {
  using ramanecho::to_string;
  for (const auto& e : report.events) {
    std::cout << to_string(e.kind) << " at t = " << e.time << " us, amplitude " << e.amplitude
              << (e.inverted ? ", inverted" : ", not inverted") << "\n";
  }
  if (report.predicted) {
    std::cout << "predicted echo times: E1 = " << report.predicted->t_e1
              << " us, E2 = " << report.predicted->t_e2 << " us\n";
  }
  if (report.geometry_class)
    std::cout << "geometry: " << to_string(*report.geometry_class) << " (mismatch "
              << report.geometry_mismatch << " rad/m)\n";
  if (report.readout)
    std::cout << "readout: peak |Im rho13| = " << report.readout->peak_im_rho13
              << ", depletion = " << report.readout->depletion_fraction << "\n";
  for (const auto& s : report.sweeps) {
    std::cout << "sweep " << s.parameter << ": argbest = " << s.argbest;
    if (s.smallest_area_reaching_09)
      std::cout << ", smallest area with depletion >= 0.9: " << *s.smallest_area_reaching_09;
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Raman echo simulator: three-level lambda ensembles under "
               "double-rephasing pulse protocols"};
  app.require_subcommand(1);

  std::string config_path, out_dir, preset_name, sweep_param, sweep_values;
  bool per_group = false, svg = false;

  CLI::App* run = app.add_subcommand("run", "run a configuration file");
  run->add_option("--config", config_path, "configuration file (JSON)")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_flag("--per-group", per_group, "also write the per-group CSV");
  run->add_flag("--svg", svg, "also write an SVG plot of the averaged series");

  CLI::App* preset = app.add_subcommand("preset", "run a named preset");
  preset->add_option("name", preset_name, "fig2b|fig2c|fig2e|fig3|fig4a|fig4c")->required();
  preset->add_option("--out", out_dir, "output directory")->required();
  preset->add_flag("--per-group", per_group, "also write the per-group CSV");
  preset->add_flag("--svg", svg, "also write an SVG plot of the averaged series");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep a parameter of the configured protocol");
  sweep->add_option("--config", config_path, "configuration file (JSON)")->required();
  sweep->add_option("--param", sweep_param, "omega_c (values in kHz) or c2_area (values in rad)")
      ->required();
  sweep->add_option("--values", sweep_values, "comma-separated list of values")->required();
  sweep->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const ramanecho::RunOptions opt{out_dir, per_group, svg};
    if (*run) {
      const ramanecho::RunConfig cfg = ramanecho::parse_config(ramanecho::read_file(config_path));
      const auto art = ramanecho::execute_run(cfg, opt);
      print_warnings(art.report.warnings);
      print_summary(art.report);
    } else if (*preset) {
      const auto art = ramanecho::execute_preset(preset_name, opt);
      print_warnings(art.report.warnings);
      print_summary(art.report);
    } else if (*sweep) {
      const ramanecho::RunConfig cfg = ramanecho::parse_config(ramanecho::read_file(config_path));
      const auto report =
          ramanecho::execute_sweep(cfg, sweep_param, parse_value_list(sweep_values), opt);
      print_warnings(report.warnings);
      print_summary(report);
    }
  } catch (const ramanecho::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error\n  " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
