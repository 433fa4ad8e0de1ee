#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "ramanecho/ensemble.hpp"

namespace ramanecho {

// 12 significant digits, enough to re-derive every reported number from the
// series exactly.
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline std::string averaged_csv(const EnsembleTrajectory& traj) {
  std::string out = "t_us,rho11,rho22,rho33,re_rho12,im_rho12,abs_avg_rho12,im_rho13,abs_avg_rho13\n";
  for (size_t i = 0; i < traj.size(); ++i) {
    out += format_number(traj.times[i]);
    for (double v : {traj.rho11[i], traj.rho22[i], traj.rho33[i], traj.re_rho12[i],
                     traj.im_rho12[i], traj.abs_rho12[i], traj.im_rho13[i], traj.abs_rho13[i]}) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

// Per-group series, one block per detuning group.
inline std::string per_group_csv(const EnsembleTrajectory& traj) {
  if (traj.per_group.empty())
    throw std::invalid_argument("per_group_csv: per-group trajectories were not kept");
  std::string out = "t_us,delta_krad_per_us,re_rho12,im_rho12,rho22,rho33\n";
  for (size_t g = 0; g < traj.groups.size(); ++g) {
    const std::string delta = format_number(traj.groups[g].delta / 1e3);
    const Trajectory& t = traj.per_group[g];
    for (size_t i = 0; i < t.times.size(); ++i) {
      const DensityMatrix& rho = t.states[i];
      out += format_number(t.times[i]);
      out += ',';
      out += delta;
      for (double v : {std::real(rho.rho12()), std::imag(rho.rho12()), std::real(rho.rho22()),
                       std::real(rho.rho33())}) {
        out += ',';
        out += format_number(v);
      }
      out += '\n';
    }
  }
  return out;
}

// Write-temp-then-rename so readers never observe a half-written file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

}  // namespace ramanecho
