#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ramanecho {

// Static parameters of one atom group. Frequencies in rad/us, rates in 1/us.
struct AtomParams {
  double delta = 0.0;    // two-photon detuning (the ensemble-distributed quantity)
  double Delta = 0.0;    // one-photon (probe) detuning
  double Gamma31 = 0.0;  // population decay |3> -> |1>
  double Gamma32 = 0.0;  // population decay |3> -> |2>
  double gamma13 = 0.0;  // optical coherence decay
  double gamma23 = 0.0;  // optical coherence decay
  double gamma12 = 0.0;  // spin coherence decay
};

// Throws on negative rates; returns soft physicality warnings
// (optical dephasing slower than population decay allows).
inline std::vector<std::string> validate(const AtomParams& p) {
  if (p.Gamma31 < 0 || p.Gamma32 < 0 || p.gamma13 < 0 || p.gamma23 < 0 || p.gamma12 < 0)
    throw std::invalid_argument("AtomParams: decay rates must be >= 0");
  std::vector<std::string> warnings;
  const double half_pop = (p.Gamma31 + p.Gamma32) / 2.0;
  if (p.gamma13 < half_pop)
    warnings.push_back("gamma13 < (Gamma31+Gamma32)/2: unphysically slow optical dephasing");
  if (p.gamma23 < half_pop)
    warnings.push_back("gamma23 < (Gamma31+Gamma32)/2: unphysically slow optical dephasing");
  return warnings;
}

}  // namespace ramanecho
