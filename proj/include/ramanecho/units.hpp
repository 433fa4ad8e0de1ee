#pragma once

#include <cmath>

namespace ramanecho {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Vacuum speed of light, m/s.
inline constexpr double speed_of_light = 299792458.0;

// Internally all frequencies are angular, rad/us; time is in us.
// Configuration files carry ordinary frequencies (kHz / MHz).
inline double khz_to_rad_per_us(double f_khz) { return two_pi * f_khz * 1e-3; }
inline double mhz_to_rad_per_us(double f_mhz) { return two_pi * f_mhz; }
inline double rad_per_us_to_khz(double omega) { return omega / two_pi * 1e3; }

// Gaussian FWHM -> standard deviation.
inline double fwhm_to_sigma(double fwhm) {
  return fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

// Optical angular frequency (rad/s) of a vacuum wavelength in nm.
inline double wavelength_nm_to_omega(double lambda_nm) {
  return two_pi * speed_of_light / (lambda_nm * 1e-9);
}

}  // namespace ramanecho
