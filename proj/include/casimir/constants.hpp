#pragma once

#include <numbers>

namespace casimir {

/// CODATA 2018 exact / recommended values, SI units.
namespace si {
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double k_boltzmann = 1.380649e-23;    // J/K
inline constexpr double c = 299792458.0;               // m/s
inline constexpr double electron_volt = 1.602176634e-19; // J
}  // namespace si

inline constexpr double pi = std::numbers::pi;

/// Photon energy in eV -> angular frequency in rad/s.
constexpr double ev_to_rad_per_s(double energy_ev) {
  return energy_ev * si::electron_volt / si::hbar;
}

constexpr double rad_per_s_to_ev(double omega) {
  return omega * si::hbar / si::electron_volt;
}

}  // namespace casimir
