#pragma once

// SI defining constants (exact since the 2019 redefinition). Every physical
// unit conversion in the command-line layer goes through this file.

#include <string>

namespace laserent::cli::units {

inline constexpr double kPlanck = 6.62607015e-34;           // J s
inline constexpr double kBoltzmann = 1.380649e-23;          // J/K
inline constexpr double kElementaryCharge = 1.602176634e-19;  // J/eV

/// Photon energy in eV for a frequency given in "Hz" (ordinary frequency, E = h f) or "eV".
double photon_energy_ev(double value, const std::string& unit);

/// Thermal energy k_B T in eV for a temperature given in "K" or "eV".
double thermal_energy_ev(double value, const std::string& unit);

/// Photon throughput P/(h f) in photons per second for power in W and frequency in Hz.
double photon_rate_from_power(double power_w, double frequency_hz);

}  // namespace laserent::cli::units
