#include "units.hpp"

#include "laserent/errors.hpp"

namespace laserent::cli::units {

double photon_energy_ev(double value, const std::string& unit) {
  if (unit == "eV") return value;
  if (unit == "Hz") return kPlanck * value / kElementaryCharge;
  throw DomainError("unknown frequency unit '" + unit + "' (expected Hz or eV)");
}

double thermal_energy_ev(double value, const std::string& unit) {
  if (unit == "eV") return value;
  if (unit == "K") return kBoltzmann * value / kElementaryCharge;
  throw DomainError("unknown temperature unit '" + unit + "' (expected K or eV)");
}

double photon_rate_from_power(double power_w, double frequency_hz) {
  if (!(frequency_hz > 0.0)) throw DomainError("laser frequency must be positive");
  return power_w / (kPlanck * frequency_hz);
}

}  // namespace laserent::cli::units
