#include "laserent/engine.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "laserent/entropy.hpp"
#include "laserent/errors.hpp"

namespace laserent::engine {

namespace {

constexpr double kExactTolerance = 1e-12;

void check_photon(const ReservoirPhoton& r, const char* which) {
  if (!(r.frequency > 0.0) || !std::isfinite(r.frequency)) {
    throw DomainError(std::string(which) + " reservoir frequency must be positive");
  }
  if (!(r.temperature > 0.0) || !std::isfinite(r.temperature)) {
    throw DomainError(std::string(which) + " reservoir temperature must be positive");
  }
}

}  // namespace

EngineScenario make_scenario(ReservoirPhoton hot, ReservoirPhoton cold, double maser_occupation,
                             double photon_rate) {
  EngineScenario s{hot, cold, hot.frequency - cold.frequency, maser_occupation, photon_rate};
  validate(s);
  return s;
}

void validate(const EngineScenario& s) {
  check_photon(s.hot, "hot");
  check_photon(s.cold, "cold");
  if (!(s.cold.frequency < s.hot.frequency)) {
    throw DomainError("cold photon frequency must be below the hot photon frequency");
  }
  if (s.cold.temperature > s.hot.temperature) {
    throw DomainError("cold reservoir temperature exceeds the hot reservoir temperature");
  }
  const double expected = s.hot.frequency - s.cold.frequency;
  if (std::abs(s.maser_frequency - expected) > kExactTolerance * s.hot.frequency) {
    throw DomainError("energy conservation violated: nu_m must equal nu_h - nu_c");
  }
  if (!(s.maser_occupation > 0.0)) throw DomainError("maser occupation must be positive");
  if (!std::isfinite(s.photon_rate)) throw DomainError("photon rate must be finite");
}

double cycle_entropy_budget(const EngineScenario& s, double delta_s_maser) {
  return -s.hot.x() + delta_s_maser + s.cold.x();
}

CarnotCheck carnot_quantum_bound(const EngineScenario& s) {
  CarnotCheck c;
  c.efficiency = s.maser_frequency / s.hot.frequency;
  c.bound = 1.0 - s.cold.temperature / s.hot.temperature;
  c.satisfied = c.efficiency <= c.bound + kExactTolerance;
  c.at_equality = std::abs(c.efficiency - c.bound) <= kExactTolerance;
  return c;
}

std::string_view to_string(MaserTermVerdict v) {
  return v == MaserTermVerdict::negligible ? "negligible" : "comparable";
}

FluxInequality flux_inequality(const EngineScenario& s) {
  FluxInequality f;
  const double rate = s.photon_rate;
  f.hot_term = s.hot.x() * (-rate);
  f.maser_term = entropy::entropy_flux_maser(s.maser_occupation, rate).value;
  f.cold_term = s.cold.x() * rate;
  f.lhs = f.hot_term + f.maser_term + f.cold_term;
  f.satisfied = f.lhs >= -kExactTolerance * (std::abs(f.hot_term) + std::abs(f.cold_term));
  f.n_bar_hot = 1.0 / s.hot.x();
  f.maser_to_hot_ratio = entropy::delta_s_maser(s.maser_occupation) / s.hot.x();
  f.verdict = f.maser_to_hot_ratio < kNegligibleFraction ? MaserTermVerdict::negligible
                                                         : MaserTermVerdict::comparable;
  return f;
}

ClassicalCarnot classical_carnot_check(double q_in, double q_out, double t_hot, double t_cold,
                                       double s_engine) {
  if (!(q_in > 0.0)) throw DomainError("heat drawn q_in must be positive");
  if (!(t_hot > 0.0) || !(t_cold >= 0.0)) throw DomainError("temperatures must be positive");
  ClassicalCarnot c;
  double cold_term = 0.0;
  if (q_out != 0.0) {
    cold_term = t_cold > 0.0 ? q_out / t_cold : std::copysign(std::numeric_limits<double>::infinity(), q_out);
  }
  c.delta_s = -q_in / t_hot + s_engine + cold_term;
  c.work = q_in - q_out;
  c.efficiency = c.work / q_in;
  c.bound = 1.0 - t_cold / t_hot;
  return c;
}

double rejected_heat(double q_in, double t_hot, double t_cold, double s_engine) {
  if (!(t_hot > 0.0) || !(t_cold >= 0.0)) throw DomainError("temperatures must be positive");
  return t_cold * (q_in / t_hot + s_engine);
}

}  // namespace laserent::engine
