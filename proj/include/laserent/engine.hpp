#pragma once

#include <string_view>

namespace laserent::engine {

// Frequencies and temperatures are given as energies in one common unit
// (ħν and k_BT), so every entropy below is in units of k_B.

struct ReservoirPhoton {
  double frequency = 0.0;    ///< ħν
  double temperature = 0.0;  ///< k_B T

  /// ħν / k_BT
  double x() const { return frequency / temperature; }
};

struct EngineScenario {
  ReservoirPhoton hot;
  ReservoirPhoton cold;
  double maser_frequency = 0.0;   ///< ħν_m = ħν_h − ħν_c
  double maser_occupation = 0.0;  ///< n̄_m
  double photon_rate = 0.0;       ///< maser photons emitted per unit time
};

/// Builds a scenario with ν_m = ν_h − ν_c. Throws DomainError for nonpositive
/// frequencies, temperatures or occupation, ν_c >= ν_h, or T_c > T_h.
EngineScenario make_scenario(ReservoirPhoton hot, ReservoirPhoton cold, double maser_occupation,
                             double photon_rate);

/// Re-checks every scenario invariant, including ν_m = ν_h − ν_c to 1e-12
/// relative, for scenarios assembled by hand.
void validate(const EngineScenario& s);

/// Per-cycle entropy change −x_h + δS_m + x_c for one hot photon absorbed and
/// one maser plus one cold photon emitted.
double cycle_entropy_budget(const EngineScenario& s, double delta_s_maser);

struct CarnotCheck {
  double efficiency = 0.0;  ///< ν_m/ν_h
  double bound = 0.0;       ///< 1 − T_c/T_h
  bool satisfied = false;   ///< efficiency <= bound + 1e-12
  bool at_equality = false; ///< |efficiency − bound| <= 1e-12
};

CarnotCheck carnot_quantum_bound(const EngineScenario& s);

enum class MaserTermVerdict { negligible, comparable };

std::string_view to_string(MaserTermVerdict v);

struct FluxInequality {
  double lhs = 0.0;
  bool satisfied = false;
  double hot_term = 0.0;    ///< (ħν_h/T_h) ṅ_h, ṅ_h = −rate
  double maser_term = 0.0;  ///< ṅ_m/(2 n̄_m)
  double cold_term = 0.0;   ///< (ħν_c/T_c) ṅ_c
  /// High-temperature hot occupancy k_BT_h/ħν_h, so that ħν_h/T_h = k_B/n̄_h.
  double n_bar_hot = 0.0;
  /// |maser term| / |hot term| per photon, n̄_h/(2 n̄_m) at high temperature.
  double maser_to_hot_ratio = 0.0;
  MaserTermVerdict verdict = MaserTermVerdict::negligible;
};

/// Maser entropy term counts as negligible below this fraction of the hot term.
inline constexpr double kNegligibleFraction = 1e-2;

FluxInequality flux_inequality(const EngineScenario& s);

struct ClassicalCarnot {
  double delta_s = 0.0;  ///< −δQ_in/T_h + δS_engine + δQ_out/T_c
  double work = 0.0;     ///< δQ_in − δQ_out
  double efficiency = 0.0;
  double bound = 0.0;    ///< 1 − T_c/T_h
};

/// Classical heat-engine budget written as the entropy change of the universe:
/// heat drawn from the hot bath lowers its entropy, so a reversible cycle has
/// −δQ_in/T_h + δQ_out/T_c = 0.
ClassicalCarnot classical_carnot_check(double q_in, double q_out, double t_hot, double t_cold,
                                       double s_engine);

/// Heat a cycle must reject so that the cold bath carries off the hot-bath
/// entropy plus the engine's own production: δQ_out = T_c (δQ_in/T_h + δS_engine).
double rejected_heat(double q_in, double t_hot, double t_cold, double s_engine);

}  // namespace laserent::engine
