#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "laserent/fock.hpp"

namespace laserent::entropy {

// Entropies are in units of k_B; fluxes in units of k_B per unit time.

enum class Method {
  direct_sum,
  closed_form_laser,
  closed_form_thermal,
  closed_form_high_t,
  closed_form_bec,
  closed_form_bulk_gas,
};

std::string_view to_string(Method m);

struct EntropyValue {
  double value = 0.0;
  Method method = Method::direct_sum;
  /// Set when the expression was evaluated outside its validity region, or
  /// when the BEC closed form fell back to the direct sum.
  std::optional<std::string> warning;
};

struct EntropyFlux {
  double value = 0.0;
  /// Photon throughput κ = k_B P/ħν in k_B units per unit time.
  double kappa = 0.0;
};

/// −Σ ρ_n ln ρ_n with 0 ln 0 = 0.
EntropyValue von_neumann_entropy(const fock::FockDistribution& d);

/// ln√(2πA) + ½ for the laser well above threshold. Warns when
/// (α−γ)/γ < 0.1, where the distribution is cut off by the vacuum.
EntropyValue laser_entropy_closed_form(const fock::LaserParams& p);

/// Same quantity written as ln√(2π n̄ α/(α−γ)) + ½; identical to the A form.
double laser_entropy_from_occupation(double alpha_over_excess, double n_bar);

/// (n̄+1) ln(n̄+1) − n̄ ln n̄ for single-mode thermal light.
EntropyValue thermal_entropy_closed_form(double n_bar);

/// High-temperature limit ln n̄ + 1.
EntropyValue thermal_entropy_high_t(double n_bar_high);

/// Ṡ = κ/(2 n̄_m) for a laser above threshold.
EntropyFlux entropy_flux_maser(double n_bar_m, double kappa);

/// Ṡ = κ/n̄_high for hot thermal light.
EntropyFlux entropy_flux_thermal(double n_bar_high, double kappa);

/// Entropy change for adding (+1) or removing (−1) photons, δn/(2 n̄_m).
double delta_s_maser(double n_bar_m, double delta_n = 1.0);
/// δn / n̄_high.
double delta_s_thermal(double n_bar_high, double delta_n = 1.0);

struct BecEntropyOptions {
  /// Below this H the closed form is replaced by the direct sum (flagged).
  double h_floor = 1.0;
};

/// ln√(2πH) + ½ with H = N t³.
EntropyValue bec_ground_entropy_closed_form(const fock::BecParams& p,
                                            const BecEntropyOptions& opts = {});

/// Thermodynamic-limit Bose gas entropy 3.6 N t³. N is real so that
/// macroscopic counts such as 10²³ are representable.
EntropyValue bulk_bose_gas_entropy(double n_total, double t_reduced, double exponent = 3.0);

}  // namespace laserent::entropy
