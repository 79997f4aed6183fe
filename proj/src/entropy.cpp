#include "laserent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "laserent/errors.hpp"

namespace laserent::entropy {

namespace {

constexpr double kBulkCoefficient = 3.6;

double gaussian_entropy(double variance) {
  return 0.5 * std::log(2.0 * std::numbers::pi * variance) + 0.5;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::direct_sum: return "direct_sum";
    case Method::closed_form_laser: return "closed_form_laser";
    case Method::closed_form_thermal: return "closed_form_thermal";
    case Method::closed_form_high_t: return "closed_form_high_t";
    case Method::closed_form_bec: return "closed_form_bec";
    case Method::closed_form_bulk_gas: return "closed_form_bulk_gas";
  }
  return "unknown";
}

EntropyValue von_neumann_entropy(const fock::FockDistribution& d) {
  // Neumaier summation; the sums run over up to 10^7 small terms.
  double sum = 0.0;
  double compensation = 0.0;
  for (double p : d.probs()) {
    if (p <= 0.0) continue;
    const double term = -p * std::log(p);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
  }
  return {std::max(0.0, sum + compensation), Method::direct_sum, std::nullopt};
}

EntropyValue laser_entropy_closed_form(const fock::LaserParams& p) {
  p.validate();
  EntropyValue s{gaussian_entropy(p.a()), Method::closed_form_laser, std::nullopt};
  if (p.excess() < 0.1) {
    std::ostringstream os;
    os << "laser closed form used at (alpha-gamma)/gamma = " << p.excess()
       << "; it is only reliable well above threshold (>= 0.1)";
    s.warning = os.str();
  }
  return s;
}

double laser_entropy_from_occupation(double alpha_over_excess, double n_bar) {
  if (!(alpha_over_excess > 0.0) || !(n_bar > 0.0)) {
    throw DomainError("laser entropy needs alpha > gamma and n_bar > 0");
  }
  return gaussian_entropy(alpha_over_excess * n_bar);
}

EntropyValue thermal_entropy_closed_form(double n_bar) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
    throw DomainError("thermal occupancy must be finite and nonnegative");
  }
  if (n_bar == 0.0) return {0.0, Method::closed_form_thermal, std::nullopt};
  // (n+1)ln(n+1) − n ln n = ln(1+n) + n ln(1 + 1/n)
  const double s = std::log1p(n_bar) + n_bar * std::log1p(1.0 / n_bar);
  return {s, Method::closed_form_thermal, std::nullopt};
}

EntropyValue thermal_entropy_high_t(double n_bar_high) {
  if (!(n_bar_high > 0.0)) throw DomainError("high-temperature occupancy must be positive");
  return {std::log(n_bar_high) + 1.0, Method::closed_form_high_t, std::nullopt};
}

EntropyFlux entropy_flux_maser(double n_bar_m, double kappa) {
  if (!(n_bar_m > 0.0)) throw DomainError("maser occupation must be positive");
  return {kappa / (2.0 * n_bar_m), kappa};
}

EntropyFlux entropy_flux_thermal(double n_bar_high, double kappa) {
  if (!(n_bar_high > 0.0)) throw DomainError("thermal occupation must be positive");
  return {kappa / n_bar_high, kappa};
}

double delta_s_maser(double n_bar_m, double delta_n) {
  return entropy_flux_maser(n_bar_m, delta_n).value;
}

double delta_s_thermal(double n_bar_high, double delta_n) {
  return entropy_flux_thermal(n_bar_high, delta_n).value;
}

EntropyValue bec_ground_entropy_closed_form(const fock::BecParams& p,
                                            const BecEntropyOptions& opts) {
  p.validate();
  const double h = p.h();
  // Relative slack so that e.g. N = 1000, t = 0.1 (H = 1 up to rounding) stays closed-form.
  if (h >= opts.h_floor * (1.0 - 1e-12)) {
    return {gaussian_entropy(h), Method::closed_form_bec, std::nullopt};
  }
  EntropyValue direct = von_neumann_entropy(fock::bec_ground_distribution(p));
  std::ostringstream os;
  os << "H = " << h << " is below the floor " << opts.h_floor
     << "; closed form replaced by the direct sum";
  direct.warning = os.str();
  return direct;
}

EntropyValue bulk_bose_gas_entropy(double n_total, double t_reduced, double exponent) {
  if (!(n_total > 0.0)) throw DomainError("atom number must be positive");
  if (!(t_reduced >= 0.0 && t_reduced < 1.0)) {
    throw DomainError("reduced temperature T/T_c must lie in [0, 1)");
  }
  return {kBulkCoefficient * n_total * std::pow(t_reduced, exponent),
          Method::closed_form_bulk_gas, std::nullopt};
}

}  // namespace laserent::entropy
