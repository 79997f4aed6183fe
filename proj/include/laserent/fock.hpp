#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace laserent::fock {

/// Rate constants of the single-mode laser: linear gain α, saturation β and
/// cavity loss γ = ν/Q, all in the same inverse-time unit.
struct LaserParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  /// Throws DomainError unless all three rates are positive and finite.
  void validate() const;

  double a() const { return alpha * alpha / (beta * gamma); }  ///< α²/(βγ)
  double b() const { return alpha / beta; }                     ///< α/β
  /// Mean photon number above threshold, A − B.
  double n_bar() const { return a() - b(); }
  double pump_ratio() const { return alpha / gamma; }
  /// (α − γ)/γ, the fractional excess over threshold.
  double excess() const { return (alpha - gamma) / gamma; }
  /// Gain coefficient G(n) = α / (1 + (β/α) n).
  double gain(double n) const { return alpha / (1.0 + (beta / alpha) * n); }
};

/// Atom-laser (condensate) parameters for N atoms at reduced temperature T/T_c.
struct BecParams {
  std::int64_t n_total = 0;
  double t_reduced = 0.0;
  double kappa_wall = 1.0;
  /// Condensate-fraction exponent; 3 for a parabolic trap.
  double exponent = 3.0;

  /// Throws DomainError unless N >= 1, 0 <= t < 1, κ > 0 and exponent > 0.
  void validate() const;

  /// Mean number of non-condensed atoms, N t^exponent.
  double h() const;
  /// Mean condensate occupation N (1 − t^exponent).
  double mean_condensate() const { return static_cast<double>(n_total) - h(); }
};

struct TruncationOptions {
  double tolerance = 1e-12;
  std::int64_t hard_cap = 10'000'000;

  void validate() const;
};

struct DistributionMetadata {
  /// Upper bound on the probability mass beyond n_max that was discarded.
  double tail_mass_bound = 0.0;
  /// ln of the sum of the unnormalized weights before normalization. For the
  /// exact laser ladder (w_0 = 1) this is ln Z.
  double log_normalization = 0.0;
  std::vector<std::string> warnings;
};

/// Normalized probability vector over occupation numbers n = 0..n_max.
///
/// Entries are nonnegative and sum to one within 1e-9. Rungs whose weight
/// underflows in the linear domain are stored as exact zeros.
class FockDistribution {
 public:
  using Metadata = DistributionMetadata;

  /// Normalizes nonnegative weights (at least one positive).
  static FockDistribution from_weights(std::vector<double> weights, Metadata meta = {});
  static FockDistribution point_mass(std::int64_t n);

  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  std::int64_t n_max() const { return static_cast<std::int64_t>(probs_.size()) - 1; }
  /// Probability of rung n; zero outside the stored ladder.
  double operator[](std::int64_t n) const;

  double tail_mass_bound() const { return meta_.tail_mass_bound; }
  double log_normalization() const { return meta_.log_normalization; }
  const std::vector<std::string>& warnings() const { return meta_.warnings; }

 private:
  FockDistribution(std::vector<double> probs, Metadata meta);

  std::vector<double> probs_;
  Metadata meta_;
};

/// Exact steady state ρ_n = B! Aⁿ / [Z (n+B)!], built from the detailed-balance
/// recursion ρ_{n+1}/ρ_n = A/(n+1+B) in the log domain.
FockDistribution laser_exact_distribution(const LaserParams& p,
                                          const TruncationOptions& opts = {});

/// Shifted Poisson ρ_n = A^(n+B) e^(−A)/(n+B)!, renormalized on the ladder.
/// Below (α−γ)/γ = 0.1 the result carries a validity warning.
FockDistribution laser_shifted_poisson(const LaserParams& p,
                                       const TruncationOptions& opts = {});

/// Discretized Gaussian ρ_n ∝ exp[−(n − n̄)²/(2A)], n̄ = A − B.
FockDistribution laser_gaussian(const LaserParams& p, const TruncationOptions& opts = {});

/// Geometric (single-mode thermal) distribution n̄ⁿ/(n̄+1)^(n+1).
FockDistribution thermal_distribution(double n_bar, const TruncationOptions& opts = {});

/// Planck occupancy 1/(eˣ − 1) for x = ħν/k_BT > 0.
double planck_occupancy(double x);

/// Condensate distribution ρ_{n0} = H^(N−n0) e^(−H)/(N−n0)! on n0 = 0..N,
/// renormalized over the finite support. A warning is attached when the
/// discarded Poisson mass exceeds 1e-3.
FockDistribution bec_ground_distribution(const BecParams& p);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  std::int64_t mode = 0;  ///< smallest argmax
};

Moments moments(const FockDistribution& d);

/// ½ Σ |p_n − q_n|, with the shorter vector zero-padded.
double total_variation(std::span<const double> p, std::span<const double> q);
double total_variation(const FockDistribution& p, const FockDistribution& q);

}  // namespace laserent::fock
