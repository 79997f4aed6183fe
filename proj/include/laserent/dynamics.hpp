#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "laserent/fock.hpp"

namespace laserent::dynamics {

/// Birth-death ladder of the diagonal master equation
///
///   ρ̇_n = −G(n+1)(n+1)ρ_n + G(n) n ρ_{n−1} − L(n) n ρ_n + L(n+1)(n+1) ρ_{n+1}
///
/// truncated at n_max with a reflecting top rung.
class LadderModel {
 public:
  using RateFn = std::function<double(std::int64_t)>;

  LadderModel(RateFn gain, RateFn loss, std::int64_t n_max, std::string name);

  double gain(std::int64_t n) const { return gain_(n); }
  double loss(std::int64_t n) const { return loss_(n); }
  std::int64_t n_max() const { return n_max_; }
  const std::string& name() const { return name_; }

  /// n -> n+1 rate G(n+1)(n+1) ignoring the truncation.
  double raw_up_rate(std::int64_t n) const;
  /// n -> n+1 rate on the truncated ladder (zero out of the top rung).
  double up_rate(std::int64_t n) const { return n >= n_max_ ? 0.0 : raw_up_rate(n); }
  /// n -> n−1 rate L(n) n.
  double down_rate(std::int64_t n) const;
  /// max_n [up_rate(n) + down_rate(n)]
  double max_exit_rate() const;

 private:
  RateFn gain_;
  RateFn loss_;
  std::int64_t n_max_;
  std::string name_;
};

/// G(n) = α/(1 + (β/α) n), L = γ.
LadderModel laser_model(const fock::LaserParams& p, std::int64_t n_max);
/// Ladder long enough to hold the laser steady state to `tolerance`.
std::int64_t suggested_laser_n_max(const fock::LaserParams& p, double tolerance = 1e-12);

/// Atom laser: an excited atom falls into the ground state at rate κ per atom,
/// so the n0 -> n0+1 rate is κ(N − n0)(n0+1); loss L = κ N t³. n_max = N.
LadderModel bec_model(const fock::BecParams& p);

LadderModel constant_model(double gain, double loss, std::int64_t n_max);

/// Tabulated G(n), L(n) for n = 0..size−1; the last entry holds beyond the table.
LadderModel table_model(std::vector<double> gain, std::vector<double> loss, std::int64_t n_max,
                        std::string name = "table");

/// Detailed-balance steady state, ρ_{n+1}/ρ_n = G(n+1)/L(n+1), in the log domain.
///
/// Throws NonNormalizableError if the ratio stays >= 1 up to n_max and
/// TruncationError if the ladder is too short for `tolerance`.
fock::FockDistribution steady_state(const LadderModel& m, double tolerance = 1e-12);

/// 1/(safety · max exit rate).
double stable_time_step(const LadderModel& m, double safety = 1.25);

struct EvolveOptions {
  /// Time step; zero selects stable_time_step(m).
  double dt = 0.0;
  /// Call the observer every `sample_stride` steps (and at t = 0 and t_final).
  std::int64_t sample_stride = 0;
  std::function<void(double t, std::span<const double> probs)> observer;
};

struct Evolution {
  fock::FockDistribution final_state;
  double dt = 0.0;
  std::int64_t steps = 0;
  /// |Σρ − 1| at the end of the run, before renormalization.
  double norm_drift = 0.0;
  /// Total negative mass clipped to zero over the run.
  double clipped_mass = 0.0;
};

/// Classic RK4 integration of the truncated master equation.
///
/// Throws InstabilityError (carrying a suggested time step) when the norm
/// drifts by more than 1e-6 or more than 1e-6 of negative mass is clipped.
Evolution evolve(const LadderModel& m, const fock::FockDistribution& initial, double t_final,
                 const EvolveOptions& opts = {});

/// Final state of evolve(); dt = 0 selects stable_time_step(m).
fock::FockDistribution evolve_diagonal(const LadderModel& m, const fock::FockDistribution& initial,
                                       double t_final, double dt = 0.0);

// Off-diagonal decay and linewidth.

struct CoherenceDecay {
  std::int64_t eta = 0;        ///< off-diagonality, ρ_{n,n+η}
  double d_coefficient = 0.0;  ///< phase diffusion D

  double rate() const {
    return static_cast<double>(eta) * static_cast<double>(eta) * d_coefficient;
  }
};

/// D = α/(4 n̄) above threshold.
double phase_diffusion(const fock::LaserParams& p);

/// e^(−η² D t)
double coherence_decay_factor(const CoherenceDecay& c, double t);

struct FieldEnvelope {
  double amplitude = 0.0;  ///< e0 e^(−Dt)
  double relative = 0.0;   ///< |⟨E⟩(t)| / |⟨E⟩(0)|
  double phase = 0.0;      ///< ν t, reported separately from the envelope
};

FieldEnvelope mean_field_envelope(const fock::LaserParams& p, double e0, double t,
                                  double center_frequency = 0.0);

enum class Regime { above_threshold, below_threshold };

std::string to_string(Regime r);

struct Spectrum {
  double center_frequency = 0.0;
  double fwhm = 0.0;
  Regime regime = Regime::above_threshold;
  double n_bar = 0.0;
};

/// α/(2n̄)
double linewidth_above(double alpha, double n_bar);
/// α/n̄
double linewidth_below(double alpha, double n_bar);

/// Steady state of the below-threshold photon equation, n̄ = α/(γ − α).
double below_threshold_occupation(const fock::LaserParams& p);
/// dn̄/dt = α(n̄ + 1) − γ n̄
double below_threshold_photon_rate(const fock::LaserParams& p, double n_bar);

/// Above: Δν = α/(2n̄) with n̄ = A − B. Below: Δν' = α/n̄ with n̄ = α/(γ−α).
/// Throws DomainError at α = γ or when the regime does not match α/γ.
Spectrum linewidth(const fock::LaserParams& p, Regime regime, double center_frequency = 0.0);

struct FieldRate {
  double rate = 0.0;                 ///< ½(α − γ)
  double rate_via_occupation = 0.0;  ///< −α/(2n̄)
  double n_bar = 0.0;
};

/// Below threshold the mean field decays at ½(α − γ). Using the photon-number
/// steady state this is −α/(2n̄): the magnitude relation |γ − α| = α/n̄.
FieldRate below_threshold_field_rate(const fock::LaserParams& p);

struct SpectrumSampling {
  /// Samples per carrier period 2π/ν.
  double samples_per_period = 8.0;
  /// Record length in units of 1/D.
  double decay_lengths = 40.0;
};

/// FWHM of |F(ω)|², F the discrete-time Fourier transform of e^(iνt − Dt)
/// sampled on t >= 0, located numerically (peak search plus bisection).
double sampled_spectrum_fwhm(double center_frequency, double d_coefficient,
                             const SpectrumSampling& sampling = {});

/// Spontaneously generated linewidth and entropy flux below and above threshold,
/// with α ≈ γ = ν/Q in steady state.
struct LinewidthEntropyTable {
  double linewidth_below = 0.0;  ///< (ν/Q)/n̄_h
  double linewidth_above = 0.0;  ///< (ν/Q)/(2 n̄_l)
  double flux_below = 0.0;       ///< κ/n̄_h
  double flux_above = 0.0;       ///< κ/(2 n̄_l)

  double linewidth_ratio() const { return linewidth_below / linewidth_above; }
  double flux_ratio() const { return flux_below / flux_above; }
};

LinewidthEntropyTable linewidth_entropy_table(double n_bar_hot, double n_bar_laser,
                                              double nu_over_q, double kappa);

}  // namespace laserent::dynamics
