#include "laserent/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ladder.hpp"
#include "laserent/entropy.hpp"
#include "laserent/errors.hpp"

namespace laserent::dynamics {

namespace {

constexpr double kDriftLimit = 1e-6;

}  // namespace

LadderModel::LadderModel(RateFn gain, RateFn loss, std::int64_t n_max, std::string name)
    : gain_(std::move(gain)), loss_(std::move(loss)), n_max_(n_max), name_(std::move(name)) {
  if (n_max_ < 0) throw DomainError("ladder n_max must be nonnegative");
  if (!gain_ || !loss_) throw DomainError("ladder needs gain and loss functions");
}

double LadderModel::raw_up_rate(std::int64_t n) const {
  return gain_(n + 1) * static_cast<double>(n + 1);
}

double LadderModel::down_rate(std::int64_t n) const {
  return n <= 0 ? 0.0 : loss_(n) * static_cast<double>(n);
}

double LadderModel::max_exit_rate() const {
  double best = 0.0;
  for (std::int64_t n = 0; n <= n_max_; ++n) {
    best = std::max(best, up_rate(n) + down_rate(n));
  }
  return best;
}

LadderModel laser_model(const fock::LaserParams& p, std::int64_t n_max) {
  p.validate();
  return LadderModel([p](std::int64_t n) { return p.gain(static_cast<double>(n)); },
                     [g = p.gamma](std::int64_t) { return g; }, n_max, "laser");
}

std::int64_t suggested_laser_n_max(const fock::LaserParams& p, double tolerance) {
  fock::TruncationOptions opts;
  opts.tolerance = tolerance;
  return fock::laser_exact_distribution(p, opts).n_max();
}

LadderModel bec_model(const fock::BecParams& p) {
  p.validate();
  const auto n_total = p.n_total;
  const double kappa = p.kappa_wall;
  const double loss = kappa * p.h();
  // In the G(n+1)(n+1) slot of the master equation, G(m) = κ(N − m + 1) gives
  // the n0 -> n0+1 rate κ(N − n0)(n0 + 1).
  return LadderModel(
      [n_total, kappa](std::int64_t m) {
        return kappa * static_cast<double>(std::max<std::int64_t>(0, n_total - m + 1));
      },
      [loss](std::int64_t) { return loss; }, n_total, "bec");
}

LadderModel constant_model(double gain, double loss, std::int64_t n_max) {
  if (!(gain >= 0.0) || !(loss >= 0.0)) throw DomainError("rates must be nonnegative");
  return LadderModel([gain](std::int64_t) { return gain; },
                     [loss](std::int64_t) { return loss; }, n_max, "constant");
}

LadderModel table_model(std::vector<double> gain, std::vector<double> loss, std::int64_t n_max,
                        std::string name) {
  if (gain.empty() || loss.empty()) throw DomainError("rate table must not be empty");
  for (double g : gain) {
    if (!(g >= 0.0)) throw DomainError("tabulated gain must be nonnegative");
  }
  for (double l : loss) {
    if (!(l >= 0.0)) throw DomainError("tabulated loss must be nonnegative");
  }
  auto lookup = [](const std::vector<double>& table) {
    return [table](std::int64_t n) {
      const auto i = static_cast<std::size_t>(
          std::clamp<std::int64_t>(n, 0, static_cast<std::int64_t>(table.size()) - 1));
      return table[i];
    };
  };
  return LadderModel(lookup(gain), lookup(loss), n_max, std::move(name));
}

fock::FockDistribution steady_state(const LadderModel& m, double tolerance) {
  fock::TruncationOptions opts;
  opts.tolerance = tolerance;
  opts.hard_cap = m.n_max() + 1;
  opts.validate();
  auto log_ratio = [&](std::int64_t n) {
    const double up = m.raw_up_rate(n);
    if (up <= 0.0) return -std::numeric_limits<double>::infinity();
    const double down = m.down_rate(n + 1);
    if (!(down > 0.0)) {
      throw DomainError("steady state needs a positive loss rate on every rung n >= 1");
    }
    return std::log(up) - std::log(down);
  };
  try {
    auto ladder = detail::build_ladder(
        log_ratio, [](std::int64_t, double recursive) { return recursive; }, opts);
    return detail::finish_ladder(ladder);
  } catch (const TruncationError& e) {
    if (log_ratio(m.n_max()) >= 0.0) {
      throw NonNormalizableError(
          "ladder '" + m.name() +
          "' is not normalizable: the detailed-balance ratio G(n+1)/L(n+1) stays >= 1 up to "
          "n_max = " + std::to_string(m.n_max()));
    }
    throw;
  }
}

double stable_time_step(const LadderModel& m, double safety) {
  const double rate = m.max_exit_rate();
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (safety * rate);
}

Evolution evolve(const LadderModel& m, const fock::FockDistribution& initial, double t_final,
                 const EvolveOptions& opts) {
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw DomainError("t_final must be finite and nonnegative");
  }
  if (initial.n_max() > m.n_max()) {
    throw DomainError("initial distribution extends beyond the model's n_max");
  }
  if (opts.dt < 0.0) throw DomainError("time step must be positive");

  const auto size = static_cast<std::size_t>(m.n_max()) + 1;
  std::vector<double> up(size), down(size), exit(size);
  for (std::size_t n = 0; n < size; ++n) {
    up[n] = m.up_rate(static_cast<std::int64_t>(n));
    down[n] = m.down_rate(static_cast<std::int64_t>(n));
    exit[n] = up[n] + down[n];
  }

  const double suggested = stable_time_step(m);
  double dt = opts.dt > 0.0 ? opts.dt : suggested;
  std::int64_t steps = 0;
  if (t_final > 0.0) {
    if (!std::isfinite(dt)) dt = t_final;
    steps = static_cast<std::int64_t>(std::ceil(t_final / dt - 1e-12));
    steps = std::max<std::int64_t>(steps, 1);
    dt = t_final / static_cast<double>(steps);
  }

  std::vector<double> p(size, 0.0);
  std::copy(initial.probs().begin(), initial.probs().end(), p.begin());
  std::vector<double> k1(size), k2(size), k3(size), k4(size), tmp(size);

  const std::size_t last = size - 1;
  auto deriv = [&](const std::vector<double>& x, std::vector<double>& out) {
    if (size == 1) {
      out[0] = 0.0;
      return;
    }
    out[0] = -exit[0] * x[0] + down[1] * x[1];
    for (std::size_t n = 1; n < last; ++n) {
      out[n] = -exit[n] * x[n] + up[n - 1] * x[n - 1] + down[n + 1] * x[n + 1];
    }
    out[last] = -exit[last] * x[last] + up[last - 1] * x[last - 1];
  };

  auto observe = [&](std::int64_t step) {
    if (opts.observer) opts.observer(static_cast<double>(step) * dt, p);
  };

  Evolution result{fock::FockDistribution::point_mass(0), dt, steps, 0.0, 0.0};
  const bool sampling = opts.observer && opts.sample_stride > 0;
  if (opts.observer) observe(0);

  const double half = 0.5 * dt;
  const double sixth = dt / 6.0;
  for (std::int64_t step = 1; step <= steps; ++step) {
    deriv(p, k1);
    for (std::size_t n = 0; n < size; ++n) tmp[n] = p[n] + half * k1[n];
    deriv(tmp, k2);
    for (std::size_t n = 0; n < size; ++n) tmp[n] = p[n] + half * k2[n];
    deriv(tmp, k3);
    for (std::size_t n = 0; n < size; ++n) tmp[n] = p[n] + dt * k3[n];
    deriv(tmp, k4);

    double sum = 0.0;
    for (std::size_t n = 0; n < size; ++n) {
      double v = p[n] + sixth * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
      if (v < 0.0) {
        result.clipped_mass -= v;
        v = 0.0;
      }
      p[n] = v;
      sum += v;
    }
    result.norm_drift = std::abs(sum - 1.0);
    if (result.norm_drift > kDriftLimit || result.clipped_mass > kDriftLimit ||
        !std::isfinite(sum)) {
      std::ostringstream os;
      os << "master-equation integration became unstable at step " << step << " (dt = " << dt
         << ", norm drift " << result.norm_drift << ", clipped mass " << result.clipped_mass
         << "); try dt <= " << suggested;
      throw InstabilityError(os.str(), suggested);
    }
    if (sampling && (step % opts.sample_stride == 0 || step == steps)) observe(step);
  }
  if (opts.observer && !sampling && steps > 0) observe(steps);

  result.final_state = fock::FockDistribution::from_weights(std::move(p));
  return result;
}

fock::FockDistribution evolve_diagonal(const LadderModel& m, const fock::FockDistribution& initial,
                                       double t_final, double dt) {
  EvolveOptions opts;
  opts.dt = dt;
  return evolve(m, initial, t_final, opts).final_state;
}

double phase_diffusion(const fock::LaserParams& p) {
  p.validate();
  if (!(p.alpha > p.gamma)) throw DomainError("phase diffusion D = alpha/4n needs alpha > gamma");
  return p.alpha / (4.0 * p.n_bar());
}

double coherence_decay_factor(const CoherenceDecay& c, double t) {
  if (!(t >= 0.0)) throw DomainError("coherence decay needs t >= 0");
  if (!(c.d_coefficient >= 0.0)) throw DomainError("phase diffusion must be nonnegative");
  return std::exp(-c.rate() * t);
}

FieldEnvelope mean_field_envelope(const fock::LaserParams& p, double e0, double t,
                                  double center_frequency) {
  const double relative = coherence_decay_factor({1, phase_diffusion(p)}, t);
  return {e0 * relative, relative, center_frequency * t};
}

std::string to_string(Regime r) {
  return r == Regime::above_threshold ? "above_threshold" : "below_threshold";
}

double linewidth_above(double alpha, double n_bar) {
  if (!(n_bar > 0.0)) throw DomainError("linewidth needs n_bar > 0");
  return alpha / (2.0 * n_bar);
}

double linewidth_below(double alpha, double n_bar) {
  if (!(n_bar > 0.0)) throw DomainError("linewidth needs n_bar > 0");
  return alpha / n_bar;
}

double below_threshold_occupation(const fock::LaserParams& p) {
  p.validate();
  if (!(p.alpha < p.gamma)) throw DomainError("below-threshold occupation needs alpha < gamma");
  return p.alpha / (p.gamma - p.alpha);
}

double below_threshold_photon_rate(const fock::LaserParams& p, double n_bar) {
  return p.alpha * (n_bar + 1.0) - p.gamma * n_bar;
}

Spectrum linewidth(const fock::LaserParams& p, Regime regime, double center_frequency) {
  p.validate();
  if (p.alpha == p.gamma) {
    throw DomainError("linewidth is singular at threshold alpha = gamma");
  }
  Spectrum s;
  s.center_frequency = center_frequency;
  s.regime = regime;
  if (regime == Regime::above_threshold) {
    if (!(p.alpha > p.gamma)) throw DomainError("above-threshold linewidth needs alpha > gamma");
    s.n_bar = p.n_bar();
    s.fwhm = linewidth_above(p.alpha, s.n_bar);
  } else {
    if (!(p.alpha < p.gamma)) throw DomainError("below-threshold linewidth needs alpha < gamma");
    s.n_bar = below_threshold_occupation(p);
    s.fwhm = linewidth_below(p.alpha, s.n_bar);
  }
  return s;
}

FieldRate below_threshold_field_rate(const fock::LaserParams& p) {
  p.validate();
  if (!(p.alpha < p.gamma)) throw DomainError("below-threshold field rate needs alpha < gamma");
  FieldRate r;
  r.n_bar = below_threshold_occupation(p);
  r.rate = 0.5 * (p.alpha - p.gamma);
  r.rate_via_occupation = -p.alpha / (2.0 * r.n_bar);
  return r;
}

LinewidthEntropyTable linewidth_entropy_table(double n_bar_hot, double n_bar_laser,
                                              double nu_over_q, double kappa) {
  if (!(nu_over_q > 0.0)) throw DomainError("nu/Q must be positive");
  LinewidthEntropyTable t;
  t.linewidth_below = linewidth_below(nu_over_q, n_bar_hot);
  t.linewidth_above = linewidth_above(nu_over_q, n_bar_laser);
  t.flux_below = entropy::entropy_flux_thermal(n_bar_hot, kappa).value;
  t.flux_above = entropy::entropy_flux_maser(n_bar_laser, kappa).value;
  return t;
}

}  // namespace laserent::dynamics
