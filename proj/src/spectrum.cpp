#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "laserent/dynamics.hpp"
#include "laserent/errors.hpp"

namespace laserent::dynamics {

namespace {

class SampledField {
 public:
  SampledField(double center, double d, const SpectrumSampling& sampling)
      : center_(center), dt_(2.0 * std::numbers::pi / (center * sampling.samples_per_period)) {
    const auto count =
        static_cast<std::size_t>(std::ceil(sampling.decay_lengths / (d * dt_))) + 1;
    envelope_.resize(count);
    const CoherenceDecay decay{1, d};
    for (std::size_t k = 0; k < count; ++k) {
      envelope_[k] = coherence_decay_factor(decay, static_cast<double>(k) * dt_);
    }
  }

  /// |dt Σ_k f(t_k) e^(−iω t_k)|²
  double power(double omega) const {
    const double detuning = center_ - omega;
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < envelope_.size(); ++k) {
      sum += std::polar(envelope_[k], detuning * static_cast<double>(k) * dt_);
    }
    return std::norm(sum * dt_);
  }

 private:
  double center_;
  double dt_;
  std::vector<double> envelope_;
};

template <class F>
double bisect(F&& f, double lo, double hi, int iterations = 80) {
  // f(lo) and f(hi) have opposite signs.
  const bool lo_negative = f(lo) < 0.0;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double sampled_spectrum_fwhm(double center_frequency, double d_coefficient,
                             const SpectrumSampling& sampling) {
  if (!(center_frequency > 0.0)) throw DomainError("center frequency must be positive");
  if (!(d_coefficient > 0.0)) throw DomainError("phase diffusion must be positive");
  if (!(sampling.samples_per_period > 2.0)) {
    throw DomainError("need more than two samples per carrier period");
  }
  const SampledField field(center_frequency, d_coefficient, sampling);

  // Coarse scan for the peak, then golden-section refinement.
  const double window = 20.0 * d_coefficient;
  const int scan = 400;
  double best_omega = center_frequency;
  double best_power = -1.0;
  for (int i = 0; i <= scan; ++i) {
    const double omega = center_frequency - window + 2.0 * window * i / scan;
    const double pw = field.power(omega);
    if (pw > best_power) {
      best_power = pw;
      best_omega = omega;
    }
  }
  const double step = 2.0 * window / scan;
  double lo = best_omega - step;
  double hi = best_omega + step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 80; ++i) {
    const double a = hi - inv_phi * (hi - lo);
    const double b = lo + inv_phi * (hi - lo);
    if (field.power(a) < field.power(b)) {
      lo = a;
    } else {
      hi = b;
    }
  }
  const double peak_omega = 0.5 * (lo + hi);
  const double half = 0.5 * field.power(peak_omega);

  auto excess = [&](double omega) { return field.power(omega) - half; };
  const double left = bisect(excess, center_frequency - window, peak_omega);
  const double right = bisect(excess, peak_omega, center_frequency + window);
  return right - left;
}

}  // namespace laserent::dynamics
