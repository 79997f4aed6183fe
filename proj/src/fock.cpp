#include "laserent/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ladder.hpp"
#include "laserent/errors.hpp"
#include "laserent/numerics.hpp"

namespace laserent::fock {

namespace {

constexpr double kValidityExcess = 0.1;
constexpr double kBecDeficitFlag = 1e-3;
constexpr std::int64_t kMaxBecAtoms = 100'000'000;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

std::vector<std::string> above_threshold_warnings(const LaserParams& p, const char* what) {
  std::vector<std::string> w;
  if (p.excess() < kValidityExcess) {
    std::ostringstream os;
    os << what << " is outside its validity region: (alpha-gamma)/gamma = " << p.excess()
       << " < " << kValidityExcess;
    w.push_back(os.str());
  }
  return w;
}

}  // namespace

void LaserParams::validate() const {
  if (!positive_finite(alpha) || !positive_finite(beta) || !positive_finite(gamma)) {
    throw DomainError("laser parameters alpha, beta, gamma must be positive and finite");
  }
  if (!positive_finite(a()) || !positive_finite(b())) {
    throw DomainError("derived laser constants A and B must be positive and finite");
  }
}

void BecParams::validate() const {
  if (n_total < 1) throw DomainError("BEC atom number N must be >= 1");
  if (n_total > kMaxBecAtoms) {
    throw DomainError("BEC atom number N exceeds the supported maximum for an explicit ladder");
  }
  if (!(t_reduced >= 0.0 && t_reduced < 1.0)) {
    throw DomainError("reduced temperature T/T_c must lie in [0, 1)");
  }
  if (!positive_finite(kappa_wall)) throw DomainError("wall rate kappa must be positive");
  if (!positive_finite(exponent)) throw DomainError("condensate exponent must be positive");
}

double BecParams::h() const {
  return static_cast<double>(n_total) * std::pow(t_reduced, exponent);
}

void TruncationOptions::validate() const {
  if (!(tolerance > 0.0 && tolerance < 1e-3)) {
    throw DomainError("truncation tolerance must lie in (0, 1e-3)");
  }
  if (hard_cap < 1) throw DomainError("truncation hard cap must be positive");
}

FockDistribution::FockDistribution(std::vector<double> probs, Metadata meta)
    : probs_(std::move(probs)), meta_(std::move(meta)) {}

FockDistribution FockDistribution::from_weights(std::vector<double> weights, Metadata meta) {
  if (weights.empty()) throw DomainError("distribution needs at least one rung");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DomainError("distribution weights must be finite and nonnegative");
    }
    sum += w;
  }
  if (!(sum > 0.0)) throw DomainError("distribution weights sum to zero");
  for (double& w : weights) w /= sum;
  meta.log_normalization += std::log(sum);
  return FockDistribution(std::move(weights), std::move(meta));
}

FockDistribution FockDistribution::point_mass(std::int64_t n) {
  if (n < 0) throw DomainError("point mass index must be nonnegative");
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  w.back() = 1.0;
  return FockDistribution(std::move(w), {});
}

double FockDistribution::operator[](std::int64_t n) const {
  if (n < 0 || n > n_max()) return 0.0;
  return probs_[static_cast<std::size_t>(n)];
}

FockDistribution laser_exact_distribution(const LaserParams& p, const TruncationOptions& opts) {
  p.validate();
  opts.validate();
  const double log_a = std::log(p.a());
  const double b = p.b();
  auto ladder = detail::build_ladder(
      [&](std::int64_t n) { return log_a - std::log(static_cast<double>(n) + 1.0 + b); },
      [](std::int64_t, double recursive) { return recursive; }, opts);
  return detail::finish_ladder(ladder);
}

FockDistribution laser_shifted_poisson(const LaserParams& p, const TruncationOptions& opts) {
  p.validate();
  opts.validate();
  const double a = p.a();
  const double log_a = std::log(a);
  const double b = p.b();
  auto ladder = detail::build_ladder(
      [&](std::int64_t n) { return log_a - std::log(static_cast<double>(n) + 1.0 + b); },
      [&](std::int64_t n, double) {
        const double m = static_cast<double>(n) + b;
        return m * log_a - a - numerics::log_factorial(m);
      },
      opts);
  return detail::finish_ladder(ladder, above_threshold_warnings(p, "shifted Poisson form"));
}

FockDistribution laser_gaussian(const LaserParams& p, const TruncationOptions& opts) {
  p.validate();
  opts.validate();
  const double a = p.a();
  const double mean = p.n_bar();
  auto ladder = detail::build_ladder(
      [&](std::int64_t n) {
        return -(2.0 * (static_cast<double>(n) - mean) + 1.0) / (2.0 * a);
      },
      [&](std::int64_t n, double) {
        const double d = static_cast<double>(n) - mean;
        return -d * d / (2.0 * a);
      },
      opts);
  return detail::finish_ladder(ladder, above_threshold_warnings(p, "Gaussian form"));
}

FockDistribution thermal_distribution(double n_bar, const TruncationOptions& opts) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
    throw DomainError("thermal occupancy must be finite and nonnegative");
  }
  opts.validate();
  if (n_bar == 0.0) return FockDistribution::point_mass(0);
  const double log_r = std::log(n_bar) - std::log1p(n_bar);
  const double log_p0 = -std::log1p(n_bar);
  auto ladder = detail::build_ladder(
      [&](std::int64_t) { return log_r; },
      [&](std::int64_t n, double) { return log_p0 + static_cast<double>(n) * log_r; }, opts);
  return detail::finish_ladder(ladder);
}

double planck_occupancy(double x) {
  if (!(x > 0.0)) throw DomainError("Planck occupancy needs x = hbar nu / k_B T > 0");
  return 1.0 / std::expm1(x);
}

FockDistribution bec_ground_distribution(const BecParams& p) {
  p.validate();
  const std::int64_t n = p.n_total;
  const double h = p.h();
  if (h == 0.0) return FockDistribution::point_mass(n);

  const double log_h = std::log(h);
  std::vector<double> log_w(static_cast<std::size_t>(n) + 1);
  for (std::int64_t n0 = 0; n0 <= n; ++n0) {
    const std::int64_t excited = n - n0;
    log_w[static_cast<std::size_t>(n0)] =
        static_cast<double>(excited) * log_h - h - numerics::log_factorial(excited);
  }
  const double log_sum = numerics::log_sum_exp(log_w);
  // Mass of the Poisson tail that would sit at n0 < 0.
  const double deficit = -std::expm1(std::min(log_sum, 0.0));

  detail::LadderResult ladder{std::move(log_w), log_sum, 0.0};
  std::vector<std::string> warnings;
  if (deficit > kBecDeficitFlag) {
    std::ostringstream os;
    os << "condensate Poisson form loses " << deficit
       << " of its mass to the finite support (H = " << h << " is not small against N)";
    warnings.push_back(os.str());
  }
  return detail::finish_ladder(ladder, std::move(warnings));
}

Moments moments(const FockDistribution& d) {
  const auto p = d.probs();
  Moments m;
  double best = -1.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    m.mean += static_cast<double>(n) * p[n];
    if (p[n] > best) {
      best = p[n];
      m.mode = static_cast<std::int64_t>(n);
    }
  }
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double dn = static_cast<double>(n) - m.mean;
    m.variance += dn * dn * p[n];
  }
  return m;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  const std::size_t len = std::max(p.size(), q.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    sum += std::abs(a - b);
  }
  return 0.5 * sum;
}

double total_variation(const FockDistribution& p, const FockDistribution& q) {
  return total_variation(p.probs(), q.probs());
}

}  // namespace laserent::fock
