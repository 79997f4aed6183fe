#include "laserent/numerics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "laserent/errors.hpp"

namespace laserent::numerics {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLogTwoPi = 0.5 * std::log(2.0 * std::numbers::pi);

double lanczos_log_gamma(double x) {
  // Valid for x >= 0.5.
  x -= 1.0;
  double series = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    series += kLanczosCoeffs[i] / (x + static_cast<double>(i));
  }
  const double t = x + kLanczosG + 0.5;
  return kHalfLogTwoPi + (x + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

double SeriesResult::linear() const { return log_domain ? std::exp(value) : value; }

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite, got " +
                      std::to_string(x));
  }
  if (x < 0.5) {
    // Reflection: Γ(x)Γ(1−x) = π / sin(πx).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           lanczos_log_gamma(1.0 - x);
  }
  return lanczos_log_gamma(x);
}

double log_factorial(std::int64_t n) {
  if (n < 0) {
    throw DomainError("log_factorial: n must be nonnegative, got " + std::to_string(n));
  }
  if (n <= 20) {
    double product = 1.0;
    for (std::int64_t k = 2; k <= n; ++k) product *= static_cast<double>(k);
    return std::log(product);
  }
  return log_gamma(static_cast<double>(n) + 1.0);
}

double log_factorial(double x) {
  if (!(x >= 0.0)) {
    throw DomainError("log_factorial: argument must be nonnegative, got " +
                      std::to_string(x));
  }
  if (x <= 20.0 && x == std::floor(x)) return log_factorial(static_cast<std::int64_t>(x));
  return log_gamma(x + 1.0);
}

double stirling_log_factorial(double n) {
  if (!(n > 0.0)) {
    throw DomainError("stirling_log_factorial: n must be positive, got " +
                      std::to_string(n));
  }
  return 0.5 * std::log(2.0 * std::numbers::pi * n) + n * std::log(n) - n;
}

SeriesResult hypergeometric_1f1_1(double b, double a, const SeriesOptions& opts) {
  if (!(b > 0.0)) throw DomainError("hypergeometric_1f1_1: b must be positive");
  if (!(a >= 0.0)) throw DomainError("hypergeometric_1f1_1: a must be nonnegative");

  SeriesResult result;
  result.log_domain = true;
  if (a == 0.0) {
    result.value = 0.0;
    result.terms_used = 1;
    result.converged = true;
    return result;
  }

  const double log_a = std::log(a);
  LogSumAccumulator acc;
  double log_term = 0.0;  // k = 0 term is 1
  acc.add(log_term);
  std::int64_t k = 0;
  double tail = 1.0;
  while (k + 1 < opts.term_cap) {
    log_term += log_a - std::log(b + static_cast<double>(k));
    ++k;
    acc.add(log_term);
    const double next_ratio = a / (b + static_cast<double>(k));
    if (next_ratio < 1.0) {
      // Ratios decrease monotonically from here on.
      const double log_tail =
          log_term + std::log(next_ratio) - std::log1p(-next_ratio) - acc.log_sum();
      tail = std::exp(log_tail);
      if (tail < opts.tolerance) {
        result.converged = true;
        break;
      }
    }
  }
  result.value = acc.log_sum();
  result.terms_used = k + 1;
  result.tail_ratio = tail;
  return result;
}

double log_hypergeometric_1f1_1_asymptotic(double b_shift, double a) {
  if (!(a > 0.0)) throw DomainError("asymptotic 1F1 needs a > 0");
  return log_factorial(b_shift) + a - b_shift * std::log(a);
}

double log_sum_exp(std::span<const double> xs) {
  LogSumAccumulator acc;
  for (double x : xs) acc.add(x);
  return acc.log_sum();
}

void LogSumAccumulator::add(double log_term) {
  if (log_term == -std::numeric_limits<double>::infinity()) return;
  if (log_term <= scale_) {
    sum_ += std::exp(log_term - scale_);
  } else {
    sum_ = sum_ * std::exp(scale_ - log_term) + 1.0;
    scale_ = log_term;
  }
}

double LogSumAccumulator::log_sum() const {
  if (sum_ == 0.0) return -std::numeric_limits<double>::infinity();
  return scale_ + std::log(sum_);
}

}  // namespace laserent::numerics
