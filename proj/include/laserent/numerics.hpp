#pragma once

#include <cstdint>
#include <limits>
#include <span>

namespace laserent::numerics {

struct SeriesOptions {
  /// Stop once the bound on the remaining tail, relative to the running sum,
  /// drops below this value.
  double tolerance = 1e-12;
  std::int64_t term_cap = 10'000'000;
};

struct SeriesResult {
  double value = 0.0;  ///< ln of the sum when log_domain is set
  bool log_domain = true;
  std::int64_t terms_used = 0;
  bool converged = false;
  /// Upper bound on (remaining tail)/(accumulated sum) at termination.
  double tail_ratio = 0.0;

  /// The sum in the linear domain (may overflow to +inf for huge sums).
  double linear() const;
};

/// ln Γ(x) for x > 0 (Lanczos, g = 7). Throws DomainError for x <= 0.
double log_gamma(double x);

/// ln(n!) exactly by product for n <= 20, via log_gamma(n + 1) beyond.
double log_factorial(std::int64_t n);

/// ln Γ(x + 1); the factorial of a non-integer x.
double log_factorial(double x);

/// ln√(2πn) + n ln n − n. Throws DomainError for n <= 0.
double stirling_log_factorial(double n);

/// ₁F₁(1; b; a) = Σ_k a^k / [b (b+1) … (b+k−1)], summed in the log domain.
///
/// The terms grow while a/(b+k) > 1 and then decay faster than geometric, so
/// once the ratio drops below one the remaining tail is bounded by
/// t_k · r/(1 − r). Failure to reach the tolerance within the term cap is
/// reported with converged = false.
SeriesResult hypergeometric_1f1_1(double b, double a, const SeriesOptions& opts = {});

/// Large-argument form ₁F₁(1; B+1; A) ≈ B! e^A A^(−B), returned as a logarithm.
double log_hypergeometric_1f1_1_asymptotic(double b_shift, double a);

/// Numerically stable ln(Σ exp(x_i)) over the span; -inf for an empty span.
double log_sum_exp(std::span<const double> xs);

/// Running log-domain accumulator for sums of huge or tiny positive terms.
class LogSumAccumulator {
 public:
  void add(double log_term);
  double log_sum() const;

 private:
  double scale_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;  // Σ exp(log_term − scale_)
};

}  // namespace laserent::numerics
