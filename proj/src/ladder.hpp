#pragma once

// Log-domain construction of a probability ladder w_0 = 1, w_{n+1} = w_n r_n.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "laserent/errors.hpp"
#include "laserent/fock.hpp"
#include "laserent/numerics.hpp"

namespace laserent::detail {

struct LadderResult {
  std::vector<double> log_weights;
  double log_sum = 0.0;
  double tail_bound = 0.0;
};

/// `log_ratio(n)` returns ln(w_{n+1}/w_n); -inf marks a ladder that ends at n.
/// `log_weight(n, recursive)` returns the value stored for rung n given the
/// recursively accumulated one (return `recursive` to store the recursion).
///
/// Stops once the ratio is below one and the geometric bound on the remaining
/// mass, relative to the running sum, is below the tolerance. This assumes the
/// ratios are non-increasing after they first drop below one, which holds for
/// every ladder in this library.
template <class LogRatio, class LogWeight>
LadderResult build_ladder(LogRatio&& log_ratio, LogWeight&& log_weight,
                          const fock::TruncationOptions& opts) {
  LadderResult out;
  numerics::LogSumAccumulator acc;
  double recursive = 0.0;
  for (std::int64_t n = 0; n < opts.hard_cap; ++n) {
    const double stored = log_weight(n, recursive);
    out.log_weights.push_back(stored);
    acc.add(stored);

    const double lr = log_ratio(n);
    if (lr == -std::numeric_limits<double>::infinity()) {
      out.log_sum = acc.log_sum();
      out.tail_bound = 0.0;
      return out;
    }
    if (lr < 0.0) {
      const double r = std::exp(lr);
      const double log_tail = stored + lr - std::log1p(-r) - acc.log_sum();
      out.tail_bound = std::exp(log_tail);
      if (out.tail_bound < opts.tolerance) {
        out.log_sum = acc.log_sum();
        return out;
      }
    } else {
      out.tail_bound = 1.0;
    }
    recursive += lr;
  }
  throw TruncationError(opts.hard_cap, out.tail_bound);
}

/// Converts log weights to a normalized distribution (underflow -> exact 0).
inline fock::FockDistribution finish_ladder(const LadderResult& ladder,
                                            std::vector<std::string> warnings = {}) {
  std::vector<double> probs(ladder.log_weights.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = std::exp(ladder.log_weights[i] - ladder.log_sum);
  }
  fock::FockDistribution::Metadata meta;
  meta.tail_mass_bound = ladder.tail_bound;
  meta.log_normalization = ladder.log_sum;
  meta.warnings = std::move(warnings);
  return fock::FockDistribution::from_weights(std::move(probs), std::move(meta));
}

}  // namespace laserent::detail
