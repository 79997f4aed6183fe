#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace laserent {

/// Invalid input parameters (outside an operation's precondition).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A ladder hit its hard cap before the tail bound dropped below tolerance.
class TruncationError : public NumericalError {
 public:
  TruncationError(std::int64_t cap, double achieved_tail);

  std::int64_t cap() const { return cap_; }
  double achieved_tail() const { return achieved_tail_; }

 private:
  std::int64_t cap_;
  double achieved_tail_;
};

/// The detailed-balance ratio stays >= 1 up to the cap: no normalizable steady state.
class NonNormalizableError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Explicit integration drifted away from unit norm or went unstable.
class InstabilityError : public NumericalError {
 public:
  InstabilityError(const std::string& what, double suggested_dt);

  double suggested_dt() const { return suggested_dt_; }

 private:
  double suggested_dt_;
};

}  // namespace laserent
