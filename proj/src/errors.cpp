#include "laserent/errors.hpp"

#include <sstream>

namespace laserent {

namespace {

std::string truncation_message(std::int64_t cap, double achieved_tail) {
  std::ostringstream os;
  os << "ladder truncation failed: hard cap of " << cap
     << " rungs reached with tail bound " << achieved_tail;
  return os.str();
}

}  // namespace

TruncationError::TruncationError(std::int64_t cap, double achieved_tail)
    : NumericalError(truncation_message(cap, achieved_tail)),
      cap_(cap),
      achieved_tail_(achieved_tail) {}

InstabilityError::InstabilityError(const std::string& what, double suggested_dt)
    : NumericalError(what), suggested_dt_(suggested_dt) {}

}  // namespace laserent
