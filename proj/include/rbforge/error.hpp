#pragma once

#include <stdexcept>
#include <string>

namespace rbforge {

/// Base class for all rbforge errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad scalar text, bad JSON, inconsistent shapes,
/// or load-time algebra invariant failures (non-associative mul tensor,
/// declared unit that is not a unit).
struct LoadError : Error {
  using Error::Error;
};

/// A stated precondition of an operation does not hold (unverified system,
/// missing unit, non-centralizing tensor, unbalanced curvature, ...).
struct PreconditionError : Error {
  using Error::Error;
};

/// Capacity limits: cochain degree above the supported cap.
struct CapacityError : Error {
  using Error::Error;
};

/// An internal consistency assertion failed. Reaching this means either a
/// bug in this library or a falsified theorem; it is never a user error.
struct InternalError : Error {
  using Error::Error;
};

namespace detail {
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}
inline void internal_check(bool cond, const std::string& msg) {
  if (!cond) throw InternalError("internal consistency violation: " + msg);
}
}  // namespace detail

}  // namespace rbforge
