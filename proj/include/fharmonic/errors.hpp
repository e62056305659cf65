#pragma once

#include <stdexcept>
#include <string>

namespace fharmonic {

/// Thrown when the principal coefficient A = G(theta) + G'(theta)*alpha'^2
/// of the second-order equation falls to (numerical) zero, so the explicit
/// form alpha'' = .../A is no longer well posed at the requested state.
class DegenerateCoefficient : public std::runtime_error {
public:
  explicit DegenerateCoefficient(const std::string& what)
      : std::runtime_error(what) {}
};

/// Thrown by density profiles whose evaluation would overflow the double
/// range (e.g. exp(x) for x > ln(DBL_MAX)).  Profiles never return a silent
/// infinity; callers that can interpret the overflow (the solver treats it
/// as a blow-up event) catch this type.
class ProfileOverflow : public std::domain_error {
public:
  explicit ProfileOverflow(const std::string& what)
      : std::domain_error(what) {}
};

/// Thrown by the shooting layer when no slope bracket [c_lo, c_hi] with
/// c_hi <= c_cap straddles the requested boundary target.
class NoBracket : public std::runtime_error {
public:
  explicit NoBracket(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fharmonic
