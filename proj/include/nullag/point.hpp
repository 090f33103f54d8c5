#pragma once

#include <map>
#include <string>

namespace nullag {

/// Numeric values of the jet coordinates at one point.
struct JetPoint {
  double x = 0.0;
  double xdot = 0.0;
  double xddot = 0.0;
  double xdddot = 0.0;
  double t = 0.0;
};

/// A concrete sample at which two quantities were found to differ (or a
/// guard to fail): jet values, named-constant values, the opaque-function
/// instantiation in force, and the two evaluated sides.
struct Witness {
  JetPoint point;
  std::map<std::string, double> params;
  std::map<std::string, std::string> functions;
  double lhs = 0.0;
  double rhs = 0.0;
};

}  // namespace nullag
