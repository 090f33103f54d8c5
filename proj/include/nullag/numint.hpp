#pragma once

#include "nullag/domain.hpp"
#include "nullag/evaluate.hpp"
#include "nullag/expr.hpp"
#include "nullag/variational.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nullag {

/// Step size used when none is given.
inline constexpr double kDefaultStep = 1e-3;
/// Drift tolerance, relative to 1 + |L_0|.
inline constexpr double kDriftTolerance = 1e-7;

/// x'' = g(x, x', t) with x(t0) = x0, x'(t0) = v0, integrated to t1.
///
/// `bindings` supplies named constants and opaque functions. Every guard of
/// `domain` is checked at each grid point; the box is not. t1 < t0
/// integrates backward with step magnitude h.
struct IVP {
  Expr g;
  Bindings bindings;
  double t0 = 0.0;
  double x0 = 0.0;
  double v0 = 0.0;
  double t1 = 1.0;
  double h = kDefaultStep;
  Domain domain;
};

/// Grid t_k = t0 + k h (signed), with a shorter last step landing on t1.
struct Trajectory {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> v;
  std::string integrator = "rk4";
  double h = 0.0;

  std::size_t size() const { return t.size(); }
};

/// Classical fourth-order Runge-Kutta. Throws domain_exit (with the
/// offending state as witness) when a guard or the right side fails, and
/// non_finite when the state blows up.
Trajectory integrate(const IVP& ivp);

struct DriftReport {
  std::vector<double> values;  // L_null at each grid point
  double initial = 0.0;
  double max_abs = 0.0;
  double relative = 0.0;  // max_abs / (1 + |L_0|)
  double tolerance = kDriftTolerance;

  bool passed() const { return relative <= tolerance; }
};

/// L_null = B x' + C x + f along the trajectory, evaluated with `bindings`.
DriftReport drift(const NullPair& np, const Trajectory& traj, const Bindings& bindings,
                  double tolerance = kDriftTolerance);

struct Deviation {
  double x = 0.0;
  double v = 0.0;

  double max() const { return x > v ? x : v; }
};

/// Largest pointwise differences. Throws grid_mismatch unless both
/// trajectories share the same grid.
Deviation compare(const Trajectory& a, const Trajectory& b);

/// CSV with header t,x,xdot,L_null at full double precision. L_null is left
/// empty when no drift report is given.
void write_csv(std::ostream& out, const Trajectory& traj, const DriftReport* drift = nullptr);

}  // namespace nullag
