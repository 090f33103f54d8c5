#include "nullag/numint.hpp"

#include "nullag/errors.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace nullag {

namespace {

Witness state_witness(const Bindings& b, double t, double x, double v) {
  Witness w;
  w.point = {x, v, 0.0, 0.0, t};
  for (const auto& [name, value] : b.params()) w.params[name] = to_double(value);
  return w;
}

class GuardCheck {
 public:
  GuardCheck(const Domain& d, const Bindings& b) {
    for (const Guard& g : d.guards) {
      checks_.push_back({Evaluator(g.expr, b), g.kind});
    }
  }

  bool holds(const JetPoint& p) const {
    for (const auto& c : checks_) {
      double v = 0.0;
      try {
        v = c.eval(p);
      } catch (const Error&) {
        return false;
      }
      if (c.kind == GuardKind::nonzero ? std::abs(v) < kGuardEpsilon : v < kGuardEpsilon) return false;
    }
    return true;
  }

 private:
  struct Check {
    Evaluator eval;
    GuardKind kind;
  };
  std::vector<Check> checks_;
};

}  // namespace

Trajectory integrate(const IVP& ivp) {
  if (!(ivp.h > 0.0) || !std::isfinite(ivp.h)) throw Error(ErrorCode::invalid_argument, "step h must be positive");
  if (!std::isfinite(ivp.t0) || !std::isfinite(ivp.t1) || ivp.t1 == ivp.t0) {
    throw Error(ErrorCode::invalid_argument, "horizon t1 must differ from t0");
  }
  if (contains_jet(ivp.g, Jet::xddot) || contains_jet(ivp.g, Jet::xdddot)) {
    throw Error(ErrorCode::invalid_argument, "right side may depend on x, x' and t only");
  }

  const Evaluator g(ivp.g, ivp.bindings);
  const GuardCheck guards(ivp.domain, ivp.bindings);
  const double dir = ivp.t1 > ivp.t0 ? 1.0 : -1.0;
  const double span = std::abs(ivp.t1 - ivp.t0);
  // Full steps, plus a partial one when h does not divide the span.
  const auto full = static_cast<std::size_t>(std::floor(span / ivp.h * (1.0 + 1e-12)));

  Trajectory tr;
  tr.h = ivp.h;
  tr.t.reserve(full + 2);
  tr.x.reserve(full + 2);
  tr.v.reserve(full + 2);

  auto accel = [&](double t, double x, double v) {
    JetPoint p{x, v, 0.0, 0.0, t};
    try {
      return g(p);
    } catch (const Error& e) {
      ErrorCode code = e.code() == ErrorCode::non_finite ? ErrorCode::non_finite : ErrorCode::domain_exit;
      throw Error(code, "right side undefined at t = " + std::to_string(t) + ": " + e.what(),
                  state_witness(ivp.bindings, t, x, v));
    }
  };
  auto record = [&](double t, double x, double v) {
    if (!std::isfinite(x) || !std::isfinite(v)) {
      throw Error(ErrorCode::non_finite, "non-finite state at t = " + std::to_string(t),
                  state_witness(ivp.bindings, t, x, v));
    }
    if (!guards.holds({x, v, 0.0, 0.0, t})) {
      throw Error(ErrorCode::domain_exit, "trajectory leaves the guarded domain at t = " + std::to_string(t),
                  state_witness(ivp.bindings, t, x, v));
    }
    tr.t.push_back(t);
    tr.x.push_back(x);
    tr.v.push_back(v);
  };

  double x = ivp.x0;
  double v = ivp.v0;
  record(ivp.t0, x, v);

  auto step = [&](double t, double h) {
    double k1x = v;
    double k1v = accel(t, x, v);
    double k2x = v + 0.5 * h * k1v;
    double k2v = accel(t + 0.5 * h, x + 0.5 * h * k1x, v + 0.5 * h * k1v);
    double k3x = v + 0.5 * h * k2v;
    double k3v = accel(t + 0.5 * h, x + 0.5 * h * k2x, v + 0.5 * h * k2v);
    double k4x = v + h * k3v;
    double k4v = accel(t + h, x + h * k3x, v + h * k3v);
    x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  };

  const double h = dir * ivp.h;
  for (std::size_t k = 1; k <= full; ++k) {
    double t = ivp.t0 + static_cast<double>(k - 1) * h;
    double tn = k == full && std::abs(ivp.t0 + static_cast<double>(k) * h - ivp.t1) < 1e-12 * (1.0 + span)
                    ? ivp.t1
                    : ivp.t0 + static_cast<double>(k) * h;
    step(t, tn - t);
    record(tn, x, v);
  }
  if (tr.t.back() != ivp.t1) {
    double t = tr.t.back();
    step(t, ivp.t1 - t);
    record(ivp.t1, x, v);
  }
  return tr;
}

DriftReport drift(const NullPair& np, const Trajectory& traj, const Bindings& bindings, double tolerance) {
  if (traj.size() == 0) throw Error(ErrorCode::invalid_argument, "empty trajectory");
  const Evaluator L(np.body(), bindings);
  DriftReport rep;
  rep.tolerance = tolerance;
  rep.values.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    rep.values.push_back(L({traj.x[k], traj.v[k], 0.0, 0.0, traj.t[k]}));
  }
  rep.initial = rep.values.front();
  for (double v : rep.values) rep.max_abs = std::max(rep.max_abs, std::abs(v - rep.initial));
  rep.relative = rep.max_abs / (1.0 + std::abs(rep.initial));
  return rep;
}

Deviation compare(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::grid_mismatch, "trajectories have different lengths");
  Deviation d;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.t[k] != b.t[k]) throw Error(ErrorCode::grid_mismatch, "trajectories differ at grid index " + std::to_string(k));
    d.x = std::max(d.x, std::abs(a.x[k] - b.x[k]));
    d.v = std::max(d.v, std::abs(a.v[k] - b.v[k]));
  }
  return d;
}

void write_csv(std::ostream& out, const Trajectory& traj, const DriftReport* drift) {
  auto flags = out.flags();
  auto precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "t,x,xdot,L_null\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << traj.t[k] << ',' << traj.x[k] << ',' << traj.v[k] << ',';
    if (drift && k < drift->values.size()) out << drift->values[k];
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace nullag
