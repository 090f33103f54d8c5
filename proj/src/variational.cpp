#include "nullag/variational.hpp"

#include "nullag/diff.hpp"
#include "nullag/errors.hpp"
#include "nullag/integrate.hpp"
#include "nullag/print.hpp"

#include <cmath>
#include <random>
#include <numbers>

namespace nullag {

Lagrangian Lagrangian::make(const Expr& body, Domain domain) {
  if (jet_order(body) > 1) {
    throw Error(ErrorCode::invalid_argument, "a Lagrangian depends on x, x', t only: " + to_string(body));
  }
  return {body, std::move(domain)};
}

GaugeFunction GaugeFunction::make(const Expr& body, Domain domain) {
  if (jet_order(body) > 0) {
    throw Error(ErrorCode::invalid_argument, "a gauge function depends on x, t only: " + to_string(body));
  }
  return {body, std::move(domain)};
}

std::string_view nullity_name(Nullity n) {
  switch (n) {
    case Nullity::proven_null: return "ProvenNull";
    case Nullity::numerically_null: return "NumericallyNull";
    case Nullity::not_null: return "NotNull";
  }
  return "NotNull";
}

Expr momentum(const Lagrangian& L) { return partial(L.body, Jet::xdot); }

Expr euler_lagrange_residual(const Lagrangian& L) {
  return total_dt(momentum(L)) - partial(L.body, Jet::x);
}

NullityReport is_null(const Lagrangian& L, const CheckOptions& options) {
  NullityReport rep;
  rep.residual = euler_lagrange_residual(L);
  rep.check = equivalent(rep.residual, Expr(0), L.domain, options);
  switch (rep.check.verdict) {
    case Verdict::proven_equal: rep.verdict = Nullity::proven_null; break;
    case Verdict::numerically_equal: rep.verdict = Nullity::numerically_null; break;
    case Verdict::distinct: rep.verdict = Nullity::not_null; break;
  }
  return rep;
}

Lagrangian from_gauge(const GaugeFunction& phi) {
  return Lagrangian::make(total_dt(phi.body), phi.domain);
}

Expr null_condition_residual(const Expr& B, const Expr& C) {
  return partial(B, Jet::t) - partial(sym::x() * C, Jet::x);
}

NullPair::NullPair(Expr B, Expr C, Expr f, Domain domain)
    : B_(std::move(B)), C_(std::move(C)), f_(std::move(f)), domain_(std::move(domain)) {}

NullPair NullPair::uncertified(const Expr& B, const Expr& C, const Expr& f, const Domain& domain) {
  if (jet_order(B) > 0 || jet_order(C) > 0 || depends_on(f, sym::x()) || jet_order(f) > 0) {
    throw Error(ErrorCode::invalid_argument, "B and C must be functions of (x, t) and f of t");
  }
  return NullPair(B, C, f, domain);
}

NullPair NullPair::certify(const Expr& B, const Expr& C, const Expr& f, const Domain& domain,
                           const CheckOptions& options) {
  NullPair np = uncertified(B, C, f, domain);
  auto condition = equivalent(null_condition_residual(B, C), Expr(0), domain, options);
  if (!condition.equal()) {
    throw Error(ErrorCode::null_certification_failed,
                "null condition fails for B = " + to_string(B) + ", C = " + to_string(C), *condition.witness);
  }
  NullityReport rep = is_null(np.lagrangian(), options);
  if (!rep.null()) {
    throw Error(ErrorCode::null_certification_failed, "Euler-Lagrange residual does not vanish",
                *rep.check.witness);
  }
  np.certificate_ = std::move(rep);
  return np;
}

Expr NullPair::body() const { return B_ * sym::xdot() + C_ * sym::x() + f_; }

Path Path::line(double t0, double x0, double t1, double x1) {
  double slope = (x1 - x0) / (t1 - t0);
  return {t0, t1, [=](double t) { return x0 + slope * (t - t0); }, [=](double) { return slope; }};
}

Path Path::with_bump(double amplitude, int k) const {
  double w = std::numbers::pi * k / (t1 - t0);
  double s = t0;
  auto bx = x;
  auto bv = xdot;
  return {t0, t1, [=](double t) { return bx(t) + amplitude * std::sin(w * (t - s)); },
          [=](double t) { return bv(t) + amplitude * w * std::cos(w * (t - s)); }};
}

std::vector<Bump> bump_family(int count, double max_amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> mode(1, 3);
  std::vector<Bump> out;
  for (int i = 0; i < count; ++i) {
    double a = max_amplitude * (1.0 - unit(rng));  // (0, max]
    out.push_back({a, mode(rng)});
  }
  return out;
}

double action(const Lagrangian& L, const Path& p, const Bindings& values, int panels) {
  if (panels < 2 || panels % 2 != 0) throw Error(ErrorCode::invalid_argument, "Simpson needs an even panel count");
  Evaluator ev(L.body, values);
  std::vector<Evaluator> guards;
  for (const auto& g : L.domain.guards) guards.emplace_back(g.expr, values);
  double h = (p.t1 - p.t0) / panels;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    double t = p.t0 + i * h;
    JetPoint pt;
    pt.t = t;
    pt.x = p.x(t);
    pt.xdot = p.xdot(t);
    double v = 0.0;
    try {
      for (std::size_t g = 0; g < guards.size(); ++g) {
        double gv = guards[g](pt);
        bool bad = L.domain.guards[g].kind == GuardKind::positive ? gv < kGuardEpsilon : std::abs(gv) < kGuardEpsilon;
        if (bad) throw Error(ErrorCode::division_guard, "guard violated");
      }
      v = ev(pt);
    } catch (const Error& e) {
      Witness w;
      w.point = pt;
      throw Error(ErrorCode::path_exits_domain, "path leaves the domain at t = " + std::to_string(t) + ": " + e.what(), w);
    }
    double weight = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += weight * v;
  }
  double result = sum * h / 3.0;
  if (!std::isfinite(result)) throw Error(ErrorCode::quadrature_non_finite, "action is not finite");
  return result;
}

PathIndependenceReport path_independence_check(const Lagrangian& L, const Path& p1, const Path& p2,
                                               const Bindings& values, double tolerance, int panels) {
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); };
  if (!close(p1.t0, p2.t0) || !close(p1.t1, p2.t1) || !close(p1.x(p1.t0), p2.x(p2.t0)) ||
      !close(p1.x(p1.t1), p2.x(p2.t1))) {
    throw Error(ErrorCode::endpoint_mismatch, "paths do not share endpoints");
  }
  PathIndependenceReport rep;
  rep.action1 = action(L, p1, values, panels);
  rep.action2 = action(L, p2, values, panels);
  rep.difference = std::abs(rep.action1 - rep.action2);
  rep.tolerance = tolerance;
  rep.passed = rep.difference <= tolerance;
  return rep;
}

GaugeReconstruction reconstruct_gauge(const Lagrangian& L) {
  GaugeReconstruction out;
  Expr B = momentum(L);
  if (jet_order(B) > 0) {
    out.reason = "gauge not reconstructed: L is not linear in x'";
    return out;
  }
  try {
    Expr phi0 = antiderivative(B, Jet::x).value;
    Expr rest = L.body - total_dt(phi0);
    if (depends_on(rest, sym::x()) || jet_order(rest) > 0) {
      if (!proven_zero(partial(rest, Jet::x))) {
        out.reason = "gauge not reconstructed: remainder depends on x, so L is not null";
        return out;
      }
    }
    Expr g = antiderivative(rest, Jet::t).value;
    out.phi = phi0 + g;
    out.reconstructed = true;
  } catch (const Error& e) {
    out.reason = std::string("gauge not reconstructed: ") + e.what();
  }
  return out;
}

}  // namespace nullag
