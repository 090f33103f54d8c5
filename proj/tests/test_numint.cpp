#include "support.hpp"

#include "nullag/composer.hpp"
#include "nullag/errors.hpp"
#include "nullag/numint.hpp"
#include "nullag/systems.hpp"

#include <cmath>
#include <sstream>

using namespace nullag;
using nullag::test::P;

namespace {

Bindings defaults() {
  Bindings b;
  for (const auto& [k, v] : default_constants()) b.set_param(k, v);
  return b;
}

Trajectory run(const char* g, double x0, double v0, double t1, double h, const Bindings& b = {}) {
  return integrate(IVP{P(g), b, 0.0, x0, v0, t1, h, {}});
}

double oscillator_error(double h) { return std::abs(run("-2*x' - x", 1, 0, 1, h).x.back() - 2 / std::exp(1.0)); }
double quadratic_error(double h) { return std::abs(run("-x'^2", 0, 2, 1, h).x.back() - std::log(3.0)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("integrate against closed forms") {
  Trajectory free = run("0", 1, 2, 1, 0.1);
  CHECK(free.x.back() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(free.t.back() == 1.0);
  CHECK(free.size() == 11);
  CHECK(free.integrator == "rk4");

  CHECK(std::abs(run("-2*x' - x", 1, 0, 1, 1e-3).x.back() - 0.7357588823428847) <= 1e-8);
  CHECK(std::abs(run("-x'^2", 0, 2, 1, 1e-3).x.back() - 1.0986122886681098) <= 1e-8);

  // Grid is t0 + k h with a short last step.
  Trajectory partial = run("0", 0, 1, 0.25, 0.1);
  REQUIRE(partial.size() == 4);
  CHECK(partial.t[2] == 0.2);
  CHECK(partial.t[3] == 0.25);
  CHECK(partial.x[3] == doctest::Approx(0.25));
}

TEST_CASE("integrate errors") {
  CHECK(code_of([] { run("0", 0, 1, 1, 0.0); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { run("0", 0, 1, 0, 0.1); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { run("x''", 0, 1, 1, 0.1); }) == ErrorCode::invalid_argument);
  // x' = 1 + x^2 reaches infinity at t = pi/2.
  CHECK(code_of([] { run("2*x*x'", 0, 1, 3, 1e-3); }) == ErrorCode::non_finite);

  Domain pos;
  pos.guard_positive(P("x"));
  try {
    integrate(IVP{P("0"), {}, 0.0, 1.0, -1.0, 2.0, 0.01, pos});
    FAIL("expected a domain exit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain_exit);
    REQUIRE(e.witness().has_value());
    CHECK(e.witness()->point.t == doctest::Approx(1.0).epsilon(0.02));
  }
  CHECK(code_of([] { run("a0*x", 0, 1, 1, 0.1); }) == ErrorCode::unbound_atom);
}

TEST_CASE("drift") {
  Bindings b = defaults();
  NullPair inertia = build_null(P("c1"));
  Trajectory t0 = integrate(IVP{P("0"), b, 0, 0, 2, 1, 1e-3, {}});
  DriftReport d0 = drift(inertia, t0, b);
  CHECK(d0.initial == 2.0);
  CHECK(d0.max_abs == 0.0);
  CHECK(d0.passed());

  NullPair quad = build_null(P("B0*exp(alpha0*x)"));
  Trajectory tq = integrate(IVP{solve_leading(corollary1_eom(quad)).g, b, 0, 0, 2, 5, 1e-3, {}});
  DriftReport dq = drift(quad, tq, b);
  CHECK(dq.initial == doctest::Approx(2.0));
  CHECK(dq.max_abs <= 1e-8);

  NullPair osc = build_null(P("B0*exp(beta0*t/2)"));
  Trajectory to = integrate(IVP{solve_leading(corollary1_eom(osc)).g, b, 0, 1, 0, 5, 1e-3, {}});
  DriftReport dosc = drift(osc, to, b);
  CHECK(dosc.initial == doctest::Approx(1.0));
  CHECK(dosc.max_abs <= 1e-8);
  REQUIRE(dosc.values.size() == to.size());
  // x = (1 + t) e^-t along the grid.
  for (std::size_t k = 0; k < to.size(); k += 500) {
    CHECK(std::abs(to.x[k] - (1 + to.t[k]) * std::exp(-to.t[k])) <= 1e-8);
  }

  DriftReport strict = drift(quad, tq, b, 0.0);
  CHECK(strict.passed() == (strict.max_abs == 0.0));
}

TEST_CASE("compare") {
  Bindings b = defaults();
  ComparisonTriple inertia = comparison_catalog(TripleSystem::inertia);
  Trajectory a = integrate(IVP{solve_leading(corollary1_eom(inertia.L_null)).g, b, 0, 0, 2, 1, 1e-3, {}});
  Trajectory s = integrate(IVP{solve_leading(euler_lagrange_eom(inertia.L_sd)).g, b, 0, 0, 2, 1, 1e-3, {}});
  Deviation d = compare(a, s);
  CHECK(d.x == 0.0);
  CHECK(d.v == 0.0);

  Trajectory shorter = run("0", 0, 2, 0.5, 1e-3);
  CHECK(code_of([&] { compare(a, shorter); }) == ErrorCode::grid_mismatch);
  Trajectory coarser = run("0", 0, 2, 1, 2e-3);
  CHECK(code_of([&] { compare(a, coarser); }) == ErrorCode::grid_mismatch);
}

TEST_CASE("write_csv") {
  Trajectory tr = run("0", 0, 1, 0.2, 0.1);
  std::ostringstream plain;
  write_csv(plain, tr);
  std::istringstream lines(plain.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "t,x,xdot,L_null");
  std::getline(lines, line);
  CHECK(line == "0,0,1,");

  Bindings b;
  b.set_param("c1", 3);
  DriftReport dr = drift(build_null(P("c1")), tr, b);
  std::ostringstream with;
  write_csv(with, tr, &dr);
  CHECK(with.str().find("\n0.10000000000000001,0.10000000000000001,1,3\n") != std::string::npos);
}

TEST_CASE("property: fourth-order convergence") {
  for (double h : {0.02, 0.01}) {
    double ro = oscillator_error(h) / oscillator_error(h / 2);
    double rq = quadratic_error(h) / quadratic_error(h / 2);
    INFO("h = ", h, " oscillator ", ro, " quadratic ", rq);
    CHECK(ro >= 14);
    CHECK(ro <= 18);
    CHECK(rq >= 14);
    CHECK(rq <= 18);
  }
}

TEST_CASE("property: drift scales as h^4") {
  Bindings b = defaults();
  NullPair osc = build_null(P("B0*exp(beta0*t/2)"));
  Expr g = solve_leading(corollary1_eom(osc)).g;
  auto drift_at = [&](double h) { return drift(osc, integrate(IVP{g, b, 0, 1, 0, 5, h, {}}), b).max_abs; };
  double ratio = drift_at(0.02) / drift_at(0.01);
  CHECK(ratio >= 12);
  CHECK(ratio <= 20);
}

TEST_CASE("property: forward then backward returns the initial state") {
  nullag::test::TreeGen gen(61);
  for (int i = 0; i < 10; ++i) {
    double x0 = gen.uniform(-1, 1);
    double v0 = gen.uniform(-2, 2);
    Trajectory fwd = run("0", x0, v0, 3, 1e-3);
    Trajectory back = integrate(IVP{P("0"), {}, 3.0, fwd.x.back(), fwd.v.back(), 0.0, 1e-3, {}});
    CHECK(std::abs(back.x.back() - x0) <= 1e-10);
    CHECK(std::abs(back.v.back() - v0) <= 1e-10);
    CHECK(back.t.back() == 0.0);
  }
  // The oscillator is not reversible in energy, but RK4 still retraces it.
  Trajectory f = run("-2*x' - x", 1, 0, 1, 1e-3);
  Trajectory r = integrate(IVP{P("-2*x' - x"), {}, 1.0, f.x.back(), f.v.back(), 0.0, 1e-3, {}});
  CHECK(std::abs(r.x.back() - 1) <= 1e-10);
}

TEST_CASE("property: the three routes of every triple agree over [0, 5]") {
  Bindings b = defaults();
  for (TripleSystem s : {TripleSystem::inertia, TripleSystem::quadratic_damping, TripleSystem::damped_oscillator_tied}) {
    ComparisonTriple c = comparison_catalog(s);
    double x0 = s == TripleSystem::damped_oscillator_tied ? 1.0 : 0.0;
    double v0 = s == TripleSystem::damped_oscillator_tied ? 0.0 : 2.0;
    std::vector<Trajectory> tr;
    for (const EquationOfMotion& e :
         {euler_lagrange_eom(c.L_sd), euler_lagrange_eom(c.L_nsd), corollary1_eom(c.L_null)}) {
      ExplicitForm ef = solve_leading(e);
      tr.push_back(integrate(IVP{ef.g, b, 0, x0, v0, 5, 1e-3, ef.domain}));
    }
    INFO(triple_name(s));
    CHECK(compare(tr[0], tr[1]).max() <= 1e-8);
    CHECK(compare(tr[0], tr[2]).max() <= 1e-8);
    CHECK(compare(tr[1], tr[2]).max() <= 1e-8);
  }
}
