#include "support.hpp"

#include "nullag/construct.hpp"
#include "nullag/domain.hpp"
#include "nullag/equivalence.hpp"
#include "nullag/errors.hpp"
#include "nullag/variational.hpp"


using namespace nullag;
using nullag::test::P;

namespace {

Lagrangian L(const char* text) { return Lagrangian::make(P(text)); }

}  // namespace

TEST_CASE("Lagrangian and GaugeFunction invariants") {
  CHECK_THROWS_AS(Lagrangian::make(P("x''*x")), Error);
  CHECK_THROWS_AS(GaugeFunction::make(P("x'*t")), Error);
  CHECK_NOTHROW(GaugeFunction::make(P("x^2*f1(t)")));
}

TEST_CASE("euler_lagrange_residual") {
  CHECK(euler_lagrange_residual(L("x'^2/2")) == P("x''"));
  CHECK(euler_lagrange_residual(L("2*f1(t)*x*x' + f1(t)'*x^2 + f2(t)'")) == Expr(0));
  Expr r = euler_lagrange_residual(L("x'^2*exp(2*alpha0*x)/2"));
  CHECK(equivalent(r, P("exp(2*alpha0*x)*(x'' + alpha0*x'^2)"), Domain{}).verdict == Verdict::proven_equal);
}

TEST_CASE("is_null") {
  Domain pos;
  pos.guard_positive(P("a2*x + a4"));
  CHECK(is_null(Lagrangian::make(P("a1*x'/(a2*x + a4)"), pos)).verdict == Nullity::proven_null);

  NullityReport r = is_null(L("x'^2/2"));
  CHECK(r.verdict == Nullity::not_null);
  REQUIRE(r.check.witness.has_value());
  CHECK(r.check.witness->point.xddot != 0.0);
  CHECK(r.check.witness->lhs == doctest::Approx(r.check.witness->point.xddot));

  // First harmonic of B = f1 x + f2 t + f3, f = f4.
  NullPair base = build_null(P("f1(t)*x + f2(t)*t + f3(t)"), P("f4(t)"));
  HarmonicLagrangian h1 = harmonic(base, 1);
  CHECK(is_null(Lagrangian::make(h1.body)).verdict == Nullity::proven_null);

  // sin^2 + cos^2 makes the residual vanish only numerically.
  CHECK(is_null(L("x*(sin(t)^2 + cos(t)^2) - x")).verdict == Nullity::numerically_null);
}

TEST_CASE("from_gauge") {
  CHECK(from_gauge(GaugeFunction::make(P("f1(t)*x^2 + f2(t)"))).body == P("2*f1(t)*x*x' + f1(t)'*x^2 + f2(t)'"));
  Domain pos;
  pos.guard_positive(P("a2*x + a4"));
  Lagrangian l = from_gauge(GaugeFunction::make(P("a1/a2*ln(a2*x + a4)"), pos));
  CHECK(l.body == P("a1*x'/(a2*x + a4)"));
  CHECK(from_gauge(GaugeFunction::make(P("7"))).body == Expr(0));
}

TEST_CASE("null_condition_residual") {
  CHECK(null_condition_residual(P("f1(t)*x + f2(t)*t + f3(t)"), P("f1(t)'*x/2 + f2(t)'*t + f2(t) + f3(t)'")) ==
        Expr(0));
  CHECK(null_condition_residual(P("c1"), Expr(0)) == Expr(0));
  Expr r = null_condition_residual(P("B0*exp(alpha0*x + beta0*t/2)"), P("2*B0*gamma0/beta0*exp(alpha0*x + beta0*t/2)"));
  Expr expected = P("B0*exp(alpha0*x + beta0*t/2)*(beta0/2 - 2*gamma0/beta0*(1 + alpha0*x))");
  CHECK(equivalent(r, expected, Domain{}).verdict == Verdict::proven_equal);
  // proportional to beta0^2/4 - (1 + alpha0 x) gamma0
  CHECK(equivalent(r * P("beta0/2") / P("B0*exp(alpha0*x + beta0*t/2)"), P("beta0^2/4 - (1 + alpha0*x)*gamma0"),
                   Domain{})
            .equal());
}

TEST_CASE("momentum") {
  CHECK(momentum(L("x'^2/2")) == P("x'"));
  CHECK(momentum(L("B*x' + C*x + f")) == P("B"));
  CHECK(momentum(L("1/(a1*x' + a2*t + a3)")) == P("-a1/(a1*x' + a2*t + a3)^2"));
}

TEST_CASE("NullPair certification") {
  NullPair ok = NullPair::certify(P("f1(t)*x + f2(t)*t + f3(t)"), P("f1(t)'*x/2 + f2(t)'*t + f2(t) + f3(t)'"),
                                  P("f4(t)"), Domain{});
  CHECK(ok.certified());
  CHECK(ok.certificate()->null());
  try {
    NullPair::certify(P("x*t"), Expr(0), Expr(0), Domain{});
    FAIL("expected certification failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::null_certification_failed);
    CHECK(e.witness().has_value());
  }
  CHECK_FALSE(NullPair::uncertified(P("x"), Expr(0), Expr(0), Domain{}).certified());
}

TEST_CASE("action") {
  Bindings c1;
  c1.set_param("c1", 1.5);
  Path curved{0.0, 1.0, [](double t) { return 2 * t * t; }, [](double t) { return 4 * t; }};
  CHECK(action(L("c1*x'"), curved, c1) == doctest::Approx(3.0).epsilon(1e-12));

  Bindings fs;
  fs.set_function("f1", P("1"));
  fs.set_function("f2", P("t"));
  Path line = Path::line(0, 0, 1, 1);
  CHECK(action(L("2*f1(t)*x*x' + f1(t)'*x^2 + f2(t)'"), line, fs) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(action(L("x'^2/2"), line) == doctest::Approx(0.5).epsilon(1e-12));

  // Simpson is exact on cubics.
  Path cubic{0.0, 1.0, [](double t) { return t * t * t; }, [](double t) { return 3 * t * t; }};
  CHECK(action(L("x"), cubic, {}, 2) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("action errors") {
  Domain pos;
  pos.guard_positive(P("x"));
  Path through_zero = Path::line(0, -1, 1, 1);
  try {
    action(Lagrangian::make(P("x'/x"), pos), through_zero);
    FAIL("expected path exit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::path_exits_domain);
  }
  // Every sample is finite; the weighted sum overflows.
  Path blowup{0.0, 1.0, [](double t) { return 1e306 * (t + 1); }, [](double) { return 1e306; }};
  try {
    action(L("x"), blowup);
    FAIL("expected non-finite quadrature");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::quadrature_non_finite);
  }
}

TEST_CASE("path independence") {
  NullPair np = build_null(P("f1(t)*x + f2(t)*t + f3(t)"), P("f4(t)"));
  Bindings b;
  b.set_function("f1", P("1"));
  for (const char* f : {"f2", "f3", "f4"}) b.set_function(f, P("0"));
  Path base = Path::line(0.25, 0.5, 1.25, 1.0);
  auto r = path_independence_check(np.lagrangian(), base, base.with_bump(0.1, 1), b);
  CHECK(r.passed);
  CHECK(r.difference <= 1e-7);

  auto sd = path_independence_check(L("x'^2/2"), base, base.with_bump(0.1, 1), b);
  CHECK_FALSE(sd.passed);
  CHECK(sd.difference > 1e-7);

  Bindings c1;
  c1.set_param("c1", 2.0);
  auto trivial = path_independence_check(L("c1*x'"), base, base.with_bump(0.05, 3), c1);
  CHECK(trivial.difference < 1e-12);

  try {
    path_independence_check(L("x'"), base, Path::line(0.25, 0.5, 1.25, 2.0));
    FAIL("expected endpoint mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::endpoint_mismatch);
  }
}

TEST_CASE("bumped paths keep x and x' consistent") {
  Path p = Path::line(0, 0, 1, 1).with_bump(0.1, 2);
  const double h = 1e-5;
  for (double t : {0.1, 0.37, 0.8}) {
    double fd = (p.x(t + h) - p.x(t - h)) / (2 * h);
    CHECK(fd == doctest::Approx(p.xdot(t)).epsilon(1e-8));
  }
  CHECK(p.x(0) == doctest::Approx(0.0));
  CHECK(p.x(1) == doctest::Approx(1.0));
}

TEST_CASE("gauge reconstruction") {
  GaugeReconstruction g = reconstruct_gauge(L("2*f1(t)*x*x' + f1(t)'*x^2 + f2(t)'"));
  REQUIRE(g.reconstructed);
  CHECK(equivalent(total_dt(g.phi), P("2*f1(t)*x*x' + f1(t)'*x^2 + f2(t)'"), Domain{}).equal());

  GaugeReconstruction q = reconstruct_gauge(L("x'*exp(x^2)"));
  CHECK_FALSE(q.reconstructed);
  CHECK(q.reason.find("gauge not reconstructed") != std::string::npos);
}

TEST_CASE("property: residual is bilinear and unchanged by null additions") {
  nullag::test::TreeGen gen(31);
  std::vector<NullPair> nulls;
  for (const CorpusEntry& e : standard_corpus()) nulls.push_back(build_entry(e));
  for (int i = 0; i < 40; ++i) {
    Expr l1 = gen.tree(2);
    Expr l2 = gen.tree(2);
    Expr a(gen.small_rational());
    Expr b(gen.small_rational());
    Lagrangian L1 = Lagrangian::make(l1);
    Lagrangian L2 = Lagrangian::make(l2);
    Expr lhs = euler_lagrange_residual(Lagrangian::make(a * l1 + b * l2));
    Expr rhs = a * euler_lagrange_residual(L1) + b * euler_lagrange_residual(L2);
    CHECK(equivalent(lhs, rhs, Domain{}).verdict == Verdict::proven_equal);

    const NullPair& np = nulls[static_cast<std::size_t>(i) % nulls.size()];
    Expr with_null = euler_lagrange_residual(Lagrangian::make(l1 + np.body(), np.domain()));
    INFO(to_string(l1), " + ", to_string(np.body()));
    CHECK(equivalent(with_null, euler_lagrange_residual(L1), np.domain()).equal());
  }
}

TEST_CASE("property: null condition holds iff the assembled Lagrangian is null") {
  for (const CorpusEntry& e : standard_corpus()) {
    NullPair np = build_entry(e);
    INFO(e.name);
    CHECK(equivalent(null_condition_residual(np.B(), np.C()), Expr(0), np.domain()).equal());
    CHECK(is_null(np.lagrangian()).null());
    // Breaking C breaks both.
    Expr bad_C = np.C() + sym::x() * sym::t();
    CHECK_FALSE(equivalent(null_condition_residual(np.B(), bad_C), Expr(0), np.domain()).equal());
    CHECK_FALSE(is_null(NullPair::uncertified(np.B(), bad_C, np.f(), np.domain()).lagrangian()).null());
  }
}
