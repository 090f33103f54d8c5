#include "nullag/systems.hpp"

#include "nullag/construct.hpp"
#include "nullag/diff.hpp"
#include "nullag/errors.hpp"
#include "nullag/evaluate.hpp"
#include "nullag/integrate.hpp"
#include "nullag/parse.hpp"
#include "nullag/print.hpp"

#include <cmath>

namespace nullag {

std::string_view classification_name(Classification c) {
  switch (c) {
    case Classification::inertia: return "Inertia";
    case Classification::damped_oscillator_tied: return "DampedOscillatorTied";
    case Classification::quadratic_damping: return "QuadraticDamping";
    case Classification::no_null_lagrangian: return "NoNullLagrangian";
    case Classification::time_dependent: return "TimeDependent";
    case Classification::displacement_dependent: return "DisplacementDependent";
  }
  return "NoNullLagrangian";
}

namespace {

Expr X() { return sym::x(); }
Expr T() { return sym::t(); }
Expr Xd() { return sym::xdot(); }
Expr Xdd() { return sym::xddot(); }

Expr scale() { return Expr::param(kScaleName); }

bool zero(const Expr& e) { return e.is_zero() || proven_zero(e); }

Expr ode_of(const Expr& alpha, const Expr& beta, const Expr& gamma) {
  return Xdd() + alpha * Xd() * Xd() + beta * Xd() + gamma * X();
}

Antiderivative integral(const Expr& e, Jet var, const char* what) {
  try {
    return antiderivative(e, var);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::antiderivative_unsupported) throw;
    throw Error(ErrorCode::integral_unsupported, std::string(what) + ": " + err.what());
  }
}

// Certifies (B, C, 0), derives the Corollary 1 equation and checks that it
// is B times the target equation.
void attach_null(SystemCase& sc, const CheckOptions& options) {
  sc.null_pair = NullPair::certify(sc.B, sc.C, Expr(0), sc.domain, options);
  sc.eom = corollary1_eom(*sc.null_pair, options);
  auto match = equivalent(sc.eom->residual / sc.B, sc.ode, sc.domain, options);
  if (!match.equal()) {
    throw Error(ErrorCode::null_certification_failed, "Corollary 1 equation does not reproduce " + to_string(sc.ode),
                *match.witness);
  }
}

}  // namespace

SystemCase classify_constant(const Expr& alpha, const Expr& beta, const Expr& gamma, const Domain& domain,
                             const CheckOptions& options) {
  for (const Expr* c : {&alpha, &beta, &gamma}) {
    if (!symbols_of(*c).jets.empty() || !symbols_of(*c).functions.empty()) {
      throw Error(ErrorCode::invalid_argument, "constant coefficients must not depend on x or t");
    }
  }
  SystemCase sc;
  sc.domain = domain;
  sc.ode = ode_of(alpha, beta, gamma);
  bool a0 = zero(alpha);
  bool b0 = zero(beta);
  bool g0 = zero(gamma);

  Expr E = exp(alpha * X() + beta * T() / Expr(2));
  sc.B = scale() * E;
  // C from C_t = gamma B.
  sc.C = b0 ? gamma * T() * sc.B : Expr(2) * scale() * (gamma / beta) * E;
  sc.constraints.push_back((Expr(1) + alpha * X()) * gamma - beta * beta / Expr(4));

  if (a0 && b0 && g0) {
    sc.classification = Classification::inertia;
  } else if (a0 && !b0 && zero(gamma - beta * beta / Expr(4))) {
    sc.classification = Classification::damped_oscillator_tied;
  } else if (!a0 && b0 && g0) {
    sc.classification = Classification::quadratic_damping;
  } else {
    sc.classification = Classification::no_null_lagrangian;
    auto check = equivalent(null_condition_residual(sc.B, sc.C), Expr(0), domain, options);
    sc.absent_reason = "null condition (1 + alpha x) gamma = beta^2/4 cannot hold identically";
    sc.witness = check.witness;
    return sc;
  }
  attach_null(sc, options);
  return sc;
}

Expr derive_gamma1(const Expr& beta1) {
  return partial(beta1, Jet::t) / Expr(2) + beta1 * beta1 / Expr(4);
}

double gamma1_constraint_residual(const Expr& beta1, const Expr& gamma1, const Domain& domain, int samples,
                                  int panels) {
  Expr I = integral(beta1, Jet::t, "I_beta").value / Expr(2);
  Expr lhs = beta1 * exp(I) / Expr(2);
  Expr integrand = gamma1 * exp(I);
  Bindings values;
  auto params = symbols_of(lhs + integrand).params;
  for (const auto& name : params) {
    auto it = domain.fixed.find(name);
    values.set_param(name, it != domain.fixed.end() ? it->second : rational_from_double(0.5 * (domain.params.lo + domain.params.hi)));
  }
  Evaluator u(lhs, values);
  Evaluator w(integrand, values);
  auto at = [](const Evaluator& ev, double t) {
    JetPoint p;
    p.t = t;
    return ev(p);
  };
  const double ta = domain.t.lo;
  double worst = 0.0;
  for (int k = 1; k <= samples; ++k) {
    double tb = ta + domain.t.width() * k / samples;
    double h = (tb - ta) / panels;
    double sum = 0.0;
    for (int i = 0; i <= panels; ++i) {
      double weight = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      sum += weight * at(w, ta + i * h);
    }
    double quad = sum * h / 3.0;
    worst = std::max(worst, std::abs(at(u, tb) - at(u, ta) - quad));
  }
  return worst;
}

SystemCase build_timedep(const Expr& alpha1, const Expr& beta1, const Expr& gamma1, const Domain& domain,
                         const CheckOptions& options) {
  for (const Expr* c : {&alpha1, &beta1, &gamma1}) {
    if (depends_on(*c, X()) || jet_order(*c) > 0) {
      throw Error(ErrorCode::invalid_argument, "time-dependent coefficients must be functions of t");
    }
  }
  if (!zero(alpha1)) {
    if (!zero(beta1) || !zero(gamma1)) {
      throw Error(ErrorCode::constraint_violated, "with alpha1 != 0 the null condition forces beta1 = gamma1 = 0");
    }
    if (depends_on(alpha1, T())) {
      throw Error(ErrorCode::constraint_violated,
                  "with beta1 = gamma1 = 0 the null condition forces alpha1' = 0 (constant quadratic damping)");
    }
    return classify_constant(alpha1, Expr(0), Expr(0), domain, options);
  }
  auto consistent = equivalent(gamma1, derive_gamma1(beta1), domain, options);
  if (!consistent.equal()) {
    throw Error(ErrorCode::constraint_violated, "gamma1 must equal beta1'/2 + beta1^2/4", *consistent.witness);
  }
  Antiderivative ib = integral(beta1, Jet::t, "I_beta");
  Expr I = ib.value / Expr(2);

  SystemCase sc;
  sc.domain = domain;
  for (const auto& g : ib.guards) {
    if (g.kind == GuardKind::positive) sc.domain.guard_positive(g.expr);
    else sc.domain.guard_nonzero(g.expr);
  }
  sc.ode = ode_of(Expr(0), beta1, gamma1);
  sc.integrals["I_beta"] = I;
  sc.B = scale() * exp(I);
  sc.C = beta1 * sc.B / Expr(2);
  sc.constraints.push_back(gamma1 - derive_gamma1(beta1));
  if (depends_on(beta1, T())) {
    sc.classification = Classification::time_dependent;
  } else {
    sc.classification = zero(beta1) ? Classification::inertia : Classification::damped_oscillator_tied;
  }
  attach_null(sc, options);
  return sc;
}

Expr solve_gamma2(const Expr& alpha2, const Expr& beta, const Expr& c) {
  if (depends_on(alpha2, T()) || jet_order(alpha2) > 0) {
    throw Error(ErrorCode::invalid_argument, "alpha2 must be a function of x");
  }
  Expr I = integral(alpha2, Jet::x, "I_alpha").value;
  Expr inner = integral(exp(I), Jet::x, "integral of exp(I_alpha)").value;
  return exp(-I) * (beta * beta / Expr(4) * inner + c) / X();
}

Expr gamma2_constraint(const Expr& alpha2, const Expr& beta, const Expr& gamma2) {
  return X() * partial(gamma2, Jet::x) + gamma2 * (Expr(1) + alpha2 * X()) - beta * beta / Expr(4);
}

SystemCase build_displacement(const Expr& alpha2, const Expr& beta, const Expr& gamma2, const Domain& domain,
                              const CheckOptions& options) {
  if (depends_on(alpha2, T()) || depends_on(gamma2, T()) || jet_order(alpha2) > 0 || jet_order(gamma2) > 0) {
    throw Error(ErrorCode::invalid_argument, "displacement-dependent coefficients must be functions of x");
  }
  if (!symbols_of(beta).jets.empty() || !symbols_of(beta).functions.empty()) {
    throw Error(ErrorCode::constraint_violated, "the null condition forces a constant damping coefficient");
  }
  SystemCase sc;
  sc.domain = domain;
  sc.domain.guard_nonzero(X());
  Expr constraint = gamma2_constraint(alpha2, beta, gamma2);
  auto holds = equivalent(constraint, Expr(0), sc.domain, options);
  if (!holds.equal()) {
    throw Error(ErrorCode::constraint_violated, "x gamma2' + gamma2 (1 + alpha2 x) must equal beta^2/4",
                *holds.witness);
  }
  Antiderivative ia = integral(alpha2, Jet::x, "I_alpha");
  for (const auto& g : ia.guards) {
    if (g.kind == GuardKind::positive) sc.domain.guard_positive(g.expr);
    else sc.domain.guard_nonzero(g.expr);
  }
  Expr I = ia.value;
  sc.integrals["I_alpha"] = I;
  sc.ode = ode_of(alpha2, beta, gamma2);
  sc.constraints.push_back(constraint);
  if (zero(beta)) {
    sc.B = scale() * exp(I);
    sc.C = scale() * T() * gamma2 * exp(I);
  } else {
    Expr E = exp(I + beta * T() / Expr(2));
    sc.B = scale() * E;
    sc.C = Expr(2) * scale() * gamma2 / beta * E;
  }
  if (zero(alpha2) && !depends_on(gamma2, X())) {
    sc.classification = zero(beta) ? Classification::inertia : Classification::damped_oscillator_tied;
  } else {
    sc.classification = Classification::displacement_dependent;
  }
  attach_null(sc, options);
  return sc;
}

std::string_view triple_name(TripleSystem s) {
  switch (s) {
    case TripleSystem::inertia: return "inertia";
    case TripleSystem::quadratic_damping: return "quadratic";
    case TripleSystem::damped_oscillator_tied: return "oscillator";
  }
  return "inertia";
}

const std::map<std::string, Rational>& default_constants() {
  static const std::map<std::string, Rational> values{
      {"c1", 1}, {"c2", 1}, {"c3", 1}, {"B0", 1}, {"alpha0", 1}, {"beta0", 2},
      {"ao", 1}, {"vo", 1}, {"C1", 1}, {"C2", 1},
  };
  return values;
}

ComparisonTriple comparison_catalog(TripleSystem system, const CheckOptions& options) {
  auto lag = [](const char* text) {
    Expr body = parse(text);
    Domain d;
    for (const auto& term : terms_of(body)) {
      for (const auto& f : factors_of(term)) {
        auto [base, q] = as_power(f);
        if (q < 0 && !base.is_constant()) d.guard_nonzero(base);
      }
    }
    return Lagrangian::make(body, d);
  };
  switch (system) {
    case TripleSystem::inertia:
      return {system, lag("x'^2/2"), lag("1/(C1*(ao*t + vo)^2*((ao*t + vo)*x' - ao*x + C2))"),
              build_null(parse("c1"), Expr(0), {}, options), parse("x''")};
    case TripleSystem::quadratic_damping:
      return {system, lag("x'^2*exp(2*alpha0*x)/2"), lag("1/(x'*exp(alpha0*x) + 1)"),
              build_null(parse("c2*exp(alpha0*x)"), Expr(0), {}, options), parse("x'' + alpha0*x'^2")};
    case TripleSystem::damped_oscillator_tied:
      return {system, lag("(x'^2 - beta0^2*x^2/4)*exp(beta0*t)/2"), lag("exp(-beta0*t/2)/(x' + beta0*x/2)"),
              build_null(parse("c3*exp(beta0*t/2)"), Expr(0), {}, options),
              parse("x'' + beta0*x' + beta0^2*x/4")};
  }
  throw Error(ErrorCode::invalid_argument, "unknown system");
}

std::vector<AuditEntry> audit(const CheckOptions& options) {
  std::vector<AuditEntry> out;

  {
    // Oscillator null Lagrangian printed with x/2 instead of beta x/2.
    AuditEntry e;
    e.id = "oscillator_null_factor";
    e.description =
        "printed (x' + x/2) B0 exp(beta0 t/2) vs derived (x' + beta0 x/2) B0 exp(beta0 t/2); compared through "
        "their Corollary 1 equations d/dt L = 0";
    e.printed = parse("(x' + x/2)*B0*exp(beta0*t/2)");
    e.derived = build_null(parse("B0*exp(beta0*t/2)"), Expr(0), {}, options).body();
    e.comparison = equivalent(total_dt(e.printed), total_dt(e.derived), {}, options);
    e.printed_nullity = is_null(Lagrangian::make(e.printed), options);
    e.corrected = is_null(Lagrangian::make(e.derived), options);
    out.push_back(std::move(e));
  }
  {
    // Exponent sign of gamma2 in the beta = 0 displacement case.
    AuditEntry e;
    e.id = "displacement_gamma2_sign";
    e.description =
        "beta0 = 0, alpha2 = alpha0: printed gamma2 = (c3/x) exp(I_alpha) vs derived (c3/x) exp(-I_alpha); the "
        "printed and corrected null Lagrangians B0 (x' + x t gamma2) exp(I_alpha) are checked for nullity";
    Expr alpha2 = parse("alpha0");
    Expr I = parse("alpha0*x");
    e.printed = parse("c3/x") * exp(I);
    e.derived = solve_gamma2(alpha2, Expr(0), parse("c3"));
    e.comparison = equivalent(e.printed, e.derived, {}, options);
    Expr printed_L = parse("B0") * (Xd() + X() * T() * e.printed) * exp(I);
    e.printed_nullity = is_null(Lagrangian::make(printed_L), options);
    SystemCase sc = build_displacement(alpha2, Expr(0), e.derived, {}, options);
    e.corrected = *sc.null_pair->certificate();
    out.push_back(std::move(e));
  }
  FractionSpec spec{parse("f1(t)"), parse("f2(t)"), parse("f3(t)"), parse("f4(t)")};
  NullPair machine = build_nonstandard_null(spec, Expr(0), {}, options);
  {
    AuditEntry e;
    e.id = "nonstandard_denominator";
    e.description =
        "non-standard null Lagrangian as printed (bracket denominator f3 x + f3 t + f4) vs the Lagrangian derived "
        "from B = f1/(f2 x + f3 t + f4)";
    e.printed = printed_nonstandard_lagrangian(spec, Expr(0));
    e.derived = machine.body();
    e.comparison = equivalent(e.printed, e.derived, machine.domain(), options);
    e.printed_nullity = is_null(Lagrangian::make(e.printed, machine.domain()), options);
    e.corrected = *machine.certificate();
    out.push_back(std::move(e));
  }
  {
    AuditEntry e;
    e.id = "nonstandard_h3";
    e.description =
        "printed form with the denominator restored to f2 x + f3 t + f4 still differs: the last numerator must be "
        "(f1' f3 - f1 f3') t - f1 f3 + h4, not h3 t + h4";
    e.printed = denominator_fixed_nonstandard_lagrangian(spec, Expr(0));
    e.derived = machine.body();
    e.comparison = equivalent(e.printed, e.derived, machine.domain(), options);
    e.printed_nullity = is_null(Lagrangian::make(e.printed, machine.domain()), options);
    e.corrected = *machine.certificate();
    out.push_back(std::move(e));
  }
  {
    AuditEntry e;
    e.id = "oscillator_reciprocity";
    e.description =
        "printed L_nsd = exp(-beta0 x/2)/(x' + beta0 x/2) vs 1/L_null with c3 = 1; literal product L_nsd L_null = "
        "exp(beta0 (t - x)/2)";
    e.printed = parse("exp(-beta0*x/2)/(x' + beta0*x/2)");
    Expr null_body = parse("(x' + beta0*x/2)*exp(beta0*t/2)");
    e.derived = pow(null_body, Rational(-1));
    Domain d;
    d.guard_nonzero(parse("x' + beta0*x/2"));
    e.comparison = equivalent(e.printed, e.derived, d, options);
    e.printed_nullity = is_null(Lagrangian::make(e.printed, d), options);
    e.corrected = is_null(Lagrangian::make(null_body, d), options);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace nullag
