#include "nullag/composer.hpp"

#include "nullag/diff.hpp"
#include "nullag/errors.hpp"
#include "nullag/evaluate.hpp"
#include "nullag/print.hpp"

#include <cmath>

namespace nullag {

Expr Composer::slot() { return Expr::param("lambda"); }

Composer::Composer(Expr F, std::string name, std::vector<GuardKind> range)
    : F_(std::move(F)), name_(std::move(name)), range_(std::move(range)) {
  dF_ = partial(F_, slot());
  ddF_ = partial(dF_, slot());
}

Composer Composer::identity() { return Composer(slot(), "identity", {}); }
Composer Composer::exp() { return Composer(nullag::exp(slot()), "exp", {}); }
Composer Composer::ln() { return Composer(nullag::ln(slot()), "ln", {GuardKind::positive}); }
Composer Composer::reciprocal() { return Composer(pow(slot(), Rational(-1)), "reciprocal", {GuardKind::nonzero}); }

Composer Composer::power(const Rational& k) {
  std::vector<GuardKind> range;
  if (!is_integer(k)) {
    range.push_back(GuardKind::positive);
  } else if (k < 0) {
    range.push_back(GuardKind::nonzero);
  }
  return Composer(pow(slot(), k), "power(" + to_string(k) + ")", std::move(range));
}

Composer Composer::custom(const Expr& F, std::string name) {
  auto s = symbols_of(F);
  if (!s.jets.empty() || !s.functions.empty()) {
    throw Error(ErrorCode::invalid_argument, "a custom outer function depends on lambda only");
  }
  return Composer(F, std::move(name), {});
}

namespace {

Expr at(const Expr& F, const Expr& L) {
  std::map<Expr, Expr, ExprLess> m{{Composer::slot(), L}};
  return substitute(F, m);
}

}  // namespace

Expr Composer::apply(const Expr& L) const { return at(F_, L); }
Expr Composer::first(const Expr& L) const { return at(dF_, L); }
Expr Composer::second(const Expr& L) const { return at(ddF_, L); }

std::vector<Guard> Composer::range_guards(const Expr& L) const {
  std::vector<Guard> out;
  for (GuardKind k : range_) out.push_back({L, k});
  return out;
}

Domain restrict_range(const Composer& F, const Lagrangian& L) {
  Domain extra;
  extra.guards = F.range_guards(L.body);
  return L.domain.merged(extra);
}

Lagrangian compose(const Composer& F, const Lagrangian& L, const CheckOptions& options) {
  for (const auto& g : F.range_guards(L.body)) {
    bool positive = g.kind == GuardKind::positive;
    auto w = find_violation(L.body, L.domain, options, [&](double v) {
      return positive ? v < kGuardEpsilon : std::abs(v) < kGuardEpsilon;
    });
    if (w) {
      throw Error(ErrorCode::range_guard_violated,
                  F.name() + " needs L " + (positive ? "> 0" : "!= 0") + " but L = " + std::to_string(w->lhs) +
                      " at a sample point",
                  *w);
    }
  }
  return Lagrangian::make(F.apply(L.body), restrict_range(F, L));
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::corollary1: return "corollary1";
    case Provenance::prop3: return "prop3";
    case Provenance::euler_lagrange: return "euler-lagrange";
  }
  return "euler-lagrange";
}

EquationOfMotion EquationOfMotion::make(const Expr& residual, Provenance p, Domain domain) {
  if (contains_jet(residual, Jet::xdddot)) {
    throw Error(ErrorCode::invalid_argument, "equation of motion must be free of x'''");
  }
  Expr leading = partial(residual, Jet::xddot);
  if (contains_jet(leading, Jet::xddot)) {
    throw Error(ErrorCode::invalid_argument, "equation of motion is not linear in x''");
  }
  return {residual, leading, p, std::move(domain)};
}

EquationOfMotion euler_lagrange_eom(const Lagrangian& L) {
  return EquationOfMotion::make(euler_lagrange_residual(L), Provenance::euler_lagrange, L.domain);
}

EquationOfMotion prop3_eom(const Composer& F, const Lagrangian& L) {
  Expr p = momentum(L);
  Expr residual = p * F.second(L.body) * total_dt(L.body) +
                  (total_dt(p) - partial(L.body, Jet::x)) * F.first(L.body);
  return EquationOfMotion::make(residual, Provenance::prop3, restrict_range(F, L));
}

EquationOfMotion corollary1_eom(const NullPair& np, const CheckOptions& options) {
  if (!np.certified()) throw Error(ErrorCode::null_certification_missing, "corollary 1 needs a certified null pair");
  const Expr& B = np.B();
  Expr xd = sym::xdot();
  Expr residual = B * sym::xddot() + (partial(B, Jet::x) * xd + Expr(2) * partial(B, Jet::t)) * xd +
                  partial(np.C(), Jet::t) * sym::x() + partial(np.f(), Jet::t);
  auto check = equivalent(residual, total_dt(np.body()), np.domain(), options);
  if (!check.equal()) {
    throw Error(ErrorCode::null_certification_failed, "expanded equation disagrees with dL/dt", *check.witness);
  }
  return EquationOfMotion::make(residual, Provenance::corollary1, np.domain());
}

EquationOfMotion harmonic_eom(const HarmonicLagrangian& h, const CheckOptions& options) {
  EquationOfMotion eom = corollary1_eom(h.base, options);
  Expr residual = eom.residual;
  for (int k = 1; k <= h.order; ++k) residual += total_dt(total_dt(weighted_B(h.base.B(), k - 1)));
  auto check = equivalent(residual, total_dt(h.body), h.base.domain(), options);
  if (!check.equal()) {
    throw Error(ErrorCode::null_certification_failed, "harmonic equation disagrees with dL/dt", *check.witness);
  }
  return EquationOfMotion::make(residual, Provenance::corollary1, h.base.domain());
}

ExplicitForm solve_leading(const EquationOfMotion& eom, const CheckOptions& options) {
  if (eom.leading.is_zero()) throw Error(ErrorCode::leading_coefficient_vanishes, "equation has no x'' term");
  auto w = find_violation(eom.leading, eom.domain, options, [](double v) { return std::abs(v) < kGuardEpsilon; });
  if (w) throw Error(ErrorCode::leading_coefficient_vanishes, "leading coefficient vanishes on the domain", *w);
  // On an unguarded box a sign change between samples means a zero or a
  // pole in between. Guarded domains may be disconnected and are left to the
  // pointwise guards.
  int sign = 0;
  if (eom.domain.guards.empty()) w = find_violation(eom.leading, eom.domain, options, [&sign](double v) {
    int s = v > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    return s != sign;
  });
  if (w) throw Error(ErrorCode::leading_coefficient_vanishes, "leading coefficient changes sign on the domain", *w);
  Expr rest = eom.residual - eom.leading * sym::xddot();
  Domain d = eom.domain;
  d.guard_nonzero(eom.leading);
  if (proven_zero(rest)) return {Expr(0), std::move(d)};
  return {-(rest / eom.leading), std::move(d)};
}

std::string format_eom(const EquationOfMotion& eom) {
  std::string out = to_string(eom.residual) + " = 0";
  try {
    Expr rest = eom.residual - eom.leading * sym::xddot();
    out += "\nx'' = " + to_string(-(rest / eom.leading));
  } catch (const Error&) {
  }
  return out;
}

FormIndependenceReport check_form_independence(const Composer& F, const NullPair& np, const CheckOptions& options) {
  FormIndependenceReport rep;
  Lagrangian L = np.lagrangian();
  Expr p = momentum(L);
  Expr factor = p * F.second(L.body);
  Expr dL = total_dt(L.body);
  EquationOfMotion eom = prop3_eom(F, L);
  Domain d = eom.domain;

  rep.second_term = equivalent((total_dt(p) - partial(L.body, Jet::x)) * F.first(L.body), Expr(0), d, options);
  rep.collapse = equivalent(eom.residual, factor * dL, d, options);

  // Permissibility: the factor must not vanish where the check samples.
  rep.degenerate_at = find_violation(factor, d, options, [](double v) { return std::abs(v) < kGuardEpsilon; });
  rep.permissible = !rep.degenerate_at;

  Domain nz = d;
  nz.guard_nonzero(factor);
  EquationOfMotion c1 = corollary1_eom(np, options);
  // A proven collapse makes the exact quotient dL/dt; otherwise divide.
  Expr quotient = rep.collapse.verdict == Verdict::proven_equal ? dL : eom.residual / factor;
  rep.zero_set = equivalent(quotient, c1.residual, nz, options);
  return rep;
}

}  // namespace nullag
