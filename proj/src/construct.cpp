#include "nullag/construct.hpp"

#include "nullag/diff.hpp"
#include "nullag/errors.hpp"
#include "nullag/integrate.hpp"
#include "nullag/parse.hpp"
#include "nullag/print.hpp"

namespace nullag {

namespace {

bool has_negative_power_of_x(const Expr& e) {
  const Expr x = sym::x();
  for (const auto& term : terms_of(e)) {
    for (const auto& f : factors_of(term)) {
      auto [base, q] = as_power(f);
      if (base == x && q < 0) return true;
    }
  }
  return false;
}

Domain with_guards(Domain d, const std::vector<Guard>& guards) {
  Domain extra;
  extra.guards = guards;
  return d.merged(extra);
}

Expr dot(const Expr& e) { return partial(e, Jet::t); }

}  // namespace

SolveCResult solve_C(const Expr& B, const Domain& domain, const Expr& free_t) {
  if (jet_order(B) > 0) throw Error(ErrorCode::invalid_argument, "B must be a function of x and t");
  if (depends_on(free_t, sym::x()) || jet_order(free_t) > 0) {
    throw Error(ErrorCode::invalid_argument, "the free function must depend on t only");
  }
  SolveCResult out;
  Antiderivative ad = antiderivative(partial(B, Jet::t), Jet::x);
  out.xC = ad.value + free_t;
  out.C = out.xC / sym::x();
  out.guards = ad.guards;
  if (has_negative_power_of_x(out.C)) {
    out.guards.push_back({sym::x(), GuardKind::nonzero});
    if (domain.x.contains(0.0)) {
      out.warnings.push_back("singular at origin: C = " + to_string(out.C) + " has a g(t)/x part and x = 0 lies in the box");
    }
  }
  return out;
}

NullPair build_null(const Expr& B, const Expr& f, const Domain& domain, const CheckOptions& options) {
  SolveCResult c = solve_C(B, domain);
  return NullPair::certify(B, c.C, f, with_guards(domain, c.guards), options);
}

Expr weighted_B(const Expr& B, int n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "harmonic order must be non-negative");
  std::vector<Expr> terms;
  Expr d = B;
  for (int i = 0; i <= n; ++i) {
    terms.push_back(Expr(binomial(n, n - i)) * d);
    d = partial(d, Jet::x);
  }
  return add(std::move(terms));
}

namespace {

void check_order(int n, int cap) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "harmonic order must be non-negative");
  if (n > cap) {
    throw Error(ErrorCode::harmonic_order_cap,
                "harmonic order " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));
  }
}

HarmonicLagrangian certify_harmonic(const NullPair& base, int n, Expr Bn, Expr xCn, Expr body,
                                    const CheckOptions& options) {
  NullityReport rep = is_null(Lagrangian::make(body, base.domain()), options);
  if (!rep.null()) {
    throw Error(ErrorCode::null_certification_failed, "harmonic of order " + std::to_string(n) + " is not null",
                *rep.check.witness);
  }
  return {base, n, std::move(Bn), std::move(xCn), std::move(body), std::move(rep)};
}

}  // namespace

HarmonicLagrangian harmonic(const NullPair& base, int n, int cap, const CheckOptions& options) {
  check_order(n, cap);
  if (!base.certified()) throw Error(ErrorCode::null_certification_missing, "harmonic needs a certified base");
  Expr Bn = weighted_B(base.B(), n);
  Expr xCn = weighted_B(sym::x() * base.C(), n);
  Expr body = Bn * sym::xdot() + xCn + base.f();
  return certify_harmonic(base, n, std::move(Bn), std::move(xCn), std::move(body), options);
}

HarmonicLagrangian nonstandard_harmonic(const NullPair& base, int n, int cap, const CheckOptions& options) {
  check_order(n, cap);
  if (!base.certified()) throw Error(ErrorCode::null_certification_missing, "harmonic needs a certified base");
  Expr body = base.body();
  for (int k = 1; k <= n; ++k) body += total_dt(weighted_B(base.B(), k - 1));
  Expr Bn = weighted_B(base.B(), n);
  Expr xCn = body - Bn * sym::xdot() - base.f();
  auto direct = equivalent(body, harmonic(base, n, cap, options).body, base.domain(), options);
  if (!direct.equal()) {
    throw Error(ErrorCode::null_certification_failed, "harmonic recursion disagrees with the weighted form",
                *direct.witness);
  }
  return certify_harmonic(base, n, std::move(Bn), std::move(xCn), std::move(body), options);
}

Expr FractionSpec::denominator() const { return f2 * sym::x() + f3 * sym::t() + f4; }
Expr FractionSpec::generating_function() const { return f1 / denominator(); }
Expr FractionSpec::h2() const { return dot(f1) * f2 - f1 * dot(f2); }
Expr FractionSpec::h3() const { return dot(f1) * f3 - f1 * dot(f3) - f1 * f3; }
Expr FractionSpec::h4() const { return dot(f1) * f4 - f1 * dot(f4); }

NullPair build_nonstandard_null(const FractionSpec& spec, const Expr& f, const Domain& domain,
                                const CheckOptions& options) {
  for (const Expr* fi : {&spec.f1, &spec.f2, &spec.f3, &spec.f4}) {
    if (depends_on(*fi, sym::x()) || jet_order(*fi) > 0) {
      throw Error(ErrorCode::invalid_argument, "f1..f4 must be functions of t");
    }
  }
  Expr D = spec.denominator();
  if (D.is_zero()) throw Error(ErrorCode::denominator_vanishes, "f2 x + f3 t + f4 is identically zero");
  Domain d = domain;
  d.guard_positive(D);
  return build_null(spec.generating_function(), f, d, options);
}

Expr printed_nonstandard_lagrangian(const FractionSpec& s, const Expr& f) {
  const Expr x = sym::x();
  const Expr t = sym::t();
  Expr D = s.denominator();
  Expr misprinted = s.f3 * x + s.f3 * t + s.f4;
  if (misprinted.is_zero()) {
    throw Error(ErrorCode::denominator_vanishes, "printed form has the identically zero denominator f3*x + f3*t + f4");
  }
  return s.f1 * sym::xdot() / D + s.h2() / (s.f2 * s.f2) * (ln(D) + (s.f3 * t + s.f4) / misprinted) -
         (s.h3() * t + s.h4()) / (s.f2 * D) + f;
}

Expr denominator_fixed_nonstandard_lagrangian(const FractionSpec& s, const Expr& f) {
  const Expr t = sym::t();
  Expr D = s.denominator();
  return s.f1 * sym::xdot() / D + s.h2() / (s.f2 * s.f2) * (ln(D) + (s.f3 * t + s.f4) / D) -
         (s.h3() * t + s.h4()) / (s.f2 * D) + f;
}

Expr nonstandard_xC_closed_form(const FractionSpec& s) {
  const Expr t = sym::t();
  Expr D = s.denominator();
  Expr K = (dot(s.f1) * s.f3 - s.f1 * dot(s.f3)) * t - s.f1 * s.f3 + s.h4();
  return s.h2() / (s.f2 * s.f2) * (ln(D) + (s.f3 * t + s.f4) / D) - K / (s.f2 * D);
}

const std::vector<CorpusEntry>& standard_corpus() {
  static const std::vector<CorpusEntry> corpus = [] {
    auto gen = [](std::string name, const char* B, const char* f) {
      CorpusEntry e;
      e.name = std::move(name);
      e.B = parse(B);
      e.f = parse(f);
      return e;
    };
    auto frac = [](std::string name, const char* f1, const char* f2, const char* f3, const char* f4, const char* f) {
      CorpusEntry e;
      e.name = std::move(name);
      e.kind = CorpusEntry::Kind::fraction;
      e.fraction = {parse(f1), parse(f2), parse(f3), parse(f4)};
      e.f = parse(f);
      return e;
    };
    return std::vector<CorpusEntry>{
        gen("linear", "f1(t)*x + f2(t)*t + f3(t)", "f4(t)"),
        gen("quadratic", "f1(t)*x^2 + f2(t)*t + f3(t)", "f4(t)"),
        gen("sin_exp", "f1(t)*sin(x) + f2(t)*exp(x)*t + f3(t)", "f4(t)"),
        gen("constant", "c1", "c3"),
        gen("quadratic_damping", "B0*exp(alpha0*x)", "0"),
        gen("tied_oscillator", "B0*exp(beta0*t/2)", "0"),
        gen("gauge_x2", "2*f1(t)*x", "f2(t)'"),
        frac("fraction_generic", "f1(t)", "f2(t)", "f3(t)", "f4(t)", "f5(t)"),
        frac("fraction_constant", "a1", "a2", "0", "a4", "0"),
        frac("fraction_equal", "f1(t)", "f1(t)", "0", "0", "0"),
    };
  }();
  return corpus;
}

NullPair build_entry(const CorpusEntry& entry, const CheckOptions& options) {
  if (entry.kind == CorpusEntry::Kind::fraction) {
    return build_nonstandard_null(entry.fraction, entry.f, entry.domain, options);
  }
  return build_null(entry.B, entry.f, entry.domain, options);
}

}  // namespace nullag
