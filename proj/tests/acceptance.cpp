// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "nullag/composer.hpp"
#include "nullag/construct.hpp"
#include "nullag/diff.hpp"
#include "nullag/equivalence.hpp"
#include "nullag/errors.hpp"
#include "nullag/numint.hpp"
#include "nullag/parse.hpp"
#include "nullag/print.hpp"
#include "nullag/systems.hpp"
#include "nullag/variational.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace nullag;

namespace {

Expr P(const char* s) { return parse(s); }

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!passed) detail << "; ";
      else detail.str("");
      passed = false;
      detail << what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs >= limit_s) {
    std::ostringstream m;
    m << "runtime " << secs << " s over the " << limit_s << " s limit";
    o.require(false, m.str());
  }
  if (!o.passed) ++failures;
  std::printf("[%s] %d %s: %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", id, title, o.detail.str().c_str(), secs);
  std::fflush(stdout);
}

Bindings catalog_bindings() {
  Bindings b;
  for (const auto& [k, v] : default_constants()) b.set_param(k, v);
  return b;
}

bool null_ok(const NullityReport& r) { return r.verdict == Nullity::proven_null || r.verdict == Nullity::numerically_null; }

const CorpusEntry& entry(const char* name) {
  for (const auto& e : standard_corpus()) {
    if (e.name == name) return e;
  }
  throw Error(ErrorCode::invalid_argument, std::string("no corpus entry ") + name);
}

// Random generating functions: sums of rational * (function of t) * (function of x).
Expr random_B(std::mt19937_64& rng) {
  static const char* ts[] = {"f1(t)", "f2(t)", "t", "t^2", "1", "exp(t/2)", "sin(t)"};
  static const char* xs[] = {"x", "x^2", "x^3", "exp(2*x)", "sin(x)", "cos(3*x)", "exp(-x)", "1", "x*exp(x)",
                             "x^2*sin(x)"};
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> count(1, 3);
  Expr B(0);
  int n = count(rng);
  for (int k = 0; k < n; ++k) {
    int c = num(rng);
    if (c == 0) c = 1;
    B += Expr(make_rational(c, den(rng))) * P(ts[rng() % 7]) * P(xs[rng() % 10]);
  }
  return B;
}

Expr random_delta(std::mt19937_64& rng) {
  static const char* ds[] = {"t", "x", "x*t", "sin(x)", "exp(t/2)*x", "x^2", "cos(t)", "f1(t)*x", "exp(x)"};
  std::uniform_int_distribution<int> num(1, 5);
  return Expr(Rational(num(rng))) * P(ds[rng() % 9]);
}

}  // namespace

int main() {
  criterion(1, "nullity suite", 10.0, [](Outcome& o) {
    int checked = 0;
    auto check = [&](const std::string& name, const Lagrangian& L) {
      NullityReport r = is_null(L);
      ++checked;
      o.require(null_ok(r), name + " " + std::string(nullity_name(r.verdict)));
    };
    // Generating-function families with harmonics 1..4, then the fraction family.
    check("general", build_null(P("f1(t)*x^3 + f2(t)*exp(x)"), P("f3(t)")).lagrangian());
    for (const char* n : {"linear", "quadratic", "sin_exp"}) {
      NullPair base = build_entry(entry(n));
      check(n, base.lagrangian());
      for (int k = 1; k <= 4; ++k) {
        check(std::string(n) + " n=" + std::to_string(k), Lagrangian::make(harmonic(base, k).body, base.domain()));
      }
    }
    for (const char* n : {"fraction_generic", "fraction_constant", "fraction_equal"}) {
      NullPair base = build_entry(entry(n));
      check(n, base.lagrangian());
      check(std::string(n) + " n=1", Lagrangian::make(nonstandard_harmonic(base, 1).body, base.domain()));
    }
    if (o.passed) o.detail << checked << " objects null";
  });

  criterion(2, "null condition iff nullity", 0, [](Outcome& o) {
    std::mt19937_64 rng(kDefaultSeed);
    int built = 0;
    for (int i = 0; i < 100; ++i) {
      Expr B = random_B(rng);
      SolveCResult s = solve_C(B);
      Domain d;
      for (const Guard& g : s.guards) {
        if (g.kind == GuardKind::positive) d.guard_positive(g.expr);
        else d.guard_nonzero(g.expr);
      }
      bool cond = equivalent(null_condition_residual(B, s.C), Expr(0), d).equal();
      NullityReport r = is_null(NullPair::uncertified(B, s.C, Expr(0), d).lagrangian());
      o.require(cond && null_ok(r), "B = " + to_string(B));
      ++built;
    }
    int distinct = 0;
    for (int i = 0; i < 20; ++i) {
      Expr B = random_B(rng);
      SolveCResult s = solve_C(B);
      Domain d;
      for (const Guard& g : s.guards) {
        if (g.kind == GuardKind::positive) d.guard_positive(g.expr);
        else d.guard_nonzero(g.expr);
      }
      Expr C = s.C + random_delta(rng);
      auto cond = equivalent(null_condition_residual(B, C), Expr(0), d);
      NullityReport r = is_null(NullPair::uncertified(B, C, Expr(0), d).lagrangian());
      bool ok = cond.verdict == Verdict::distinct && cond.witness && r.verdict == Nullity::not_null &&
                r.check.witness;
      o.require(ok, "perturbed B = " + to_string(B) + ", C = " + to_string(C));
      distinct += ok;
    }
    if (o.passed) o.detail << built << " random B null, " << distinct << "/20 perturbed pairs Distinct with witness";
  });

  criterion(3, "Corollary 1 expansion", 0, [](Outcome& o) {
    int proven = 0;
    for (const CorpusEntry& e : standard_corpus()) {
      NullPair np = build_entry(e);
      auto r = equivalent(corollary1_eom(np).residual, total_dt(np.body()), np.domain());
      o.require(r.verdict == Verdict::proven_equal, e.name + " " + std::string(verdict_name(r.verdict)));
      proven += r.verdict == Verdict::proven_equal;
    }
    int factored = 0, conditional = 0, total = 0;
    for (const CorpusEntry& e : standard_corpus()) {
      NullPair np = build_entry(e);
      for (const Composer& F : {Composer::exp(), Composer::ln(), Composer::reciprocal(), Composer::power(Rational(3))}) {
        ++total;
        FormIndependenceReport r = check_form_independence(F, np);
        bool ok = r.collapse.equal() && r.second_term.equal() && r.zero_set.equal() && r.collapse.points > 0;
        if (r.collapse.verdict == Verdict::proven_equal) ok = r.second_term.equal() && r.zero_set.equal();
        o.require(ok, e.name + " F=" + F.name());
        factored += ok;
        conditional += !r.permissible;
      }
    }
    if (o.passed) {
      o.detail << proven << " corpus entries ProvenEqual; " << factored << "/" << total
               << " compositions factor as p F''(L) dL/dt";
      if (conditional) o.detail << " (" << conditional << " conditional: p F''(L) comes near 0 on the box)";
    }
  });

  criterion(4, "dissipative catalog", 0, [](Outcome& o) {
    o.require(classify_constant(Expr(0), Expr(0), Expr(0)).classification == Classification::inertia, "inertia");
    o.require(classify_constant(Expr(0), P("beta0"), P("beta0^2/4")).classification ==
                  Classification::damped_oscillator_tied,
              "tied oscillator");
    o.require(classify_constant(P("alpha0"), Expr(0), Expr(0)).classification == Classification::quadratic_damping,
              "quadratic damping");
    SystemCase ho = classify_constant(Expr(0), Expr(0), P("gamma0"));
    o.require(ho.classification == Classification::no_null_lagrangian && ho.witness, "harmonic oscillator");

    double worst1 = 0.0;
    for (const char* b : {"beta0", "2/t", "t"}) {
      worst1 = std::max(worst1, gamma1_constraint_residual(P(b), derive_gamma1(P(b))));
    }
    o.require(worst1 <= 1e-7, "gamma1 round trip");

    Domain pos;
    pos.guard_positive(P("1 + alpha0"));
    for (const char* a : {"alpha0/x", "0", "alpha0"}) {
      for (const char* b : {"beta0", "0"}) {
        Expr g = solve_gamma2(P(a), P(b), P("c1"));
        o.require(equivalent(gamma2_constraint(P(a), P(b), g), Expr(0), pos).equal(),
                  std::string("gamma2 round trip alpha2 = ") + a + ", beta = " + b);
      }
    }
    auto first = equivalent(solve_gamma2(P("alpha0/x"), P("beta0"), P("c1")),
                            P("beta0^2/(4*(1 + alpha0)) + c1*exp(-(1 + alpha0)*ln(x))"), pos);
    auto second = equivalent(solve_gamma2(Expr(0), P("beta0"), P("c2")), P("c2/x + beta0^2/4"), {});
    o.require(first.verdict == Verdict::proven_equal, "alpha2 = alpha0/x special case");
    o.require(second.verdict == Verdict::proven_equal, "alpha2 = 0 special case");
    if (o.passed) {
      o.detail << "Inertia, DampedOscillatorTied, QuadraticDamping, NoNullLagrangian reproduced; gamma1 residual "
               << worst1 << "; both printed gamma2 cases ProvenEqual";
    }
  });

  auto conservation = [](TripleSystem s, double x0, double v0, double x1_exact, double L_exact, Outcome& o) {
    Bindings b = catalog_bindings();
    ComparisonTriple c = comparison_catalog(s);
    ExplicitForm ef = solve_leading(corollary1_eom(c.L_null));
    Trajectory one = integrate(IVP{ef.g, b, 0.0, x0, v0, 1.0, 1e-3, ef.domain});
    Trajectory five = integrate(IVP{ef.g, b, 0.0, x0, v0, 5.0, 1e-3, ef.domain});
    DriftReport dr = drift(c.L_null, five, b);
    double ex = std::abs(one.x.back() - x1_exact);
    double eL = std::abs(dr.initial - L_exact);
    o.require(ex <= 1e-8, "x(1) error " + std::to_string(ex));
    o.require(eL <= 1e-12, "L_null(0) = " + std::to_string(dr.initial));
    o.require(dr.max_abs <= 1e-8, "drift " + std::to_string(dr.max_abs));
    if (o.passed) o.detail << "|x(1) error| " << ex << ", L_null(0) = " << dr.initial << ", max drift " << dr.max_abs;
  };
  criterion(5, "conservation, tied oscillator", 5.0, [&](Outcome& o) {
    conservation(TripleSystem::damped_oscillator_tied, 1.0, 0.0, 2.0 / std::exp(1.0), 1.0, o);
  });
  criterion(5, "conservation, quadratic damping", 5.0, [&](Outcome& o) {
    conservation(TripleSystem::quadratic_damping, 0.0, 2.0, std::log(3.0), 2.0, o);
  });

  criterion(6, "route equivalence", 0, [](Outcome& o) {
    Bindings b = catalog_bindings();
    for (TripleSystem s : {TripleSystem::inertia, TripleSystem::quadratic_damping, TripleSystem::damped_oscillator_tied}) {
      ComparisonTriple c = comparison_catalog(s);
      bool osc = s == TripleSystem::damped_oscillator_tied;
      std::vector<Trajectory> tr;
      for (const EquationOfMotion& e :
           {euler_lagrange_eom(c.L_sd), euler_lagrange_eom(c.L_nsd), corollary1_eom(c.L_null)}) {
        ExplicitForm ef = solve_leading(e);
        tr.push_back(integrate(IVP{ef.g, b, 0.0, osc ? 1.0 : 0.0, osc ? 0.0 : 2.0, 5.0, 1e-3, ef.domain}));
      }
      double worst = std::max({compare(tr[0], tr[1]).max(), compare(tr[0], tr[2]).max(), compare(tr[1], tr[2]).max()});
      o.require(worst <= 1e-8, std::string(triple_name(s)) + " deviation " + std::to_string(worst));
      if (o.passed) o.detail << triple_name(s) << " " << worst << (osc ? "" : ", ");
    }
    if (o.passed) o.detail.str("max deviations " + o.detail.str());
  });

  criterion(7, "path independence", 0, [](Outcome& o) {
    Bindings b = catalog_bindings();
    b.set_function("f1", P("t")).set_function("f2", P("sin(t)")).set_function("f3", P("exp(t/2)"));
    b.set_function("f4", P("1 + t^2"));
    b.set_param("a1", 1).set_param("a2", 1).set_param("a4", 1);
    Domain box;
    Path base = Path::line(box.t.lo, 0.5, box.t.hi, 1.0);
    auto bumps = bump_family(10, 0.1 * box.x.width(), kDefaultSeed);
    double worst_null = 0.0;
    for (const char* n : {"linear", "quadratic_damping", "fraction_constant"}) {
      NullPair np = build_entry(entry(n));
      for (const Bump& bump : bumps) {
        auto r = path_independence_check(np.lagrangian(), base, base.with_bump(bump.amplitude, bump.k), b);
        worst_null = std::max(worst_null, r.difference);
      }
    }
    o.require(worst_null <= 1e-7, "null difference " + std::to_string(worst_null));
    double best_sd = 0.0;
    for (const Bump& bump : bumps) {
      auto r = path_independence_check(Lagrangian::make(P("x'^2/2")), base, base.with_bump(bump.amplitude, bump.k), b);
      best_sd = std::max(best_sd, r.difference);
    }
    o.require(best_sd > 1e-3, "x'^2/2 largest difference only " + std::to_string(best_sd));
    if (o.passed) o.detail << "max null difference " << worst_null << "; x'^2/2 reaches " << best_sd;
  });

  criterion(8, "convergence order", 0, [](Outcome& o) {
    auto error = [](const char* g, double x0, double v0, double exact, double h) {
      return std::abs(integrate(IVP{P(g), {}, 0.0, x0, v0, 1.0, h, {}}).x.back() - exact);
    };
    const double h = 0.01;
    double ro = error("-2*x' - x", 1, 0, 2 / std::exp(1.0), h) / error("-2*x' - x", 1, 0, 2 / std::exp(1.0), h / 2);
    double rq = error("-x'^2", 0, 2, std::log(3.0), h) / error("-x'^2", 0, 2, std::log(3.0), h / 2);
    o.require(ro >= 14 && ro <= 18, "oscillator ratio " + std::to_string(ro));
    o.require(rq >= 14 && rq <= 18, "quadratic damping ratio " + std::to_string(rq));
    if (o.passed) o.detail << "ratios at h = 0.01: oscillator " << ro << ", quadratic damping " << rq;
  });

  criterion(9, "printed-formula audit", 0, [](Outcome& o) {
    int detected = 0;
    for (const AuditEntry& e : audit()) {
      if (e.id != "oscillator_null_factor" && e.id != "displacement_gamma2_sign" && e.id != "nonstandard_denominator") {
        continue;
      }
      o.require(e.detected(), e.id + " not detected");
      o.require(null_ok(e.corrected), e.id + " corrected form not null");
      detected += e.detected() && null_ok(e.corrected);
    }
    o.require(detected == 3, "expected 3 audited formulas");
    if (o.passed) o.detail << "3/3 discrepancies Distinct with witness, corrected forms null";
  });

  std::printf("%s\n", failures == 0 ? "all acceptance criteria passed" : "acceptance FAILED");
  return failures == 0 ? 0 : 1;
}
