#include "nullag/cli.hpp"

#include "nullag/composer.hpp"
#include "nullag/construct.hpp"
#include "nullag/errors.hpp"
#include "nullag/numint.hpp"
#include "nullag/parse.hpp"
#include "nullag/print.hpp"
#include "nullag/report.hpp"
#include "nullag/systems.hpp"
#include "nullag/variational.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace nullag::cli {

namespace {

struct RunConfig {
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  int points = 50;
  double eps_eq = 1e-9;
  double eps_act = 1e-7;
  double eps_drift = kDriftTolerance;
  std::vector<double> x_box;
  std::vector<double> t_box;
  std::vector<std::string> fixed;

  CheckOptions check() const { return {seed, points, eps_eq}; }
};

struct Outcome {
  json result = json::object();
  std::ostringstream text;
  bool passed = true;
};

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::syntax:
    case ErrorCode::unknown_function:
    case ErrorCode::malformed_derivative:
    case ErrorCode::unbound_atom:
    case ErrorCode::invalid_argument:
    case ErrorCode::infeasible_domain:
    case ErrorCode::antiderivative_unsupported:
    case ErrorCode::integral_unsupported:
    case ErrorCode::harmonic_order_cap:
    case ErrorCode::grid_mismatch:
    case ErrorCode::endpoint_mismatch:
      return true;
    default:
      return false;
  }
}

std::pair<std::string, std::string> split_assignment(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw InputError("expected name=value, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

Rational rational_arg(const std::string& s) {
  auto q = parse_rational(s);
  if (!q) throw InputError("not a rational number: '" + s + "'");
  return *q;
}

std::string witness_text(const Witness& w) {
  std::ostringstream os;
  os << std::setprecision(10) << "x=" << w.point.x << " x'=" << w.point.xdot << " x''=" << w.point.xddot
     << " t=" << w.point.t;
  for (const auto& [k, v] : w.params) os << ' ' << k << '=' << v;
  for (const auto& [k, v] : w.functions) os << ' ' << k << "(t)=" << v;
  os << " lhs=" << w.lhs << " rhs=" << w.rhs;
  return os.str();
}

Domain make_domain(const RunConfig& cfg) {
  Domain d;
  if (!cfg.x_box.empty()) d.x = {cfg.x_box.at(0), cfg.x_box.at(1)};
  if (!cfg.t_box.empty()) d.t = {cfg.t_box.at(0), cfg.t_box.at(1)};
  for (const auto& s : cfg.fixed) {
    auto [name, value] = split_assignment(s);
    d.fix(name, rational_arg(value));
  }
  return d;
}

void describe(Outcome& o, const EquivalenceReport& r, const std::string& label) {
  o.text << label << ": " << verdict_name(r.verdict);
  if (r.verdict != Verdict::proven_equal) o.text << " (max error " << r.max_error << ")";
  o.text << '\n';
  if (r.witness) o.text << "  witness: " << witness_text(*r.witness) << '\n';
}

void describe(Outcome& o, const NullityReport& r, const std::string& label) {
  o.text << label << ": " << nullity_name(r.verdict) << '\n';
  if (!r.null()) o.text << "  residual: " << r.residual << '\n';
  if (r.check.witness) o.text << "  witness: " << witness_text(*r.check.witness) << '\n';
}

FractionSpec fraction_from(const std::vector<std::string>& parts) {
  if (parts.size() != 4) throw InputError("--fraction takes four expressions f1 f2 f3 f4");
  return {parse(parts[0]), parse(parts[1]), parse(parts[2]), parse(parts[3])};
}

// ---------------------------------------------------------------------------

struct DeriveArgs {
  std::string B;
  std::string f = "0";
  std::vector<std::string> fraction;
};

Outcome cmd_derive(const RunConfig& cfg, const DeriveArgs& a) {
  Outcome o;
  Domain d = make_domain(cfg);
  Expr f = parse(a.f);
  std::optional<NullPair> np;
  if (!a.fraction.empty()) {
    np = build_nonstandard_null(fraction_from(a.fraction), f, d, cfg.check());
  } else {
    if (a.B.empty()) throw InputError("derive needs --B or --fraction");
    Expr B = parse(a.B);
    SolveCResult sc = solve_C(B, d);
    json warnings = sc.warnings;
    o.result["warnings"] = warnings;
    for (const auto& w : sc.warnings) o.text << "warning: " << w << '\n';
    np = build_null(B, f, d, cfg.check());
  }
  o.result["null_pair"] = to_json(*np);
  o.text << "B = " << np->B() << "\nC = " << np->C() << "\nf = " << np->f() << "\nL = " << np->body() << '\n';
  describe(o, *np->certificate(), "nullity");
  o.passed = np->certificate()->null();
  return o;
}

struct VerifyArgs {
  std::string L;
  std::string against;
  std::vector<std::string> fraction;
  std::string f = "0";
};

Outcome cmd_verify(const RunConfig& cfg, const VerifyArgs& a) {
  Outcome o;
  Domain d = make_domain(cfg);
  Lagrangian L = Lagrangian::make(parse(a.L), d);
  NullityReport r = is_null(L, cfg.check());
  o.result["L"] = to_string(L.body);
  o.result["nullity"] = to_json(r);
  o.text << "L = " << L.body << '\n';
  describe(o, r, "nullity");
  o.passed = r.null();

  std::optional<Expr> reference;
  Domain ref_domain = d;
  if (!a.against.empty()) {
    reference = parse(a.against);
  } else if (!a.fraction.empty()) {
    NullPair np = build_nonstandard_null(fraction_from(a.fraction), parse(a.f), d, cfg.check());
    reference = np.body();
    ref_domain = np.domain();
    o.text << "machine-derived L = " << *reference << '\n';
  }
  if (reference) {
    EquivalenceReport eq = equivalent(L.body, *reference, ref_domain, cfg.check());
    o.result["reference"] = to_string(*reference);
    o.result["comparison"] = to_json(eq);
    describe(o, eq, "against reference");
    o.passed = o.passed && eq.equal();
  }
  return o;
}

struct HarmonicArgs {
  std::string B;
  std::string f = "0";
  std::vector<std::string> fraction;
  int n = 1;
};

Outcome cmd_harmonic(const RunConfig& cfg, const HarmonicArgs& a) {
  Outcome o;
  Domain d = make_domain(cfg);
  Expr f = parse(a.f);
  if (a.fraction.empty() && a.B.empty()) throw InputError("harmonic needs --B or --fraction");
  HarmonicLagrangian h =
      a.fraction.empty()
          ? harmonic(build_null(parse(a.B), f, d, cfg.check()), a.n, kHarmonicOrderCap, cfg.check())
          : nonstandard_harmonic(build_nonstandard_null(fraction_from(a.fraction), f, d, cfg.check()), a.n,
                                 kHarmonicOrderCap, cfg.check());
  o.result["order"] = h.order;
  o.result["Bn"] = to_string(h.Bn);
  o.result["xCn"] = to_string(h.xCn);
  o.result["L"] = to_string(h.body);
  o.result["certificate"] = to_json(h.certificate);
  o.text << "n = " << h.order << "\nB_n = " << h.Bn << "\n[xC]_n = " << h.xCn << "\nL = " << h.body << '\n';
  describe(o, h.certificate, "nullity");
  o.passed = h.certificate.null();
  return o;
}

struct EomArgs {
  std::string L;
  std::string B;
  std::string f = "0";
  std::string rule;
  std::string F = "exp";
  int harmonic = 0;
};

Composer composer_named(const std::string& name) {
  if (name == "identity") return Composer::identity();
  if (name == "exp") return Composer::exp();
  if (name == "ln") return Composer::ln();
  if (name == "reciprocal") return Composer::reciprocal();
  if (name.rfind("power:", 0) == 0) return Composer::power(rational_arg(name.substr(6)));
  return Composer::custom(parse(name));
}

Outcome cmd_eom(const RunConfig& cfg, const EomArgs& a) {
  Outcome o;
  Domain d = make_domain(cfg);
  std::optional<EquationOfMotion> eom;
  if (!a.B.empty()) {
    std::string rule = a.rule.empty() ? "corollary1" : a.rule;
    NullPair np = build_null(parse(a.B), parse(a.f), d, cfg.check());
    o.result["null_pair"] = to_json(np);
    if (a.harmonic > 0) {
      eom = harmonic_eom(harmonic(np, a.harmonic, kHarmonicOrderCap, cfg.check()), cfg.check());
    } else if (rule == "corollary1") {
      eom = corollary1_eom(np, cfg.check());
    } else if (rule == "prop3") {
      eom = prop3_eom(composer_named(a.F), np.lagrangian());
    } else if (rule == "el") {
      eom = euler_lagrange_eom(np.lagrangian());
    } else {
      throw InputError("unknown rule '" + rule + "'");
    }
  } else if (!a.L.empty()) {
    std::string rule = a.rule.empty() ? "el" : a.rule;
    Lagrangian L = Lagrangian::make(parse(a.L), d);
    if (rule == "el") {
      eom = euler_lagrange_eom(L);
    } else if (rule == "prop3") {
      eom = prop3_eom(composer_named(a.F), L);
    } else {
      throw InputError("rule '" + rule + "' needs --B (a null pair)");
    }
  } else {
    throw InputError("eom needs --L or --B");
  }
  o.result["eom"] = to_json(*eom);
  o.text << "rule: " << provenance_name(eom->provenance) << '\n' << eom->residual << " = 0\n";
  try {
    ExplicitForm ef = solve_leading(*eom, cfg.check());
    o.result["explicit"] = to_string(ef.g);
    o.text << "x'' = " << ef.g << '\n';
  } catch (const Error& e) {
    if (e.code() != ErrorCode::leading_coefficient_vanishes) throw;
    o.result["explicit"] = nullptr;
    o.result["explicit_error"] = to_json(e);
    o.text << "no explicit form: " << e.what() << '\n';
  }
  return o;
}

struct SystemArgs {
  std::string kind;
  std::string alpha = "0", beta = "0", gamma = "0";
  std::string c;
};

Outcome cmd_system(const RunConfig& cfg, const SystemArgs& a) {
  Outcome o;
  Domain d = make_domain(cfg);
  SystemCase sc;
  if (a.kind == "constant") {
    sc = classify_constant(parse(a.alpha), parse(a.beta), parse(a.gamma), d, cfg.check());
  } else if (a.kind == "timedep") {
    Expr beta = parse(a.beta);
    Expr gamma = a.gamma.empty() || a.gamma == "auto" ? derive_gamma1(beta) : parse(a.gamma);
    sc = build_timedep(parse(a.alpha), beta, gamma, d, cfg.check());
  } else {
    Expr alpha = parse(a.alpha);
    Expr beta = parse(a.beta);
    Expr gamma = a.c.empty() ? parse(a.gamma) : solve_gamma2(alpha, beta, parse(a.c));
    sc = build_displacement(alpha, beta, gamma, d, cfg.check());
  }
  o.result["system"] = to_json(sc);
  o.text << "classification: " << classification_name(sc.classification) << '\n';
  o.text << "equation: " << sc.ode << " = 0\n";
  if (sc.null_pair) {
    o.text << "B = " << sc.B << "\nC = " << sc.C << "\nL_null = " << sc.null_pair->body() << '\n';
    describe(o, *sc.null_pair->certificate(), "nullity");
    o.passed = sc.null_pair->certificate()->null();
  }
  if (sc.eom) o.text << "Corollary 1: " << sc.eom->residual << " = 0\n";
  if (!sc.absent_reason.empty()) o.text << "no null Lagrangian: " << sc.absent_reason << '\n';
  if (sc.witness) o.text << "  witness: " << witness_text(*sc.witness) << '\n';
  return o;
}

struct SimArgs {
  std::string system;
  std::string B;
  std::string f = "0";
  std::string route = "null";
  std::vector<double> ic;
  double h = kDefaultStep;
  double t1 = 1.0;
  std::optional<double> alpha0, beta0;
  std::vector<std::string> set;
  std::vector<std::string> functions;
  std::string csv;
  double tolerance = 1e-8;
};

TripleSystem triple_from(const std::string& s) {
  if (s == "inertia") return TripleSystem::inertia;
  if (s == "quadratic") return TripleSystem::quadratic_damping;
  if (s == "oscillator") return TripleSystem::damped_oscillator_tied;
  throw InputError("unknown system '" + s + "' (inertia, quadratic, oscillator)");
}

Bindings sim_bindings(const SimArgs& a) {
  Bindings b;
  for (const auto& [k, v] : default_constants()) b.set_param(k, v);
  if (a.alpha0) b.set_param("alpha0", *a.alpha0);
  if (a.beta0) b.set_param("beta0", *a.beta0);
  for (const auto& s : a.set) {
    auto [name, value] = split_assignment(s);
    b.set_param(name, rational_arg(value));
  }
  for (const auto& s : a.functions) {
    auto [name, value] = split_assignment(s);
    b.set_function(name, parse(value));
  }
  return b;
}

std::array<double, 3> initial_conditions(const SimArgs& a) {
  if (a.ic.empty()) {
    if (a.system == "oscillator") return {0.0, 1.0, 0.0};
    return {0.0, 0.0, 2.0};
  }
  if (a.ic.size() != 3) throw InputError("--ic takes t0,x0,v0");
  return {a.ic[0], a.ic[1], a.ic[2]};
}

Trajectory run_route(const ExplicitForm& ef, const Bindings& b, const std::array<double, 3>& ic, const SimArgs& a) {
  IVP ivp{ef.g, b, ic[0], ic[1], ic[2], a.t1, a.h, ef.domain};
  return integrate(ivp);
}

Outcome cmd_simulate(const RunConfig& cfg, const SimArgs& a) {
  Outcome o;
  Bindings b = sim_bindings(a);
  auto ic = initial_conditions(a);
  std::optional<NullPair> np;
  ExplicitForm ef;
  if (!a.B.empty()) {
    np = build_null(parse(a.B), parse(a.f), make_domain(cfg), cfg.check());
    ef = solve_leading(corollary1_eom(*np, cfg.check()), cfg.check());
  } else {
    if (a.system.empty()) throw InputError("simulate needs --system or --B");
    ComparisonTriple tri = comparison_catalog(triple_from(a.system), cfg.check());
    np = tri.L_null;
    if (a.route == "null") {
      ef = solve_leading(corollary1_eom(tri.L_null, cfg.check()), cfg.check());
    } else if (a.route == "sd") {
      ef = solve_leading(euler_lagrange_eom(tri.L_sd), cfg.check());
    } else if (a.route == "nsd") {
      ef = solve_leading(euler_lagrange_eom(tri.L_nsd), cfg.check());
    } else {
      throw InputError("unknown route '" + a.route + "' (null, sd, nsd)");
    }
  }
  Trajectory tr = run_route(ef, b, ic, a);
  DriftReport dr = drift(*np, tr, b, cfg.eps_drift);

  if (!a.csv.empty()) {
    std::ofstream file(a.csv);
    if (!file) throw InputError("cannot write '" + a.csv + "'");
    write_csv(file, tr, &dr);
  }
  o.result["g"] = to_string(ef.g);
  o.result["L_null"] = to_string(np->body());
  o.result["route"] = a.B.empty() ? a.route : "null";
  o.result["h"] = a.h;
  o.result["steps"] = tr.size() - 1;
  o.result["t1"] = tr.t.back();
  o.result["x1"] = tr.x.back();
  o.result["xdot1"] = tr.v.back();
  o.result["drift"] = to_json(dr);
  if (!a.csv.empty()) o.result["csv"] = a.csv;
  o.text << std::setprecision(12) << "x'' = " << ef.g << "\nL_null = " << np->body() << '\n'
         << "steps " << tr.size() - 1 << ", h = " << a.h << '\n'
         << "x(" << tr.t.back() << ") = " << tr.x.back() << "\nx'(" << tr.t.back() << ") = " << tr.v.back() << '\n'
         << "L_null(t0) = " << dr.initial << ", max drift " << dr.max_abs << " (relative " << dr.relative
         << ", tolerance " << dr.tolerance << "): " << (dr.passed() ? "pass" : "FAIL") << '\n';
  o.passed = dr.passed();
  return o;
}

Outcome cmd_compare(const RunConfig& cfg, const SimArgs& a) {
  Outcome o;
  if (a.system.empty()) throw InputError("compare needs --system");
  Bindings b = sim_bindings(a);
  auto ic = initial_conditions(a);
  ComparisonTriple tri = comparison_catalog(triple_from(a.system), cfg.check());
  const std::array<std::pair<const char*, ExplicitForm>, 3> routes = {{
      {"sd", solve_leading(euler_lagrange_eom(tri.L_sd), cfg.check())},
      {"nsd", solve_leading(euler_lagrange_eom(tri.L_nsd), cfg.check())},
      {"null", solve_leading(corollary1_eom(tri.L_null, cfg.check()), cfg.check())},
  }};
  std::vector<Trajectory> trajs;
  json jr = json::object();
  for (const auto& [name, ef] : routes) {
    trajs.push_back(run_route(ef, b, ic, a));
    jr[name] = to_string(ef.g);
    o.text << "x'' (" << name << ") = " << ef.g << '\n';
  }
  o.result["routes"] = jr;
  json dev = json::object();
  o.text << std::setprecision(6);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      Deviation d = compare(trajs[i], trajs[j]);
      std::string key = std::string(routes[i].first) + "-" + routes[j].first;
      dev[key] = to_json(d);
      bool ok = d.max() <= a.tolerance;
      o.passed = o.passed && ok;
      o.text << key << ": max |dx| " << d.x << ", max |dx'| " << d.v << (ok ? " pass" : " FAIL") << '\n';
    }
  }
  DriftReport dr = drift(tri.L_null, trajs[2], b, cfg.eps_drift);
  o.result["deviations"] = dev;
  o.result["tolerance"] = a.tolerance;
  o.result["drift"] = to_json(dr);
  o.text << "L_null drift along the null route: " << dr.max_abs << (dr.passed() ? " pass" : " FAIL") << '\n';
  o.passed = o.passed && dr.passed();
  return o;
}

Outcome cmd_audit(const RunConfig& cfg) {
  Outcome o;
  json entries = json::array();
  for (const AuditEntry& e : audit(cfg.check())) {
    entries.push_back(to_json(e));
    bool ok = e.detected() && e.corrected.null();
    o.passed = o.passed && ok;
    o.text << e.id << ": " << (e.detected() ? "discrepancy detected" : "NOT detected") << " ("
           << verdict_name(e.comparison.verdict) << "), corrected form " << nullity_name(e.corrected.verdict);
    if (e.printed_nullity) o.text << ", printed form " << nullity_name(e.printed_nullity->verdict);
    o.text << "\n  " << e.description << "\n  printed: " << e.printed << "\n  derived: " << e.derived << '\n';
    if (e.comparison.witness) o.text << "  witness: " << witness_text(*e.comparison.witness) << '\n';
  }
  o.result["entries"] = entries;
  return o;
}

struct ActionArgs {
  std::string L;
  double t0 = 0.0, t1 = 1.0, x0 = 0.5, x1 = 1.0;
  int bumps = 10;
  std::vector<std::string> set;
};

Outcome cmd_action(const RunConfig& cfg, const ActionArgs& a) {
  Outcome o;
  Lagrangian L = Lagrangian::make(parse(a.L), make_domain(cfg));
  Bindings b;
  for (const auto& [k, v] : default_constants()) b.set_param(k, v);
  for (const auto& s : a.set) {
    auto [name, value] = split_assignment(s);
    b.set_param(name, rational_arg(value));
  }
  Path base = Path::line(a.t0, a.x0, a.t1, a.x1);
  json pairs = json::array();
  double worst = 0.0;
  Domain box = make_domain(cfg);
  for (const Bump& bump : bump_family(a.bumps, 0.1 * box.x.width(), cfg.seed)) {
    Path bumped = base.with_bump(bump.amplitude, bump.k);
    PathIndependenceReport r = path_independence_check(L, base, bumped, b, cfg.eps_act);
    pairs.push_back({{"amplitude", bump.amplitude}, {"k", bump.k}, {"action_line", r.action1}, {"action_bumped", r.action2},
                     {"difference", r.difference}, {"passed", r.passed}});
    worst = std::max(worst, r.difference);
    o.passed = o.passed && r.passed;
  }
  o.result["pairs"] = pairs;
  o.result["max_difference"] = worst;
  o.text << "L = " << L.body << "\nmax action difference over " << a.bumps << " bumped paths: " << worst << " ("
         << (o.passed ? "path independent" : "path dependent") << ", tolerance " << cfg.eps_act << ")\n";
  return o;
}

struct BatchArgs {
  std::string file;
  int harmonics = 0;
  int jobs = 1;
};

json batch_entry(const CorpusEntry& e, const RunConfig& cfg, int harmonics, bool& ok) {
  json r;
  r["name"] = e.name;
  try {
    NullPair np = build_entry(e, cfg.check());
    r["null_pair"] = to_json(np);
    ok = np.certificate()->null();
    json hs = json::array();
    for (int n = 1; n <= harmonics; ++n) {
      HarmonicLagrangian h = e.kind == CorpusEntry::Kind::fraction
                                 ? nonstandard_harmonic(np, n, kHarmonicOrderCap, cfg.check())
                                 : harmonic(np, n, kHarmonicOrderCap, cfg.check());
      hs.push_back({{"order", n}, {"verdict", std::string(nullity_name(h.certificate.verdict))}});
      ok = ok && h.certificate.null();
    }
    r["harmonics"] = hs;
  } catch (const Error& err) {
    r["error"] = to_json(err);
    ok = false;
  }
  r["passed"] = ok;
  return r;
}

Outcome cmd_batch(const RunConfig& cfg, const BatchArgs& a) {
  Outcome o;
  std::ifstream in(a.file);
  if (!in) throw InputError("cannot read '" + a.file + "'");
  std::vector<CorpusEntry> corpus = load_corpus(in);
  std::vector<json> results(corpus.size());
  std::vector<char> ok(corpus.size(), 0);
  // Entries are independent; results are collected in input order.
  const std::size_t jobs = static_cast<std::size_t>(std::max(1, a.jobs));
  for (std::size_t start = 0; start < corpus.size(); start += jobs) {
    std::vector<std::future<void>> running;
    for (std::size_t i = start; i < std::min(corpus.size(), start + jobs); ++i) {
      running.push_back(std::async(std::launch::async, [&, i] {
        bool pass = false;
        results[i] = batch_entry(corpus[i], cfg, a.harmonics, pass);
        ok[i] = pass;
      }));
    }
    for (auto& f : running) f.get();
  }
  json arr = json::array();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    arr.push_back(results[i]);
    o.passed = o.passed && ok[i];
    o.text << corpus[i].name << ": ";
    if (results[i].contains("error")) {
      o.text << "error [" << results[i]["error"]["code"].get<std::string>() << "] "
             << results[i]["error"]["message"].get<std::string>() << '\n';
    } else {
      o.text << results[i]["null_pair"]["certificate"]["verdict"].get<std::string>();
      for (const auto& h : results[i]["harmonics"]) {
        o.text << ", n=" << h["order"].get<int>() << ' ' << h["verdict"].get<std::string>();
      }
      o.text << "  L = " << results[i]["null_pair"]["L"].get<std::string>() << '\n';
    }
  }
  o.result["entries"] = arr;
  return o;
}

json envelope(const RunConfig& cfg, const std::string& command) {
  json j;
  j["tool"] = "nullag";
  j["version"] = kVersion;
  j["command"] = command;
  j["seed"] = cfg.seed;
  j["points"] = cfg.points;
  j["tolerances"] = {{"eq", cfg.eps_eq}, {"act", cfg.eps_act}, {"drift", cfg.eps_drift}};
  return j;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Null Lagrangian construction, verification and simulation"};
  app.name("nullag");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  RunConfig cfg;
  app.add_flag("--json", cfg.json, "JSON report on stdout");
  app.add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();
  app.add_option("--points", cfg.points, "Sample points per instantiation round")->check(CLI::PositiveNumber);
  app.add_option("--eps-eq", cfg.eps_eq, "Equivalence tolerance")->check(CLI::PositiveNumber);
  app.add_option("--eps-act", cfg.eps_act, "Action difference tolerance")->check(CLI::PositiveNumber);
  app.add_option("--eps-drift", cfg.eps_drift, "Relative drift tolerance")->check(CLI::PositiveNumber);
  app.add_option("--x-box", cfg.x_box, "Sampling interval for x")->expected(2)->delimiter(',');
  app.add_option("--t-box", cfg.t_box, "Sampling interval for t")->expected(2)->delimiter(',');
  app.add_option("--fix", cfg.fixed, "Fix a named constant, name=rational")->take_all();

  DeriveArgs derive;
  auto* s_derive = app.add_subcommand("derive", "Null Lagrangian generated by B");
  s_derive->add_option("--B", derive.B, "Generating function B(x, t)");
  s_derive->add_option("--f", derive.f, "Additive function of t");
  s_derive->add_option("--fraction", derive.fraction, "f1 f2 f3 f4 for B = f1/(f2 x + f3 t + f4)")->expected(4);

  VerifyArgs verify;
  auto* s_verify = app.add_subcommand("verify", "Euler-Lagrange nullity of L");
  s_verify->add_option("L", verify.L, "Lagrangian")->required();
  s_verify->add_option("--against", verify.against, "Reference expression for an equivalence check");
  s_verify->add_option("--fraction", verify.fraction, "Compare with the null Lagrangian of f1 f2 f3 f4")->expected(4);
  s_verify->add_option("--f", verify.f, "Additive function of t for --fraction");

  HarmonicArgs harm;
  auto* s_harm = app.add_subcommand("harmonic", "Higher harmonic of a null Lagrangian");
  s_harm->add_option("--B", harm.B, "Generating function");
  s_harm->add_option("--f", harm.f, "Additive function of t");
  s_harm->add_option("--fraction", harm.fraction, "f1 f2 f3 f4")->expected(4);
  s_harm->add_option("-n,--order", harm.n, "Harmonic order")->check(CLI::Range(0, kHarmonicOrderCap));

  EomArgs eom;
  auto* s_eom = app.add_subcommand("eom", "Equation of motion");
  s_eom->add_option("--L", eom.L, "Lagrangian (Euler-Lagrange or composed rule)");
  s_eom->add_option("--B", eom.B, "Generating function of a null pair");
  s_eom->add_option("--f", eom.f, "Additive function of t");
  s_eom->add_option("--rule", eom.rule, "el, corollary1 or prop3");
  s_eom->add_option("--F", eom.F, "Outer function for prop3: identity, exp, ln, reciprocal, power:k, or F(lambda)");
  s_eom->add_option("--harmonic", eom.harmonic, "Use the n-th harmonic of the null pair");

  SystemArgs sys;
  auto* s_sys = app.add_subcommand("system", "Dissipative system catalog");
  s_sys->require_subcommand(1);
  auto* s_const = s_sys->add_subcommand("constant", "x'' + alpha x'^2 + beta x' + gamma x = 0, constant coefficients");
  s_const->add_option("--alpha", sys.alpha);
  s_const->add_option("--beta", sys.beta);
  s_const->add_option("--gamma", sys.gamma);
  auto* s_time = s_sys->add_subcommand("timedep", "Coefficients depending on t");
  s_time->add_option("--alpha", sys.alpha);
  s_time->add_option("--beta", sys.beta);
  s_time->add_option("--gamma", sys.gamma, "gamma(t), or auto for beta'/2 + beta^2/4");
  auto* s_disp = s_sys->add_subcommand("displacement", "Coefficients depending on x");
  s_disp->add_option("--alpha", sys.alpha);
  s_disp->add_option("--beta", sys.beta);
  s_disp->add_option("--gamma", sys.gamma);
  s_disp->add_option("--c", sys.c, "Integration constant; gamma is then solved from the constraint");

  SimArgs sim;
  auto add_sim = [&](CLI::App* s) {
    s->set_help_flag("--help", "Print this help message and exit");
    s->add_option("--system", sim.system, "inertia, quadratic or oscillator");
    s->add_option("--ic", sim.ic, "t0,x0,v0")->expected(3)->delimiter(',');
    s->add_option("--h", sim.h, "Step size")->check(CLI::PositiveNumber);
    s->add_option("--t1", sim.t1, "Horizon");
    s->add_option("--alpha0,--a0", sim.alpha0, "alpha0");
    s->add_option("--beta0,--b0", sim.beta0, "beta0");
    s->add_option("--set", sim.set, "Named constant, name=rational")->take_all();
  };
  auto* s_sim = app.add_subcommand("simulate", "Integrate an equation of motion and monitor L_null");
  add_sim(s_sim);
  s_sim->add_option("--B", sim.B, "Generating function (Corollary 1 route)");
  s_sim->add_option("--f", sim.f, "Additive function of t");
  s_sim->add_option("--fn", sim.functions, "Opaque function instantiation, name=expr in t")->take_all();
  s_sim->add_option("--route", sim.route, "null, sd or nsd");
  s_sim->add_option("--csv", sim.csv, "Trajectory CSV path");
  auto* s_cmp = app.add_subcommand("compare", "Compare the three Lagrangian routes of a system");
  add_sim(s_cmp);
  s_cmp->add_option("--tol", sim.tolerance, "Maximum deviation")->check(CLI::PositiveNumber);

  ActionArgs act;
  auto* s_act = app.add_subcommand("action", "Path independence of the action");
  s_act->add_option("L", act.L, "Lagrangian")->required();
  s_act->add_option("--t0", act.t0, "Start time");
  s_act->add_option("--t1", act.t1, "End time");
  s_act->add_option("--x0", act.x0, "Start position");
  s_act->add_option("--x1", act.x1, "End position");
  s_act->add_option("--bumps", act.bumps, "Number of perturbed paths")->check(CLI::PositiveNumber);
  s_act->add_option("--set", act.set, "Named constant, name=rational")->take_all();

  auto* s_audit = app.add_subcommand("audit", "Check printed formulas against derived ones");

  BatchArgs batch;
  auto* s_batch = app.add_subcommand("batch", "Certify every record of a JSONL corpus");
  s_batch->add_option("file", batch.file, "Corpus file")->required();
  s_batch->add_option("--harmonics", batch.harmonics, "Also certify harmonics 1..n")->check(CLI::Range(0, 8));
  s_batch->add_option("--jobs", batch.jobs, "Parallel entries")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInputError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  if (command == "system") {
    sys.kind = s_sys->get_subcommands().front()->get_name();
    command += " " + sys.kind;
  }
  if ((!cfg.x_box.empty() && cfg.x_box[0] > cfg.x_box[1]) || (!cfg.t_box.empty() && cfg.t_box[0] > cfg.t_box[1])) {
    err << "error [invalid_argument]: box lower end exceeds upper end\n";
    return kExitInputError;
  }

  auto report_error = [&](const std::string& code, const std::string& message, const json& detail, int status) {
    if (cfg.json) {
      json j = envelope(cfg, command);
      j["passed"] = false;
      j["error"] = detail.is_null() ? json{{"code", code}, {"message", message}} : detail;
      out << j.dump(2) << '\n';
    }
    err << "error [" << code << "]: " << message << '\n';
    return status;
  };

  try {
    Outcome o;
    if (*s_derive) o = cmd_derive(cfg, derive);
    else if (*s_verify) o = cmd_verify(cfg, verify);
    else if (*s_harm) o = cmd_harmonic(cfg, harm);
    else if (*s_eom) o = cmd_eom(cfg, eom);
    else if (*s_sys) o = cmd_system(cfg, sys);
    else if (*s_sim) o = cmd_simulate(cfg, sim);
    else if (*s_cmp) o = cmd_compare(cfg, sim);
    else if (*s_act) o = cmd_action(cfg, act);
    else if (*s_audit) o = cmd_audit(cfg);
    else o = cmd_batch(cfg, batch);

    if (cfg.json) {
      json j = envelope(cfg, command);
      j["passed"] = o.passed;
      j["result"] = std::move(o.result);
      out << j.dump(2) << '\n';
    } else {
      out << o.text.str();
      out << "seed " << cfg.seed << ", tolerances eq " << cfg.eps_eq << " act " << cfg.eps_act << " drift "
          << cfg.eps_drift << ", nullag " << kVersion << '\n';
      out << (o.passed ? "PASS" : "FAIL") << '\n';
    }
    return o.passed ? kExitPass : kExitVerificationFailure;
  } catch (const Error& e) {
    int status = is_input_error(e.code()) ? kExitInputError : kExitVerificationFailure;
    if (!cfg.json && e.witness()) err << "witness: " << witness_text(*e.witness()) << '\n';
    return report_error(std::string(code_name(e.code())), e.what(), to_json(e), status);
  } catch (const InputError& e) {
    return report_error("invalid_argument", e.what(), nullptr, kExitInputError);
  }
}

}  // namespace nullag::cli
