#include "nullag/report.hpp"

#include "nullag/parse.hpp"
#include "nullag/print.hpp"

#include <cmath>
#include <istream>

namespace nullag {

namespace {

// JSON has no NaN or infinity.
json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json interval(const Interval& i) { return json::array({i.lo, i.hi}); }

Interval interval_from(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::invalid_argument, std::string("domain.") + key + " must be [lo, hi]");
  }
  Interval i{j[0].get<double>(), j[1].get<double>()};
  if (!(i.lo <= i.hi)) throw Error(ErrorCode::invalid_argument, std::string("domain.") + key + " has lo > hi");
  return i;
}

std::string string_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw Error(ErrorCode::invalid_argument, std::string("missing string field \"") + key + "\"");
  }
  return j[key].get<std::string>();
}

Expr expr_field(const json& j, const char* key) {
  std::string text = string_field(j, key);
  try {
    return parse(text);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

json to_json(const Witness& w) {
  json j;
  j["point"] = {{"x", w.point.x}, {"xdot", w.point.xdot}, {"xddot", w.point.xddot},
                {"xdddot", w.point.xdddot}, {"t", w.point.t}};
  json params = json::object();
  for (const auto& [k, v] : w.params) params[k] = v;
  j["params"] = params;
  json fns = json::object();
  for (const auto& [k, v] : w.functions) fns[k] = v;
  j["functions"] = fns;
  j["lhs"] = number(w.lhs);
  j["rhs"] = number(w.rhs);
  return j;
}

json to_json(const EquivalenceReport& r) {
  json j;
  j["verdict"] = std::string(verdict_name(r.verdict));
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  j["points"] = r.points;
  j["rounds"] = r.rounds;
  j["max_error"] = number(r.max_error);
  j["instantiation_set"] = r.instantiation_set;
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return j;
}

json to_json(const NullityReport& r) {
  json j;
  j["verdict"] = std::string(nullity_name(r.verdict));
  j["residual"] = to_string(r.residual);
  j["check"] = to_json(r.check);
  return j;
}

json to_json(const NullPair& np) {
  json j;
  j["B"] = to_string(np.B());
  j["C"] = to_string(np.C());
  j["f"] = to_string(np.f());
  j["L"] = to_string(np.body());
  j["certified"] = np.certified();
  j["certificate"] = np.certificate() ? to_json(*np.certificate()) : json(nullptr);
  j["domain"] = to_json(np.domain());
  return j;
}

json to_json(const EquationOfMotion& eom) {
  json j;
  j["provenance"] = std::string(provenance_name(eom.provenance));
  j["residual"] = to_string(eom.residual);
  j["leading"] = to_string(eom.leading);
  return j;
}

json to_json(const SystemCase& c) {
  json j;
  j["classification"] = std::string(classification_name(c.classification));
  j["ode"] = to_string(c.ode) + " = 0";
  j["B"] = to_string(c.B);
  j["C"] = to_string(c.C);
  json cons = json::array();
  for (const Expr& e : c.constraints) cons.push_back(to_string(e));
  j["constraints"] = cons;
  json integrals = json::object();
  for (const auto& [k, v] : c.integrals) integrals[k] = to_string(v);
  j["integrals"] = integrals;
  j["null_pair"] = c.null_pair ? to_json(*c.null_pair) : json(nullptr);
  j["eom"] = c.eom ? to_json(*c.eom) : json(nullptr);
  j["absent_reason"] = c.absent_reason.empty() ? json(nullptr) : json(c.absent_reason);
  j["witness"] = c.witness ? to_json(*c.witness) : json(nullptr);
  return j;
}

json to_json(const DriftReport& d) {
  json j;
  j["L0"] = number(d.initial);
  j["max_abs_drift"] = number(d.max_abs);
  j["relative_drift"] = number(d.relative);
  j["tolerance"] = d.tolerance;
  j["passed"] = d.passed();
  return j;
}

json to_json(const Deviation& d) { return {{"x", number(d.x)}, {"xdot", number(d.v)}}; }

json to_json(const AuditEntry& a) {
  json j;
  j["id"] = a.id;
  j["description"] = a.description;
  j["printed"] = to_string(a.printed);
  j["derived"] = to_string(a.derived);
  j["detected"] = a.detected();
  j["comparison"] = to_json(a.comparison);
  j["corrected"] = to_json(a.corrected);
  j["printed_nullity"] = a.printed_nullity ? to_json(*a.printed_nullity) : json(nullptr);
  return j;
}

json to_json(const Error& e) {
  json j;
  j["code"] = std::string(code_name(e.code()));
  j["message"] = e.what();
  if (e.position()) j["position"] = *e.position();
  if (e.witness()) j["witness"] = to_json(*e.witness());
  return j;
}

json to_json(const Domain& d) {
  json j;
  j["x"] = interval(d.x);
  j["t"] = interval(d.t);
  j["xdot"] = interval(d.xdot);
  j["xddot"] = interval(d.xddot);
  j["params"] = interval(d.params);
  json fixed = json::object();
  for (const auto& [k, v] : d.fixed) fixed[k] = to_string(v);
  j["fixed"] = fixed;
  json guards = json::array();
  for (const Guard& g : d.guards) {
    guards.push_back({{"expr", to_string(g.expr)}, {"kind", g.kind == GuardKind::nonzero ? "nonzero" : "positive"}});
  }
  j["guards"] = guards;
  return j;
}

Domain domain_from_json(const json& j) {
  Domain d;
  if (j.is_null()) return d;
  if (!j.is_object()) throw Error(ErrorCode::invalid_argument, "domain must be an object");
  if (j.contains("x")) d.x = interval_from(j["x"], "x");
  if (j.contains("t")) d.t = interval_from(j["t"], "t");
  if (j.contains("xdot")) d.xdot = interval_from(j["xdot"], "xdot");
  if (j.contains("xddot")) d.xddot = interval_from(j["xddot"], "xddot");
  if (j.contains("params")) d.params = interval_from(j["params"], "params");
  if (j.contains("fixed")) {
    for (const auto& [name, value] : j["fixed"].items()) {
      std::optional<Rational> q;
      if (value.is_string()) q = parse_rational(value.get<std::string>());
      if (value.is_number_integer()) q = make_rational(value.get<long>());
      if (!q) throw Error(ErrorCode::invalid_argument, "domain.fixed." + name + " must be a rational string");
      d.fix(name, *q);
    }
  }
  if (j.contains("guards")) {
    for (const json& g : j["guards"]) {
      Expr e = expr_field(g, "expr");
      std::string kind = g.contains("kind") ? g["kind"].get<std::string>() : "nonzero";
      if (kind == "nonzero") {
        d.guard_nonzero(e);
      } else if (kind == "positive") {
        d.guard_positive(e);
      } else {
        throw Error(ErrorCode::invalid_argument, "guard kind must be nonzero or positive");
      }
    }
  }
  return d;
}

CorpusEntry corpus_entry_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::invalid_argument, "corpus record must be an object");
  CorpusEntry e;
  e.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  std::string kind = j.contains("kind") ? string_field(j, "kind") : "generating";
  e.f = j.contains("f") ? expr_field(j, "f") : Expr(0);
  if (kind == "generating") {
    e.kind = CorpusEntry::Kind::generating;
    e.B = expr_field(j, "B");
  } else if (kind == "fraction") {
    e.kind = CorpusEntry::Kind::fraction;
    e.fraction.f1 = expr_field(j, "f1");
    e.fraction.f2 = expr_field(j, "f2");
    e.fraction.f3 = expr_field(j, "f3");
    e.fraction.f4 = expr_field(j, "f4");
  } else {
    throw Error(ErrorCode::invalid_argument, "kind must be \"generating\" or \"fraction\"");
  }
  if (j.contains("domain")) e.domain = domain_from_json(j["domain"]);
  return e;
}

json to_json(const CorpusEntry& e) {
  json j;
  j["name"] = e.name;
  if (e.kind == CorpusEntry::Kind::generating) {
    j["kind"] = "generating";
    j["B"] = to_string(e.B);
  } else {
    j["kind"] = "fraction";
    j["f1"] = to_string(e.fraction.f1);
    j["f2"] = to_string(e.fraction.f2);
    j["f3"] = to_string(e.fraction.f3);
    j["f4"] = to_string(e.fraction.f4);
  }
  j["f"] = to_string(e.f);
  j["domain"] = to_json(e.domain);
  return j;
}

std::vector<CorpusEntry> load_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::invalid_argument, "line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      out.push_back(corpus_entry_from_json(j));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (out.back().name.empty()) out.back().name = "line" + std::to_string(lineno);
  }
  return out;
}

}  // namespace nullag
