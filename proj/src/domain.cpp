#include "nullag/domain.hpp"

#include "nullag/errors.hpp"
#include "nullag/print.hpp"

#include <cmath>

namespace nullag {

Domain& Domain::guard_nonzero(const Expr& e) {
  if (!e.is_constant()) guards.push_back({e, GuardKind::nonzero});
  return *this;
}

Domain& Domain::guard_positive(const Expr& e) {
  if (!e.is_constant()) guards.push_back({e, GuardKind::positive});
  return *this;
}

Domain& Domain::fix(const std::string& name, const Rational& value) {
  fixed[name] = value;
  return *this;
}

Domain Domain::merged(const Domain& other) const {
  Domain d = *this;
  for (const auto& [k, v] : other.fixed) d.fixed.emplace(k, v);
  for (const auto& g : other.guards) {
    bool seen = false;
    for (const auto& h : d.guards) seen = seen || (h.kind == g.kind && h.expr == g.expr);
    if (!seen) d.guards.push_back(g);
  }
  return d;
}

const std::vector<Expr>& standard_instantiations() {
  static const std::vector<Expr> set = [] {
    Expr t = sym::t();
    return std::vector<Expr>{Expr(1), t, t * t, exp(t / Expr(2)), sin(t), Expr(1) + t * t};
  }();
  return set;
}

std::map<std::string, Expr> instantiation_round(const std::set<std::string>& names, int round) {
  const auto& set = standard_instantiations();
  std::map<std::string, Expr> out;
  int i = 0;
  for (const auto& n : names) {
    out.emplace(n, set[static_cast<std::size_t>((round + i) % static_cast<int>(set.size()))]);
    ++i;
  }
  return out;
}

int instantiation_rounds(const std::set<std::string>& names) {
  return names.empty() ? 1 : static_cast<int>(standard_instantiations().size());
}

Sampler::Sampler(const Domain& d, std::uint64_t seed) : domain_(d), rng_(seed) {}

double Sampler::uniform(const Interval& i) {
  std::uniform_real_distribution<double> dist(i.lo, i.hi);
  return dist(rng_);
}

bool Sampler::guards_hold(const Bindings& b) const {
  for (const auto& g : domain_.guards) {
    double v = 0.0;
    try {
      v = evaluate(g.expr, b);
    } catch (const Error&) {
      return false;
    }
    if (g.kind == GuardKind::nonzero && std::abs(v) < kGuardEpsilon) return false;
    if (g.kind == GuardKind::positive && v < kGuardEpsilon) return false;
  }
  return true;
}

std::optional<std::pair<Bindings, Witness>> Sampler::draw(const std::set<std::string>& params,
                                                          const std::map<std::string, Expr>& functions,
                                                          int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Bindings b;
    Witness w;
    w.point.x = uniform(domain_.x);
    w.point.xdot = uniform(domain_.xdot);
    w.point.xddot = uniform(domain_.xddot);
    w.point.xdddot = uniform(domain_.xdddot);
    w.point.t = uniform(domain_.t);
    b.set(w.point);
    for (const auto& name : params) {
      auto it = domain_.fixed.find(name);
      if (it != domain_.fixed.end()) {
        b.set_param(name, it->second);
        w.params[name] = it->second.get_d();
      } else {
        double v = uniform(domain_.params);
        b.set_param(name, v);
        w.params[name] = v;
      }
    }
    for (const auto& [name, inst] : functions) {
      b.set_function(name, inst);
      w.functions[name] = to_string(inst);
    }
    if (guards_hold(b)) return std::make_pair(std::move(b), std::move(w));
  }
  return std::nullopt;
}

}  // namespace nullag
