#include "nullag/evaluate.hpp"

#include "nullag/diff.hpp"
#include "nullag/errors.hpp"
#include "nullag/print.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace nullag {

double to_double(const Scalar& s) {
  return std::visit([](const auto& v) -> double {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) {
      return v;
    } else {
      return v.get_d();
    }
  }, s);
}

Bindings& Bindings::set(Jet j, Scalar v) {
  jets_[static_cast<std::size_t>(j)] = std::move(v);
  return *this;
}

Bindings& Bindings::set(const JetPoint& p) {
  set(Jet::x, p.x);
  set(Jet::xdot, p.xdot);
  set(Jet::xddot, p.xddot);
  set(Jet::xdddot, p.xdddot);
  set(Jet::t, p.t);
  return *this;
}

Bindings& Bindings::set_param(const std::string& name, Scalar v) {
  params_[name] = std::move(v);
  return *this;
}

Bindings& Bindings::set_function(const std::string& name, const Expr& over_t) {
  auto s = symbols_of(over_t);
  for (Jet j : s.jets) {
    if (j != Jet::t) {
      throw Error(ErrorCode::invalid_argument, "instantiation of " + name + " must depend on t only");
    }
  }
  functions_[name] = over_t;
  return *this;
}

JetPoint Bindings::point() const {
  JetPoint p;
  auto get = [&](Jet j, double& out) {
    if (jets_[static_cast<std::size_t>(j)]) out = to_double(*jets_[static_cast<std::size_t>(j)]);
  };
  get(Jet::x, p.x);
  get(Jet::xdot, p.xdot);
  get(Jet::xddot, p.xddot);
  get(Jet::xdddot, p.xdddot);
  get(Jet::t, p.t);
  return p;
}

namespace {

Expr resolve(const Expr& e, const Bindings& b) {
  Expr r = substitute_functions(e, b.functions());
  if (!b.params().empty()) {
    std::map<Expr, Expr, ExprLess> repl;
    for (const auto& [name, v] : b.params()) {
      if (const auto* q = std::get_if<Rational>(&v)) {
        repl.emplace(Expr::param(name), Expr(*q));
      }
    }
    r = substitute(r, repl);
  }
  return r;
}

}  // namespace

Evaluator::Evaluator(const Expr& e, const Bindings& b, double guard_eps)
    : resolved_(resolve(e, b)), guard_eps_(guard_eps) {
  build();
  param_defaults_.reserve(param_names_.size());
  for (const auto& name : param_names_) {
    auto it = b.params().find(name);
    if (it == b.params().end()) {
      throw Error(ErrorCode::unbound_atom, "named constant " + name + " is unbound");
    }
    param_defaults_.push_back(to_double(it->second));
  }
}

Evaluator::Evaluator(const Expr& e, const std::map<std::string, Expr>& functions, double guard_eps)
    : resolved_(substitute_functions(e, functions)), guard_eps_(guard_eps) {
  build();
}

void Evaluator::build() {
  auto s = symbols_of(resolved_);
  if (!s.functions.empty()) {
    throw Error(ErrorCode::unbound_atom, "opaque function " + *s.functions.begin() + "(t) has no instantiation");
  }
  param_names_.assign(s.params.begin(), s.params.end());
  root_ = compile(resolved_);
}

int Evaluator::compile(const Expr& e) {
  Op op;
  op.kind = e.kind();
  switch (e.kind()) {
    case Kind::constant:
      op.value = e.value().get_d();
      break;
    case Kind::jet:
      op.jet = e.jet_var();
      break;
    case Kind::param: {
      auto it = std::lower_bound(param_names_.begin(), param_names_.end(), e.name());
      op.slot = static_cast<int>(it - param_names_.begin());
      break;
    }
    case Kind::func:
      break;  // rejected in build()
    case Kind::apply:
      op.fn = e.fn();
      op.args.push_back(compile(e.arg()));
      break;
    case Kind::power:
      op.value = e.exponent().get_d();
      if (auto n = to_long(e.exponent())) {
        op.integral = true;
        op.int_exponent = static_cast<int>(*n);
      }
      op.args.push_back(compile(e.base()));
      break;
    case Kind::product:
    case Kind::sum:
      for (const auto& c : e.children()) op.args.push_back(compile(c));
      break;
  }
  ops_.push_back(std::move(op));
  return static_cast<int>(ops_.size()) - 1;
}

double Evaluator::run(int index, const JetPoint& p, const double* params) const {
  const Op& op = ops_[static_cast<std::size_t>(index)];
  switch (op.kind) {
    case Kind::constant:
      return op.value;
    case Kind::param:
      return params[op.slot];
    case Kind::jet:
      switch (op.jet) {
        case Jet::x: return p.x;
        case Jet::xdot: return p.xdot;
        case Jet::xddot: return p.xddot;
        case Jet::xdddot: return p.xdddot;
        case Jet::t: return p.t;
      }
      return 0.0;
    case Kind::sum: {
      double s = 0.0;
      for (int a : op.args) s += run(a, p, params);
      return s;
    }
    case Kind::product: {
      double s = 1.0;
      for (int a : op.args) s *= run(a, p, params);
      return s;
    }
    case Kind::power: {
      double b = run(op.args[0], p, params);
      if (op.value < 0 && std::abs(b) < guard_eps_) {
        throw Error(ErrorCode::division_guard, "denominator within guard margin of zero");
      }
      if (op.integral) {
        int n = op.int_exponent;
        double r = 1.0;
        double base = n < 0 ? 1.0 / b : b;
        for (int k = 0, m = n < 0 ? -n : n; k < m; ++k) r *= base;
        return r;
      }
      if (b < 0) throw Error(ErrorCode::ln_domain, "fractional power of a negative value");
      return std::pow(b, op.value);
    }
    case Kind::apply: {
      double u = run(op.args[0], p, params);
      switch (op.fn) {
        case Fn::exp: return std::exp(u);
        case Fn::ln:
          if (u <= 0) throw Error(ErrorCode::ln_domain, "logarithm of a non-positive value");
          return std::log(u);
        case Fn::sin: return std::sin(u);
        case Fn::cos: return std::cos(u);
        case Fn::abs: return std::abs(u);
      }
      return 0.0;
    }
    case Kind::func:
      return 0.0;
  }
  return 0.0;
}

double Evaluator::operator()(const JetPoint& p) const {
  if (param_defaults_.size() != param_names_.size()) {
    throw Error(ErrorCode::unbound_atom, "named constants must be supplied per call");
  }
  return (*this)(p, param_defaults_);
}

double Evaluator::operator()(const JetPoint& p, std::span<const double> params) const {
  if (params.size() != param_names_.size()) {
    throw Error(ErrorCode::invalid_argument, "parameter count mismatch");
  }
  double v = run(root_, p, params.data());
  if (!std::isfinite(v)) throw Error(ErrorCode::non_finite, "evaluation produced a non-finite value");
  return v;
}

double evaluate(const Expr& e, const Bindings& b, double guard_eps) {
  if (auto exact = evaluate_exact(e, b, guard_eps)) {
    double v = exact->get_d();
    if (!std::isfinite(v)) throw Error(ErrorCode::non_finite, "value exceeds the double range");
    return v;
  }
  Evaluator ev(e, b, guard_eps);
  auto s = symbols_of(ev.resolved());
  for (Jet j : s.jets) {
    if (!b.jet(j)) throw Error(ErrorCode::unbound_atom, "jet symbol " + std::string(jet_name(j)) + " is unbound");
  }
  return ev(b.point());
}

namespace {

// A finite double is an exact dyadic rational.
std::optional<Rational> exact_scalar(const Scalar& s) {
  if (const auto* q = std::get_if<Rational>(&s)) return *q;
  double d = std::get<double>(s);
  if (!std::isfinite(d)) return std::nullopt;
  return rational_from_double(d);
}

std::optional<Rational> exact_rec(const Expr& e, const Bindings& b, double guard_eps) {
  switch (e.kind()) {
    case Kind::constant:
      return e.value();
    case Kind::jet: {
      const auto& v = b.jet(e.jet_var());
      if (!v) throw Error(ErrorCode::unbound_atom, "jet symbol " + std::string(jet_name(e.jet_var())) + " is unbound");
      return exact_scalar(*v);
    }
    case Kind::param: {
      auto it = b.params().find(e.name());
      if (it == b.params().end()) throw Error(ErrorCode::unbound_atom, "named constant " + e.name() + " is unbound");
      return exact_scalar(it->second);
    }
    case Kind::func:
      throw Error(ErrorCode::unbound_atom, "opaque function " + e.name() + "(t) has no instantiation");
    case Kind::apply: {
      if (e.fn() != Fn::abs) return std::nullopt;
      auto u = exact_rec(e.arg(), b, guard_eps);
      if (!u) return std::nullopt;
      return Rational(::abs(*u));
    }
    case Kind::power: {
      auto u = exact_rec(e.base(), b, guard_eps);
      if (!u) return std::nullopt;
      if (e.exponent() < 0 && ::abs(*u) < guard_eps) {
        throw Error(ErrorCode::division_guard, "denominator within the guard margin of zero");
      }
      if (*u < 0 && !is_integer(e.exponent())) {
        throw Error(ErrorCode::ln_domain, "fractional power of a negative value");
      }
      return pow_exact(*u, e.exponent());
    }
    case Kind::product: {
      Rational r = 1;
      for (const auto& c : e.children()) {
        auto v = exact_rec(c, b, guard_eps);
        if (!v) return std::nullopt;
        r *= *v;
      }
      return r;
    }
    case Kind::sum: {
      Rational r = 0;
      for (const auto& c : e.children()) {
        auto v = exact_rec(c, b, guard_eps);
        if (!v) return std::nullopt;
        r += *v;
      }
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Rational> evaluate_exact(const Expr& e, const Bindings& b, double guard_eps) {
  Expr r = substitute_functions(e, b.functions());
  // Only abs is exact; bail out early on anything transcendental.
  bool only_abs = true;
  std::function<void(const Expr&)> scan = [&](const Expr& n) {
    switch (n.kind()) {
      case Kind::apply:
        if (n.fn() != Fn::abs) only_abs = false;
        scan(n.arg());
        break;
      case Kind::power:
        scan(n.base());
        break;
      case Kind::sum:
      case Kind::product:
        for (const auto& c : n.children()) scan(c);
        break;
      default:
        break;
    }
  };
  scan(r);
  if (!only_abs) return std::nullopt;
  return exact_rec(r, b, guard_eps);
}

}  // namespace nullag
