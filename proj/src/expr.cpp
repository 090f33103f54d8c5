#include "nullag/expr.hpp"

#include "nullag/errors.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <optional>

namespace nullag {

struct Node {
  Kind kind = Kind::constant;
  Rational value;  // constant value, or exponent of a power
  std::string name;
  int order = 0;
  Jet jet = Jet::x;
  Fn fn = Fn::exp;
  std::vector<Expr> args;  // sum/product children; power base; apply argument
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_rational(const Rational& q) {
  std::size_t h = static_cast<std::size_t>(mpz_get_si(q.get_num_mpz_t()));
  h = mix(h, static_cast<std::size_t>(mpz_get_si(q.get_den_mpz_t())));
  h = mix(h, mpz_size(q.get_num_mpz_t()));
  return h;
}

int kind_rank(Kind k) { return static_cast<int>(k); }

template <class T>
int three_way(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

}  // namespace

struct ExprFactory {
  static Expr make(Node node) {
    std::size_t h = static_cast<std::size_t>(node.kind) * 1315423911u;
    std::size_t size = 1;
    switch (node.kind) {
      case Kind::constant:
        h = mix(h, hash_rational(node.value));
        break;
      case Kind::jet:
        h = mix(h, static_cast<std::size_t>(node.jet));
        break;
      case Kind::param:
        h = mix(h, std::hash<std::string>{}(node.name));
        break;
      case Kind::func:
        h = mix(mix(h, std::hash<std::string>{}(node.name)), static_cast<std::size_t>(node.order));
        break;
      case Kind::apply:
        h = mix(h, static_cast<std::size_t>(node.fn));
        break;
      case Kind::power:
        h = mix(h, hash_rational(node.value));
        break;
      case Kind::product:
      case Kind::sum:
        break;
    }
    for (const auto& a : node.args) {
      h = mix(h, a.hash());
      size += a.size();
    }
    node.hash = h;
    node.size = size;
    return Expr(std::make_shared<const Node>(std::move(node)));
  }

  static Expr constant(const Rational& q) {
    Node n;
    n.kind = Kind::constant;
    n.value = q;
    return make(std::move(n));
  }

  static Expr power_node(const Expr& base, const Rational& q) {
    if (q == 1) return base;
    Node n;
    n.kind = Kind::power;
    n.value = q;
    n.args = {base};
    return make(std::move(n));
  }

  static Expr apply_node(Fn fn, const Expr& arg) {
    Node n;
    n.kind = Kind::apply;
    n.fn = fn;
    n.args = {arg};
    return make(std::move(n));
  }

  static Expr nary(Kind kind, std::vector<Expr> children) {
    Node n;
    n.kind = kind;
    n.args = std::move(children);
    return make(std::move(n));
  }

  static const Node& node(const Expr& e) { return *e.node_; }
};

namespace {

const Node& N(const Expr& e) { return ExprFactory::node(e); }

const Expr& zero_expr() {
  static const Expr z = ExprFactory::constant(Rational(0));
  return z;
}

const Expr& one_expr() {
  static const Expr o = ExprFactory::constant(Rational(1));
  return o;
}

}  // namespace

Expr::Expr() : node_(zero_expr().node_) {}
Expr::Expr(int value) : Expr(Rational(value)) {}
Expr::Expr(long value) : Expr(Rational(value)) {}
Expr::Expr(const Rational& value) {
  if (value == 0) {
    node_ = zero_expr().node_;
  } else if (value == 1) {
    node_ = one_expr().node_;
  } else {
    node_ = ExprFactory::constant(value).node_;
  }
}

Expr Expr::jet(Jet j) {
  Node n;
  n.kind = Kind::jet;
  n.jet = j;
  return ExprFactory::make(std::move(n));
}

Expr Expr::param(const std::string& name) {
  Node n;
  n.kind = Kind::param;
  n.name = name;
  return ExprFactory::make(std::move(n));
}

Expr Expr::func(const std::string& name, int order) {
  if (order < 0) throw Error(ErrorCode::invalid_argument, "negative derivative order");
  Node n;
  n.kind = Kind::func;
  n.name = name;
  n.order = order;
  return ExprFactory::make(std::move(n));
}

Kind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const { return node_->kind == Kind::constant && node_->value == 0; }
bool Expr::is_one() const { return node_->kind == Kind::constant && node_->value == 1; }
const Rational& Expr::value() const {
  assert(kind() == Kind::constant);
  return node_->value;
}
Jet Expr::jet_var() const { return node_->jet; }
const std::string& Expr::name() const { return node_->name; }
int Expr::order() const { return node_->order; }
Fn Expr::fn() const { return node_->fn; }
const Rational& Expr::exponent() const {
  assert(kind() == Kind::power);
  return node_->value;
}
const Expr& Expr::base() const { return node_->args.front(); }
const Expr& Expr::arg() const { return node_->args.front(); }
std::span<const Expr> Expr::children() const { return node_->args; }
std::size_t Expr::hash() const { return node_->hash; }
std::size_t Expr::size() const { return node_->size; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

int compare(const Expr& a, const Expr& b) {
  if (&N(a) == &N(b)) return 0;
  const Node& na = N(a);
  const Node& nb = N(b);
  if (na.kind != nb.kind) return three_way(kind_rank(na.kind), kind_rank(nb.kind));
  switch (na.kind) {
    case Kind::constant:
      return cmp(na.value, nb.value) < 0 ? -1 : (cmp(na.value, nb.value) > 0 ? 1 : 0);
    case Kind::jet:
      return three_way(static_cast<int>(na.jet), static_cast<int>(nb.jet));
    case Kind::param:
      return three_way(na.name, nb.name);
    case Kind::func:
      if (int c = three_way(na.name, nb.name)) return c;
      return three_way(na.order, nb.order);
    case Kind::apply:
      if (na.fn != nb.fn) return three_way(static_cast<int>(na.fn), static_cast<int>(nb.fn));
      return compare(na.args[0], nb.args[0]);
    case Kind::power:
      if (int c = compare(na.args[0], nb.args[0])) return c;
      return cmp(na.value, nb.value) < 0 ? -1 : (cmp(na.value, nb.value) > 0 ? 1 : 0);
    case Kind::product:
    case Kind::sum: {
      std::size_t n = std::min(na.args.size(), nb.args.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(na.args[i], nb.args[i])) return c;
      }
      return three_way(na.args.size(), nb.args.size());
    }
  }
  return 0;
}

std::string_view fn_name(Fn fn) {
  switch (fn) {
    case Fn::exp: return "exp";
    case Fn::ln: return "ln";
    case Fn::sin: return "sin";
    case Fn::cos: return "cos";
    case Fn::abs: return "abs";
  }
  return "?";
}

std::string_view jet_name(Jet j) {
  switch (j) {
    case Jet::x: return "x";
    case Jet::xdot: return "x'";
    case Jet::xddot: return "x''";
    case Jet::xdddot: return "x'''";
    case Jet::t: return "t";
  }
  return "?";
}

namespace sym {
Expr x() { return Expr::jet(Jet::x); }
Expr xdot() { return Expr::jet(Jet::xdot); }
Expr xddot() { return Expr::jet(Jet::xddot); }
Expr xdddot() { return Expr::jet(Jet::xdddot); }
Expr t() { return Expr::jet(Jet::t); }
}  // namespace sym

// ---------------------------------------------------------------------------
// Term and factor decomposition

std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.kind() == Kind::constant) return {term.value(), one_expr()};
  if (term.kind() == Kind::product) {
    auto ch = term.children();
    if (ch.front().kind() == Kind::constant) {
      if (ch.size() == 2) return {ch.front().value(), ch[1]};
      return {ch.front().value(),
              ExprFactory::nary(Kind::product, std::vector<Expr>(ch.begin() + 1, ch.end()))};
    }
  }
  return {Rational(1), term};
}

std::vector<Expr> terms_of(const Expr& e) {
  if (e.is_zero()) return {};
  if (e.kind() == Kind::sum) return {e.children().begin(), e.children().end()};
  return {e};
}

std::vector<Expr> factors_of(const Expr& e) {
  if (e.kind() == Kind::product) return {e.children().begin(), e.children().end()};
  return {e};
}

std::pair<Expr, Rational> as_power(const Expr& factor) {
  if (factor.kind() == Kind::power) return {factor.base(), factor.exponent()};
  return {factor, Rational(1)};
}

namespace {

// Coefficient-1 monomial times a rational coefficient.
Expr make_term(const Rational& coef, const Expr& monomial) {
  if (coef == 0) return zero_expr();
  if (monomial.is_one()) return Expr(coef);
  if (coef == 1) return monomial;
  std::vector<Expr> ch{Expr(coef)};
  if (monomial.kind() == Kind::product) {
    ch.insert(ch.end(), monomial.children().begin(), monomial.children().end());
  } else {
    ch.push_back(monomial);
  }
  return ExprFactory::nary(Kind::product, std::move(ch));
}

// Splits a canonical sum s into c * s' where the first term of s' has
// coefficient 1.
std::pair<Rational, Expr> primitive(const Expr& s) {
  assert(s.kind() == Kind::sum);
  // Scale so the first non-constant term has coefficient 1.
  const Expr& lead = s.children().front().is_constant() ? s.children()[1] : s.children().front();
  Rational c = split_coefficient(lead).first;
  if (c == 1) return {c, s};
  std::vector<Expr> scaled;
  scaled.reserve(s.children().size());
  for (const auto& term : s.children()) {
    auto [k, m] = split_coefficient(term);
    Rational q = k / c;
    scaled.push_back(make_term(q, m));
  }
  return {c, ExprFactory::nary(Kind::sum, std::move(scaled))};
}

int compare_factor(const Expr& a, const Expr& b) {
  auto [ba, qa] = as_power(a);
  auto [bb, qb] = as_power(b);
  if (int c = compare(ba, bb)) return c;
  return cmp(qa, qb) < 0 ? -1 : (cmp(qa, qb) > 0 ? 1 : 0);
}

Rational leading_coefficient(const Expr& e) {
  auto ts = terms_of(e);
  if (ts.empty()) return Rational(0);
  return split_coefficient(ts.front()).first;
}

Expr make_exp(const Expr& arg);

}  // namespace

// ---------------------------------------------------------------------------
// Builders

Expr add(std::vector<Expr> terms) {
  Rational constant = 0;
  std::vector<std::pair<Expr, Rational>> acc;
  std::vector<Expr> stack = std::move(terms);
  std::vector<Expr> flat;
  flat.reserve(stack.size());
  for (auto& t : stack) {
    if (t.kind() == Kind::sum) {
      flat.insert(flat.end(), t.children().begin(), t.children().end());
    } else {
      flat.push_back(std::move(t));
    }
  }
  acc.reserve(flat.size());
  for (const auto& t : flat) {
    if (t.kind() == Kind::constant) {
      constant += t.value();
    } else {
      auto [c, m] = split_coefficient(t);
      acc.emplace_back(std::move(m), std::move(c));
    }
  }
  std::sort(acc.begin(), acc.end(),
            [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  std::vector<Expr> out;
  out.reserve(acc.size() + 1);
  if (constant != 0) out.push_back(Expr(constant));
  for (std::size_t i = 0; i < acc.size();) {
    std::size_t j = i + 1;
    Rational c = acc[i].second;
    while (j < acc.size() && acc[j].first == acc[i].first) {
      c += acc[j].second;
      ++j;
    }
    if (c != 0) out.push_back(make_term(c, acc[i].first));
    i = j;
  }
  if (out.empty()) return zero_expr();
  if (out.size() == 1) return out.front();
  return ExprFactory::nary(Kind::sum, std::move(out));
}

namespace {

struct FactorAccumulator {
  Rational coef = 1;
  std::map<Expr, Rational, ExprLess> powers;
  std::vector<Expr> exp_args;

  void push(const Expr& f, const Rational& q = Rational(1)) {
    switch (f.kind()) {
      case Kind::constant: {
        if (auto v = pow_exact(f.value(), q)) {
          coef *= *v;
        } else {
          powers[f] += q;
        }
        return;
      }
      case Kind::product:
        if (!is_integer(q)) {
          powers[f] += q;
          return;
        }
        for (const auto& c : f.children()) push(c, q);
        return;
      case Kind::power: {
        Rational p = f.exponent();
        if (f.base().kind() == Kind::power || !is_integer(q)) {
          powers[f] += q;
          return;
        }
        push(f.base(), p * q);
        return;
      }
      case Kind::apply:
        if (f.fn() == Fn::exp) {
          exp_args.push_back(q == 1 ? f.arg() : mul({Expr(q), f.arg()}));
          return;
        }
        powers[f] += q;
        return;
      case Kind::sum:
        if (is_integer(q)) {
          auto [c, s] = primitive(f);
          coef *= pow_int(c, *to_long(q));
          powers[s] += q;
        } else {
          powers[f] += q;
        }
        return;
      default:
        powers[f] += q;
        return;
    }
  }
};

Expr distribute(const Expr& a, const Expr& b) {
  auto ta = terms_of(a);
  auto tb = terms_of(b);
  std::vector<Expr> out;
  out.reserve(ta.size() * tb.size());
  for (const auto& x : ta) {
    for (const auto& y : tb) out.push_back(mul({x, y}));
  }
  return add(std::move(out));
}

}  // namespace

Expr mul(std::vector<Expr> factors) {
  FactorAccumulator acc;
  for (const auto& f : factors) {
    acc.push(f);
    if (acc.coef == 0) return zero_expr();
  }
  std::optional<Expr> exp_factor;
  if (!acc.exp_args.empty()) {
    Expr ex = make_exp(add(acc.exp_args));
    for (const auto& f : factors_of(ex)) {
      if (f.kind() == Kind::apply && f.fn() == Fn::exp) {
        exp_factor = f;
      } else {
        acc.push(f);
      }
    }
  }
  if (acc.coef == 0) return zero_expr();

  std::vector<Expr> out;
  std::vector<std::pair<Expr, long>> to_expand;
  for (const auto& [base, q] : acc.powers) {
    if (q == 0) continue;
    if (base.kind() == Kind::constant) {
      if (auto v = pow_exact(base.value(), q)) {
        acc.coef *= *v;
        continue;
      }
    }
    if (base.kind() == Kind::sum && is_integer(q) && q > 0) {
      to_expand.emplace_back(base, *to_long(q));
      continue;
    }
    out.push_back(ExprFactory::power_node(base, q));
  }
  if (exp_factor) out.push_back(*exp_factor);
  std::sort(out.begin(), out.end(),
            [](const Expr& a, const Expr& b) { return compare_factor(a, b) < 0; });

  Expr monomial;
  if (out.empty()) {
    monomial = Expr(acc.coef);
  } else if (out.size() == 1 && acc.coef == 1) {
    monomial = out.front();
  } else {
    if (acc.coef != 1) out.insert(out.begin(), Expr(acc.coef));
    monomial = ExprFactory::nary(Kind::product, std::move(out));
  }
  for (const auto& [s, k] : to_expand) {
    for (long i = 0; i < k; ++i) monomial = distribute(monomial, s);
  }
  return monomial;
}

Expr pow(const Expr& base, const Rational& q) {
  if (q == 0) return one_expr();
  if (q == 1) return base;
  switch (base.kind()) {
    case Kind::constant: {
      if (base.value() == 0 && q < 0) {
        throw Error(ErrorCode::division_guard, "division by exact zero");
      }
      if (auto v = pow_exact(base.value(), q)) return Expr(*v);
      return ExprFactory::power_node(base, q);
    }
    case Kind::product:
      if (is_integer(q)) return mul({ExprFactory::power_node(base, q)});
      return ExprFactory::power_node(base, q);
    case Kind::power:
      if (is_integer(q)) return pow(base.base(), base.exponent() * q);
      return ExprFactory::power_node(base, q);
    case Kind::apply:
      if (base.fn() == Fn::exp) return make_exp(mul({Expr(q), base.arg()}));
      return ExprFactory::power_node(base, q);
    case Kind::sum:
      if (is_integer(q)) {
        FactorAccumulator acc;
        acc.push(base, q);
        auto& [s, k] = *acc.powers.begin();
        if (k > 0) {
          Expr r = Expr(acc.coef);
          for (long i = 0; i < *to_long(k); ++i) r = distribute(r, s);
          return r;
        }
        return mul({Expr(acc.coef), ExprFactory::power_node(s, k)});
      }
      return ExprFactory::power_node(base, q);
    default:
      return ExprFactory::power_node(base, q);
  }
}

namespace {

Expr make_exp(const Expr& arg) {
  if (arg.is_zero()) return one_expr();
  std::vector<Expr> rest;
  std::vector<Expr> extracted;
  for (const auto& term : terms_of(arg)) {
    auto [c, m] = split_coefficient(term);
    if (m.kind() == Kind::apply && m.fn() == Fn::ln) {
      extracted.push_back(pow(m.arg(), c));
    } else {
      rest.push_back(term);
    }
  }
  if (extracted.empty()) return ExprFactory::apply_node(Fn::exp, arg);
  Expr r = add(std::move(rest));
  if (!r.is_zero()) extracted.push_back(ExprFactory::apply_node(Fn::exp, r));
  return mul(std::move(extracted));
}

}  // namespace

Expr apply(Fn fn, const Expr& a) {
  switch (fn) {
    case Fn::exp:
      return make_exp(a);
    case Fn::ln:
      if (a.is_one()) return zero_expr();
      if (a.kind() == Kind::apply && a.fn() == Fn::exp) return a.arg();
      return ExprFactory::apply_node(Fn::ln, a);
    case Fn::sin:
      if (a.is_zero()) return zero_expr();
      if (leading_coefficient(a) < 0) return -ExprFactory::apply_node(Fn::sin, -a);
      return ExprFactory::apply_node(Fn::sin, a);
    case Fn::cos:
      if (a.is_zero()) return one_expr();
      if (leading_coefficient(a) < 0) return ExprFactory::apply_node(Fn::cos, -a);
      return ExprFactory::apply_node(Fn::cos, a);
    case Fn::abs:
      if (a.is_constant()) return Expr(Rational(::abs(a.value())));
      if (a.kind() == Kind::apply && a.fn() == Fn::exp) return a;
      if (a.kind() == Kind::apply && a.fn() == Fn::abs) return a;
      if (leading_coefficient(a) < 0) return ExprFactory::apply_node(Fn::abs, -a);
      return ExprFactory::apply_node(Fn::abs, a);
  }
  return a;
}

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return add({a, mul({Expr(-1), b})}); }
Expr operator-(const Expr& a) { return mul({Expr(-1), a}); }
Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return mul({a, pow(b, Rational(-1))}); }
Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr canonicalize(const Expr& e) {
  switch (e.kind()) {
    case Kind::constant:
    case Kind::jet:
    case Kind::param:
    case Kind::func:
      return e;
    case Kind::apply:
      return apply(e.fn(), canonicalize(e.arg()));
    case Kind::power:
      return pow(canonicalize(e.base()), e.exponent());
    case Kind::product: {
      std::vector<Expr> ch;
      for (const auto& c : e.children()) ch.push_back(canonicalize(c));
      return mul(std::move(ch));
    }
    case Kind::sum: {
      std::vector<Expr> ch;
      for (const auto& c : e.children()) ch.push_back(canonicalize(c));
      return add(std::move(ch));
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Queries

bool depends_on(const Expr& e, const Expr& symbol) {
  switch (e.kind()) {
    case Kind::constant:
      return false;
    case Kind::jet:
      return symbol.kind() == Kind::jet && e.jet_var() == symbol.jet_var();
    case Kind::param:
      return symbol.kind() == Kind::param && e.name() == symbol.name();
    case Kind::func:
      return symbol.kind() == Kind::jet && symbol.jet_var() == Jet::t;
    default:
      for (const auto& c : e.children()) {
        if (depends_on(c, symbol)) return true;
      }
      return false;
  }
}

bool contains_jet(const Expr& e, Jet j) {
  if (e.kind() == Kind::jet) return e.jet_var() == j;
  switch (e.kind()) {
    case Kind::constant:
    case Kind::param:
    case Kind::func:
      return false;
    default:
      for (const auto& c : e.children()) {
        if (contains_jet(c, j)) return true;
      }
      return false;
  }
}

bool contains_kind(const Expr& e, Kind k) {
  if (e.kind() == k) return true;
  switch (e.kind()) {
    case Kind::constant:
    case Kind::jet:
    case Kind::param:
    case Kind::func:
      return false;
    default:
      for (const auto& c : e.children()) {
        if (contains_kind(c, k)) return true;
      }
      return false;
  }
}

SymbolSet symbols_of(const Expr& e) {
  SymbolSet out;
  std::function<void(const Expr&)> rec = [&](const Expr& n) {
    switch (n.kind()) {
      case Kind::constant:
        return;
      case Kind::jet:
        out.jets.insert(n.jet_var());
        return;
      case Kind::param:
        out.params.insert(n.name());
        return;
      case Kind::func:
        out.functions.insert(n.name());
        return;
      default:
        for (const auto& c : n.children()) rec(c);
    }
  };
  rec(e);
  return out;
}

int jet_order(const Expr& e) {
  auto s = symbols_of(e);
  int order = -1;
  for (Jet j : s.jets) {
    if (j != Jet::t) order = std::max(order, static_cast<int>(j));
  }
  return order;
}

}  // namespace nullag
