#include "nullag/diff.hpp"

#include "nullag/errors.hpp"

#include <utility>

namespace nullag {

Expr partial(const Expr& e, const Expr& symbol) {
  if (symbol.kind() != Kind::jet && symbol.kind() != Kind::param) {
    throw Error(ErrorCode::invalid_argument, "partial derivative needs a jet symbol or named constant");
  }
  switch (e.kind()) {
    case Kind::constant:
      return Expr(0);
    case Kind::jet:
      return (symbol.kind() == Kind::jet && symbol.jet_var() == e.jet_var()) ? Expr(1) : Expr(0);
    case Kind::param:
      return (symbol.kind() == Kind::param && symbol.name() == e.name()) ? Expr(1) : Expr(0);
    case Kind::func:
      if (symbol.kind() == Kind::jet && symbol.jet_var() == Jet::t) {
        return Expr::func(e.name(), e.order() + 1);
      }
      return Expr(0);
    case Kind::sum: {
      std::vector<Expr> out;
      for (const auto& c : e.children()) out.push_back(partial(c, symbol));
      return add(std::move(out));
    }
    case Kind::product: {
      auto ch = e.children();
      std::vector<Expr> out;
      for (std::size_t i = 0; i < ch.size(); ++i) {
        if (!depends_on(ch[i], symbol)) continue;
        std::vector<Expr> fs(ch.begin(), ch.end());
        fs[i] = partial(ch[i], symbol);
        out.push_back(mul(std::move(fs)));
      }
      return add(std::move(out));
    }
    case Kind::power: {
      if (!depends_on(e.base(), symbol)) return Expr(0);
      const Rational& q = e.exponent();
      return mul({Expr(q), pow(e.base(), q - 1), partial(e.base(), symbol)});
    }
    case Kind::apply: {
      const Expr& u = e.arg();
      if (!depends_on(u, symbol)) return Expr(0);
      Expr du = partial(u, symbol);
      switch (e.fn()) {
        case Fn::exp: return e * du;
        case Fn::ln: return du / u;
        case Fn::sin: return cos(u) * du;
        case Fn::cos: return -(sin(u) * du);
        case Fn::abs: return mul({e, pow(u, Rational(-1)), du});
      }
    }
  }
  return Expr(0);
}

Expr partial(const Expr& e, Jet j) { return partial(e, Expr::jet(j)); }

Expr partial_n(const Expr& e, const Expr& symbol, int n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "negative derivative order");
  Expr r = e;
  for (int i = 0; i < n && !r.is_zero(); ++i) r = partial(r, symbol);
  return r;
}

Expr total_dt(const Expr& e) {
  if (contains_jet(e, Jet::xdddot)) {
    throw Error(ErrorCode::invalid_argument, "total_dt: expression already contains x'''");
  }
  return add({partial(e, Jet::t), sym::xdot() * partial(e, Jet::x),
              sym::xddot() * partial(e, Jet::xdot), sym::xdddot() * partial(e, Jet::xddot)});
}

namespace {

template <class Leaf>
Expr rebuild(const Expr& e, Leaf&& leaf) {
  switch (e.kind()) {
    case Kind::constant:
      return e;
    case Kind::jet:
    case Kind::param:
    case Kind::func:
      return leaf(e);
    case Kind::apply:
      return apply(e.fn(), rebuild(e.arg(), leaf));
    case Kind::power:
      return pow(rebuild(e.base(), leaf), e.exponent());
    case Kind::product: {
      std::vector<Expr> ch;
      for (const auto& c : e.children()) ch.push_back(rebuild(c, leaf));
      return mul(std::move(ch));
    }
    case Kind::sum: {
      std::vector<Expr> ch;
      for (const auto& c : e.children()) ch.push_back(rebuild(c, leaf));
      return add(std::move(ch));
    }
  }
  return e;
}

}  // namespace

Expr substitute(const Expr& e, const std::map<Expr, Expr, ExprLess>& replacements) {
  if (replacements.empty()) return e;
  return rebuild(e, [&](const Expr& atom) {
    auto it = replacements.find(atom);
    return it == replacements.end() ? atom : it->second;
  });
}

Expr substitute_functions(const Expr& e, const std::map<std::string, Expr>& instantiations) {
  if (instantiations.empty()) return e;
  std::map<std::pair<std::string, int>, Expr> cache;
  return rebuild(e, [&](const Expr& atom) -> Expr {
    if (atom.kind() != Kind::func) return atom;
    auto it = instantiations.find(atom.name());
    if (it == instantiations.end()) return atom;
    auto key = std::make_pair(atom.name(), atom.order());
    if (auto c = cache.find(key); c != cache.end()) return c->second;
    Expr d = partial_n(it->second, sym::t(), atom.order());
    cache.emplace(key, d);
    return d;
  });
}

}  // namespace nullag
