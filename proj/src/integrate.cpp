#include "nullag/integrate.hpp"

#include "nullag/diff.hpp"
#include "nullag/errors.hpp"
#include "nullag/print.hpp"

#include <optional>

namespace nullag {

std::optional<std::pair<Expr, Expr>> linear_in(const Expr& e, const Expr& v) {
  Expr a = partial(e, v);
  if (a.is_zero() || depends_on(a, v)) return std::nullopt;
  Expr b = e - a * v;
  if (depends_on(b, v)) return std::nullopt;
  return std::make_pair(a, b);
}

namespace {

struct Piece {
  Expr value;    // integrated part
  Expr leftover; // integrand still to integrate (0 when done)
};

[[noreturn]] void unsupported(const Expr& term) {
  throw Error(ErrorCode::antiderivative_unsupported, "no antiderivative in the supported class for " + to_string(term));
}

class Integrator {
 public:
  explicit Integrator(Jet var) : var_(var), v_(Expr::jet(var)) {}

  Antiderivative run(const Expr& e) {
    Expr value;
    Expr pending = e;
    for (int round = 0; round < 8 && !pending.is_zero(); ++round) {
      std::vector<Expr> leftovers;
      std::vector<Expr> stuck;
      for (const auto& term : terms_of(pending)) {
        auto piece = term_integral(term);
        if (!piece) {
          stuck.push_back(term);
          continue;
        }
        value += piece->value;
        leftovers.push_back(piece->leftover);
      }
      Expr next = add(std::move(leftovers)) + add(stuck);
      if (!stuck.empty() && next == add(std::move(stuck))) unsupported(next);
      pending = next;
    }
    if (!pending.is_zero()) unsupported(pending);
    return {value, guards_};
  }

 private:
  bool free(const Expr& e) const { return !depends_on(e, v_); }

  // Integral of one term, or nullopt when the term has no closed form here.
  std::optional<Piece> term_integral(const Expr& term) {
    std::vector<Expr> coef;
    Rational n = 0;  // power of v
    std::vector<Expr> special;
    for (const auto& f : factors_of(term)) {
      if (free(f)) {
        coef.push_back(f);
        continue;
      }
      auto [base, q] = as_power(f);
      if (base == v_) {
        n += q;
      } else {
        special.push_back(f);
      }
    }
    Expr c = mul(coef);
    if (special.empty()) {
      if (n == -1) {
        guards_.push_back({v_, GuardKind::positive});
        return Piece{c * ln(v_), Expr(0)};
      }
      return Piece{c * pow(v_, n + 1) / Expr(n + 1), Expr(0)};
    }
    if (special.size() != 1) return std::nullopt;
    const Expr& s = special.front();

    if (s.kind() == Kind::func) {
      // t^n f^(k): by parts, lowering the order of f.
      if (var_ != Jet::t || s.order() == 0 || !is_integer(n) || n < 0) return std::nullopt;
      Expr lower = Expr::func(s.name(), s.order() - 1);
      Expr value = c * pow(v_, n) * lower;
      Expr leftover = n == 0 ? Expr(0) : -(c * Expr(n) * pow(v_, n - 1) * lower);
      return Piece{value, leftover};
    }

    if (s.kind() == Kind::apply && s.fn() == Fn::exp) {
      if (auto lin = linear_in(s.arg(), v_); lin && is_integer(n) && n >= 0) {
        return Piece{c * exp_poly(*to_long(n), lin->first, s), Expr(0)};
      }
      // exp(c ln v + b): v^n exp(c ln v + b) integrates to v^(n+1) exp(..)/(n+1+c).
      std::vector<Expr> rest;
      Expr k;
      for (const auto& at : terms_of(s.arg())) {
        auto fs = factors_of(at);
        bool is_log_term = false;
        std::vector<Expr> kf;
        for (const auto& f : fs) {
          if (f.kind() == Kind::apply && f.fn() == Fn::ln && f.arg() == v_) {
            is_log_term = true;
          } else {
            kf.push_back(f);
          }
        }
        Expr kt = mul(kf);
        if (is_log_term && free(kt)) {
          k += kt;
        } else {
          rest.push_back(at);
        }
      }
      if (!k.is_zero() && free(add(rest))) {
        Expr denom = k + Expr(n + 1);
        if (denom.is_zero()) return std::nullopt;
        guards_.push_back({denom, GuardKind::nonzero});
        guards_.push_back({v_, GuardKind::positive});
        return Piece{c * pow(v_, n + 1) * s / denom, Expr(0)};
      }
      return std::nullopt;
    }

    if (s.kind() == Kind::apply && (s.fn() == Fn::sin || s.fn() == Fn::cos)) {
      auto lin = linear_in(s.arg(), v_);
      if (!lin || !is_integer(n) || n < 0) return std::nullopt;
      return Piece{c * trig_poly(*to_long(n), lin->first, s.arg(), s.fn() == Fn::sin), Expr(0)};
    }

    if (s.kind() == Kind::power && s.base().kind() == Kind::sum && is_integer(s.exponent())) {
      auto lin = linear_in(s.base(), v_);
      if (!lin || !is_integer(n) || n < 0) return std::nullopt;
      return Piece{c * linear_power(*to_long(n), lin->first, lin->second, s.base(), *to_long(s.exponent())),
                   Expr(0)};
    }
    return std::nullopt;
  }

  // Integral of v^n e^(a v + b), with e the exp factor.
  Expr exp_poly(long n, const Expr& a, const Expr& e) {
    std::vector<Expr> out;
    Rational falling = 1;
    for (long j = 0; j <= n; ++j) {
      Rational sign = (j % 2 == 0) ? 1 : -1;
      out.push_back(Expr(sign * falling) * pow(v_, Rational(n - j)) * pow(a, Rational(-(j + 1))));
      falling *= n - j;
    }
    return e * add(std::move(out));
  }

  // Integral of v^n sin(u) or v^n cos(u), u = a v + b.
  Expr trig_poly(long n, const Expr& a, const Expr& u, bool is_sin) {
    // I_s(n) = -v^n cos/a + (n/a) I_c(n-1);  I_c(n) = v^n sin/a - (n/a) I_s(n-1).
    if (n == 0) return is_sin ? -cos(u) / a : sin(u) / a;
    Expr vn = pow(v_, Rational(n));
    Expr k = Expr(n) / a;
    if (is_sin) return -(vn * cos(u)) / a + k * trig_poly(n - 1, a, u, false);
    return vn * sin(u) / a - k * trig_poly(n - 1, a, u, true);
  }

  // Integral of v^n w^m with w = a v + b, via v = (w - b)/a.
  Expr linear_power(long n, const Expr& a, const Expr& b, const Expr& w, long m) {
    std::vector<Expr> out;
    Expr scale = pow(a, Rational(-(n + 1)));
    for (long j = 0; j <= n; ++j) {
      Expr cj = Expr(binomial(n, j)) * pow(-b, Rational(n - j));
      long p = j + m;
      if (p == -1) {
        guards_.push_back({w, GuardKind::positive});
        out.push_back(cj * ln(w));
      } else {
        out.push_back(cj * pow(w, Rational(p + 1)) / Expr(p + 1));
      }
    }
    return scale * add(std::move(out));
  }

  Jet var_;
  Expr v_;
  std::vector<Guard> guards_;
};

}  // namespace

Antiderivative antiderivative(const Expr& e, Jet var) {
  return Integrator(var).run(e);
}

}  // namespace nullag
