#include "nullag/parse.hpp"

#include "nullag/errors.hpp"

#include <cctype>
#include <string>

namespace nullag {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(ErrorCode::syntax, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(ErrorCode code, const std::string& msg) const { fail_at(code, msg, pos_); }
  [[noreturn]] void fail_at(ErrorCode code, const std::string& msg, std::size_t at) const {
    throw Error(code, msg, at);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(ErrorCode::syntax, std::string("expected '") + c + "' but input ended");
      fail(ErrorCode::syntax, std::string("expected '") + c + "'");
    }
  }

  // Primes directly after a token, without whitespace.
  int primes() {
    int n = 0;
    while (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      ++n;
    }
    return n;
  }

  void reject_primes(const char* what) {
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      fail(ErrorCode::malformed_derivative, std::string("derivative marker not allowed after ") + what);
    }
  }

  Expr expr() { return expr_factored().value(); }

  // A product kept as sign * prod base_i^q_i. Division and powers act on
  // each base so 1/(a*(b + c)^2) inverts the factors without expanding them.
  struct Factored {
    int sign = 1;
    std::vector<std::pair<Expr, Rational>> factors;

    Expr value() const {
      std::vector<Expr> fs;
      fs.reserve(factors.size() + 1);
      fs.emplace_back(sign);
      for (const auto& [b, e] : factors) fs.push_back(pow(b, e));
      return mul(std::move(fs));
    }
    bool is_zero() const {
      for (const auto& [b, e] : factors) {
        if (b.is_zero()) return true;
      }
      return false;
    }
  };

  // A single-term group returns its factor list; anything else a single base.
  Factored expr_factored() {
    Factored first = term();
    std::vector<Expr> terms;
    bool single = true;
    for (;;) {
      if (accept('+')) {
        if (single) terms.push_back(first.value());
        single = false;
        terms.push_back(term().value());
      } else if (accept('-')) {
        if (single) terms.push_back(first.value());
        single = false;
        terms.push_back(-term().value());
      } else {
        break;
      }
    }
    if (single) return first;
    return {1, {{add(std::move(terms)), Rational(1)}}};
  }

  Factored term() {
    Factored acc = unary();
    for (;;) {
      if (accept('*')) {
        Factored f = unary();
        acc.sign *= f.sign;
        acc.factors.insert(acc.factors.end(), f.factors.begin(), f.factors.end());
      } else if (accept('/')) {
        std::size_t at = pos_;
        Factored d = unary();
        if (d.is_zero()) fail_at(ErrorCode::syntax, "division by zero", at);
        acc.sign *= d.sign;
        for (auto& [b, e] : d.factors) acc.factors.emplace_back(b, -e);
      } else {
        return acc;
      }
    }
  }

  Factored unary() {
    if (accept('-')) {
      Factored p = unary();
      p.sign = -p.sign;
      return p;
    }
    if (accept('+')) return unary();
    return factor();
  }

  Factored factor() {
    Factored b = base();
    if (accept('^')) {
      std::size_t at = pos_;
      Expr ex = exponent();
      if (!ex.is_constant()) fail_at(ErrorCode::syntax, "exponent must be a rational constant", at);
      if (b.is_zero() && ex.value() < 0) fail_at(ErrorCode::syntax, "division by zero", at);
      if (b.sign < 0) return {1, {{b.value(), ex.value()}}};
      for (auto& [base, e] : b.factors) e *= ex.value();
    }
    return b;
  }

  Expr exponent() {
    if (accept('-')) return -exponent();
    if (accept('+')) return exponent();
    skip_ws();
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      return number();
    }
    fail(ErrorCode::syntax, "expected rational exponent");
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ + 1 < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (text_[pos_] == '+' || text_[pos_] == '-') ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    auto q = parse_rational(std::string(text_.substr(start, pos_ - start)));
    if (!q) fail_at(ErrorCode::syntax, "malformed number", start);
    reject_primes("a number");
    return Expr(*q);
  }

  static std::optional<Fn> function_named(std::string_view name) {
    if (name == "exp") return Fn::exp;
    if (name == "ln") return Fn::ln;
    if (name == "sin") return Fn::sin;
    if (name == "cos") return Fn::cos;
    if (name == "abs") return Fn::abs;
    return std::nullopt;
  }

  Factored base() {
    skip_ws();
    if (pos_ >= text_.size()) fail(ErrorCode::syntax, "unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Factored e = expr_factored();
      expect(')');
      reject_primes("a parenthesized expression");
      return e;
    }
    return {1, {{atom(), Rational(1)}}};
  }

  Expr atom() {
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (!is_ident_start(c)) fail(ErrorCode::syntax, std::string("unexpected '") + c + "'");

    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));

    if (name == "x") {
      int k = primes();
      if (k > 3) fail_at(ErrorCode::malformed_derivative, "at most three primes on x", start);
      return Expr::jet(static_cast<Jet>(k));
    }
    if (name == "t") {
      reject_primes("t");
      return sym::t();
    }

    std::size_t after_name = pos_;
    skip_ws();
    bool call = pos_ < text_.size() && text_[pos_] == '(';
    if (!call) {
      pos_ = after_name;
      reject_primes("a named constant");
      return Expr::param(name);
    }
    ++pos_;
    if (auto fn = function_named(name)) {
      Expr a = expr();
      expect(')');
      reject_primes("an elementary function");
      return apply(*fn, a);
    }
    // Opaque function: the argument must be exactly t.
    skip_ws();
    std::size_t arg_start = pos_;
    bool is_t = pos_ < text_.size() && text_[pos_] == 't' &&
                (pos_ + 1 >= text_.size() || !is_ident_char(text_[pos_ + 1]));
    if (is_t) {
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
        int k = primes();
        return Expr::func(name, k);
      }
    }
    fail_at(ErrorCode::unknown_function,
            "unknown function '" + name + "' (opaque functions take exactly the argument t)", arg_start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace nullag
