#include "nullag/print.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace nullag {

namespace {

std::string print_expr(const Expr& e);

bool needs_parens_as_base(const Expr& b) {
  switch (b.kind()) {
    case Kind::sum:
    case Kind::product:
    case Kind::power:
      return true;
    case Kind::constant:
      return b.value() < 0 || !is_integer(b.value());
    default:
      return false;
  }
}

std::string print_atom(const Expr& e) {
  switch (e.kind()) {
    case Kind::constant:
      return to_string(e.value());
    case Kind::jet:
      return std::string(jet_name(e.jet_var()));
    case Kind::param:
      return e.name();
    case Kind::func:
      return e.name() + "(t)" + std::string(static_cast<std::size_t>(e.order()), '\'');
    case Kind::apply:
      return std::string(fn_name(e.fn())) + "(" + print_expr(e.arg()) + ")";
    default:
      return print_expr(e);
  }
}

std::string print_factor(const Expr& base, const Rational& q) {
  std::string b = print_atom(base);
  if (needs_parens_as_base(base)) b = "(" + b + ")";
  if (q == 1) return b;
  if (is_integer(q)) return b + "^" + to_string(q);
  return b + "^(" + to_string(q) + ")";
}

// c >= 0, monomial has coefficient 1.
std::string print_term(const Rational& c, const Expr& monomial) {
  std::vector<std::string> num;
  std::vector<std::string> den;
  if (c.get_num() != 1 || monomial.is_one()) num.push_back(c.get_num().get_str());
  if (c.get_den() != 1) den.push_back(c.get_den().get_str());
  if (!monomial.is_one()) {
    for (const auto& f : factors_of(monomial)) {
      auto [b, q] = as_power(f);
      if (q > 0) {
        num.push_back(print_factor(b, q));
      } else {
        den.push_back(print_factor(b, Rational(-q)));
      }
    }
  }
  auto join = [](const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += "*";
      s += parts[i];
    }
    return s;
  };
  std::string out = num.empty() ? "1" : join(num);
  if (den.empty()) return out;
  if (den.size() == 1) return out + "/" + den.front();
  return out + "/(" + join(den) + ")";
}

std::string print_expr(const Expr& e) {
  auto terms = terms_of(e);
  if (terms.empty()) return "0";
  // Constant term last reads more naturally.
  if (terms.size() > 1 && terms.front().is_constant()) {
    std::rotate(terms.begin(), terms.begin() + 1, terms.end());
  }
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto [c, m] = split_coefficient(terms[i]);
    bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (i == 0) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += print_term(mag, m);
  }
  return out;
}

}  // namespace

std::string to_string(const Expr& e) { return print_expr(e); }

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << print_expr(e); }

}  // namespace nullag
