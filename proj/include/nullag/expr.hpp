#pragma once

#include "nullag/number.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace nullag {

/// Jet coordinates: position and its first three time derivatives, plus time.
enum class Jet : std::uint8_t { x, xdot, xddot, xdddot, t };

/// Elementary functions the kernel understands.
enum class Fn : std::uint8_t { exp, ln, sin, cos, abs };

/// Node kinds in canonical form. Division is not a node: a/b is stored as
/// a * b^(-1).
enum class Kind : std::uint8_t { constant, jet, param, func, apply, power, product, sum };

struct Node;

/// Immutable, canonical expression tree.
///
/// Every constructor and operator returns a canonical tree: sums of monomials
/// with merged rational coefficients, factors with merged rational exponents,
/// a deterministic total order on atoms, exp factors merged into a single
/// exp, and positive integer powers of sums expanded. Two expressions that
/// canonicalize to the same tree compare equal with `==`.
///
/// Atoms:
///  - jet symbols x, x', x'', x''', t;
///  - named constants (`param`), e.g. a0, B0, beta0;
///  - opaque time functions f(t) with a derivative order (`func`).
class Expr {
 public:
  Expr();  // zero
  Expr(int value);  // NOLINT(google-explicit-constructor)
  Expr(long value);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)

  static Expr jet(Jet j);
  static Expr param(const std::string& name);
  /// order-th time derivative of the opaque function name(t).
  static Expr func(const std::string& name, int order = 0);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::constant; }
  bool is_zero() const;
  bool is_one() const;

  const Rational& value() const;     // constant
  Jet jet_var() const;               // jet
  const std::string& name() const;   // param, func
  int order() const;                 // func
  Fn fn() const;                     // apply
  const Rational& exponent() const;  // power
  const Expr& base() const;          // power
  const Expr& arg() const;           // apply
  std::span<const Expr> children() const;  // sum, product

  std::size_t hash() const;
  /// Number of nodes in the tree (shared subtrees counted each time).
  std::size_t size() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend struct ExprFactory;
};

/// Deterministic total order used for canonical sorting.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

// Builders. All of them canonicalize.
Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, const Rational& exponent);
Expr apply(Fn fn, const Expr& arg);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);

inline Expr exp(const Expr& e) { return apply(Fn::exp, e); }
inline Expr ln(const Expr& e) { return apply(Fn::ln, e); }
inline Expr sin(const Expr& e) { return apply(Fn::sin, e); }
inline Expr cos(const Expr& e) { return apply(Fn::cos, e); }
inline Expr abs(const Expr& e) { return apply(Fn::abs, e); }

/// Rebuilds the tree through the builders. Canonical input is returned
/// structurally unchanged.
Expr canonicalize(const Expr& e);

/// Rational coefficient and the remaining monomial (coefficient 1) of a term.
std::pair<Rational, Expr> split_coefficient(const Expr& term);

/// Terms of a sum, or the expression itself as a single term; [] for zero.
std::vector<Expr> terms_of(const Expr& e);

/// Factors of a product (including a leading constant), or {e}.
std::vector<Expr> factors_of(const Expr& e);

/// Base and exponent of a factor; non-powers have exponent 1.
std::pair<Expr, Rational> as_power(const Expr& factor);

std::string_view fn_name(Fn fn);
std::string_view jet_name(Jet j);

// Convenience atoms.
namespace sym {
Expr x();
Expr xdot();
Expr xddot();
Expr xdddot();
Expr t();
}  // namespace sym

// Structural queries.

/// True if the jet or named constant `symbol` occurs in e. For t, opaque
/// functions count as depending on t.
bool depends_on(const Expr& e, const Expr& symbol);
bool contains_jet(const Expr& e, Jet j);
bool contains_kind(const Expr& e, Kind k);

struct SymbolSet {
  std::set<Jet> jets;
  std::set<std::string> params;
  std::set<std::string> functions;  // opaque function names, any order
};
SymbolSet symbols_of(const Expr& e);

/// Highest jet order present: -1 when only t/constants, 0 for x, 1 for x'...
int jet_order(const Expr& e);

}  // namespace nullag
