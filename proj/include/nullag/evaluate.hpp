#pragma once

#include "nullag/expr.hpp"
#include "nullag/point.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace nullag {

/// Margin used for every denominator / logarithm guard.
inline constexpr double kGuardEpsilon = 1e-6;

using Scalar = std::variant<double, Rational>;
double to_double(const Scalar& s);

/// Values for jet symbols and named constants plus concrete instantiations
/// (expressions in t) for opaque functions.
class Bindings {
 public:
  Bindings& set(Jet j, Scalar v);
  Bindings& set(const JetPoint& p);
  Bindings& set_param(const std::string& name, Scalar v);
  Bindings& set_function(const std::string& name, const Expr& over_t);

  const std::optional<Scalar>& jet(Jet j) const { return jets_[static_cast<std::size_t>(j)]; }
  const std::map<std::string, Scalar>& params() const { return params_; }
  const std::map<std::string, Expr>& functions() const { return functions_; }

  JetPoint point() const;

 private:
  std::array<std::optional<Scalar>, 5> jets_{};
  std::map<std::string, Scalar> params_;
  std::map<std::string, Expr> functions_;
};

/// Compiled numeric form of an expression. Opaque functions are resolved
/// once at construction; named constants become slots whose values are fixed
/// by the bindings or supplied per call. Evaluation enforces the guards:
/// |denominator| >= guard_eps, ln of a positive value, no fractional power of
/// a negative value, finite result.
class Evaluator {
 public:
  /// Every named constant must be bound in b.
  Evaluator(const Expr& e, const Bindings& b, double guard_eps = kGuardEpsilon);
  /// Named constants are left as slots, filled per call in param_names() order.
  Evaluator(const Expr& e, const std::map<std::string, Expr>& functions,
            double guard_eps = kGuardEpsilon);

  double operator()(const JetPoint& p) const;
  double operator()(const JetPoint& p, std::span<const double> params) const;

  const Expr& resolved() const { return resolved_; }
  const std::vector<std::string>& param_names() const { return param_names_; }

 private:
  struct Op {
    Kind kind;
    double value = 0.0;   // constant, or exponent of a power
    int int_exponent = 0;
    bool integral = false;
    int slot = 0;
    Jet jet = Jet::x;
    Fn fn = Fn::exp;
    std::vector<int> args;
  };
  void build();
  int compile(const Expr& e);
  double run(int index, const JetPoint& p, const double* params) const;

  Expr resolved_;
  std::vector<std::string> param_names_;
  std::vector<double> param_defaults_;
  std::vector<Op> ops_;
  int root_ = 0;
  double guard_eps_;
};

/// Numeric value at the jet values held by b.
double evaluate(const Expr& e, const Bindings& b, double guard_eps = kGuardEpsilon);

/// Exact value when e has no transcendental node after instantiation; bound
/// doubles are read as the dyadic rationals they represent. nullopt otherwise.
std::optional<Rational> evaluate_exact(const Expr& e, const Bindings& b, double guard_eps = kGuardEpsilon);

}  // namespace nullag
