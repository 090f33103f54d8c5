#pragma once

#include "nullag/evaluate.hpp"
#include "nullag/expr.hpp"
#include "nullag/point.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nullag {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

enum class GuardKind { nonzero, positive };

struct Guard {
  Expr expr;
  GuardKind kind = GuardKind::nonzero;
};

/// Sampling box for the jet coordinates and named constants, plus guard
/// expressions that must stay away from zero (or positive) by kGuardEpsilon.
///
/// The default box keeps x and t in [0.25, 1.25], away from the x = 0 and
/// t = 0 singular sets of the cataloged systems.
struct Domain {
  Interval x{0.25, 1.25};
  Interval t{0.25, 1.25};
  Interval xdot{-1.5, 1.5};
  Interval xddot{-1.5, 1.5};
  Interval xdddot{-1.5, 1.5};
  /// Range for named constants without a fixed value.
  Interval params{0.5, 1.5};
  std::map<std::string, Rational> fixed;
  std::vector<Guard> guards;

  Domain& guard_nonzero(const Expr& e);
  Domain& guard_positive(const Expr& e);
  Domain& fix(const std::string& name, const Rational& value);

  /// Same box, guards of both.
  Domain merged(const Domain& other) const;
};

/// The standard test set for opaque functions: 1, t, t^2, exp(t/2), sin t, 1 + t^2.
const std::vector<Expr>& standard_instantiations();

/// Instantiation used in round r: the i-th function name (sorted) receives
/// standard_instantiations()[(r + i) % 6].
std::map<std::string, Expr> instantiation_round(const std::set<std::string>& names, int round);

/// Number of rounds needed to cycle every function through the full set.
int instantiation_rounds(const std::set<std::string>& names);

/// Seeded sampler of guarded points. Named constants listed in `params`
/// are drawn from the parameter range unless fixed by the domain.
class Sampler {
 public:
  Sampler(const Domain& d, std::uint64_t seed);

  /// Draws until every guard holds under `functions`; nullopt after
  /// max_attempts rejections.
  std::optional<std::pair<Bindings, Witness>> draw(const std::set<std::string>& params,
                                                   const std::map<std::string, Expr>& functions,
                                                   int max_attempts = 200);

 private:
  double uniform(const Interval& i);
  bool guards_hold(const Bindings& b) const;

  const Domain& domain_;
  std::mt19937_64 rng_;
};

}  // namespace nullag
