#pragma once

#include "nullag/construct.hpp"
#include "nullag/domain.hpp"
#include "nullag/equivalence.hpp"
#include "nullag/expr.hpp"
#include "nullag/variational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nullag {

/// Outer function F of a composed Lagrangian F(L), stored as an expression
/// in the slot constant `lambda`.
class Composer {
 public:
  static Composer identity();
  static Composer exp();
  static Composer ln();
  static Composer reciprocal();
  static Composer power(const Rational& k);
  /// F given in the slot `lambda`, e.g. parse("lambda^2 + lambda").
  static Composer custom(const Expr& F, std::string name = "custom");

  static Expr slot();

  const std::string& name() const { return name_; }
  const Expr& F() const { return F_; }

  /// F(L), F'(L), F''(L).
  Expr apply(const Expr& L) const;
  Expr first(const Expr& L) const;
  Expr second(const Expr& L) const;

  /// Conditions on the range of L: L > 0 for ln and fractional powers,
  /// L != 0 for negative powers.
  std::vector<Guard> range_guards(const Expr& L) const;

 private:
  Composer(Expr F, std::string name, std::vector<GuardKind> range);
  Expr F_, dF_, ddF_;
  std::string name_;
  std::vector<GuardKind> range_;
};

/// F(L) on L's domain plus F's range guards. Throws range_guard_violated
/// with a witness when a sample of L's domain breaks a range guard.
Lagrangian compose(const Composer& F, const Lagrangian& L, const CheckOptions& options = {});

/// L's domain restricted by F's range guards (no check).
Domain restrict_range(const Composer& F, const Lagrangian& L);

enum class Provenance { corollary1, prop3, euler_lagrange };

std::string_view provenance_name(Provenance p);

struct EquationOfMotion {
  Expr residual;  // zero set is the dynamics
  Expr leading;   // coefficient of x''
  Provenance provenance = Provenance::euler_lagrange;
  Domain domain;

  static EquationOfMotion make(const Expr& residual, Provenance p, Domain domain);
};

/// Euler-Lagrange residual packaged as an equation of motion.
EquationOfMotion euler_lagrange_eom(const Lagrangian& L);

/// p F''(L) dL/dt + (dp/dt - dL/dx) F'(L), p = dL/dx'.
EquationOfMotion prop3_eom(const Composer& F, const Lagrangian& L);

/// B x'' + (B_x x' + 2 B_t) x' + C_t x + f', checked against d/dt of the
/// assembled Lagrangian. Throws null_certification_missing for an
/// uncertified pair.
EquationOfMotion corollary1_eom(const NullPair& np, const CheckOptions& options = {});

/// residual(n) = residual(n-1) + d/dt d/dt B_(n-1), checked against d/dt of
/// the harmonic body.
EquationOfMotion harmonic_eom(const HarmonicLagrangian& h, const CheckOptions& options = {});

/// x'' = g(x, x', t) with g = -(residual - leading x'')/leading. Throws
/// leading_coefficient_vanishes with a witness when the leading coefficient
/// comes within the guard margin of zero on the domain.
struct ExplicitForm {
  Expr g;
  Domain domain;
};
ExplicitForm solve_leading(const EquationOfMotion& eom, const CheckOptions& options = {});

/// "residual = 0" and "x'' = g" lines in the expression grammar.
std::string format_eom(const EquationOfMotion& eom);

/// Corollary 1 check for one outer function on a null pair: prop3_eom
/// collapses to p F''(L) dL/dt, its second term vanishes, and after dividing
/// by p F''(L) the zero set matches corollary1_eom.
struct FormIndependenceReport {
  EquivalenceReport collapse;
  EquivalenceReport second_term;
  EquivalenceReport zero_set;
  /// p F''(L) stays away from zero at every sample; otherwise "conditional".
  bool permissible = true;
  std::optional<Witness> degenerate_at;

  bool holds() const { return collapse.equal() && second_term.equal() && zero_set.equal(); }
};
FormIndependenceReport check_form_independence(const Composer& F, const NullPair& np,
                                               const CheckOptions& options = {});

}  // namespace nullag
