#pragma once

#include "nullag/composer.hpp"
#include "nullag/domain.hpp"
#include "nullag/equivalence.hpp"
#include "nullag/expr.hpp"
#include "nullag/variational.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nullag {

enum class Classification {
  inertia,
  damped_oscillator_tied,
  quadratic_damping,
  no_null_lagrangian,
  time_dependent,
  displacement_dependent,
};

std::string_view classification_name(Classification c);

/// One catalog entry: the target equation x'' + alpha x'^2 + beta x' + gamma x = 0,
/// the (B, C) it forces, the constraints that must vanish, and the null
/// Lagrangian with its equation of motion when it exists.
struct SystemCase {
  Classification classification = Classification::no_null_lagrangian;
  Expr ode;  // x'' + alpha x'^2 + beta x' + gamma x
  Expr B;
  Expr C;
  std::vector<Expr> constraints;
  std::optional<NullPair> null_pair;
  std::optional<EquationOfMotion> eom;
  /// Set when no null Lagrangian exists.
  std::string absent_reason;
  std::optional<Witness> witness;
  /// Closed-form integrals (I_beta, I_alpha) and integration constants.
  std::map<std::string, Expr> integrals;
  Domain domain;
};

/// Name of the overall scale constant of every emitted B.
inline const char* const kScaleName = "B0";

/// Constant coefficients. Classifies and, for admissible cases, emits
/// B = B0 exp(alpha x + beta t/2), C = 2 B0 (gamma/beta) exp(...) (C = 0 when
/// gamma = 0), certified, with the Corollary 1 equation of motion.
SystemCase classify_constant(const Expr& alpha, const Expr& beta, const Expr& gamma, const Domain& domain = {},
                             const CheckOptions& options = {});

/// gamma1 = beta1'/2 + beta1^2/4.
Expr derive_gamma1(const Expr& beta1);

/// Largest |beta1 e^I / 2 - beta1(t_a) e^I(t_a) / 2 - int_{t_a}^t gamma1 e^I| over
/// `samples` points t of the domain's t interval (t_a its lower end), with
/// I = int beta1 / 2 in closed form and Simpson quadrature on `panels` panels.
double gamma1_constraint_residual(const Expr& beta1, const Expr& gamma1, const Domain& domain = {},
                                  int samples = 20, int panels = 2000);

/// Time-dependent coefficients. alpha1 = 0 gives B = B0 e^I_beta and
/// C = beta1 B0 e^I_beta / 2; alpha1 != 0 is admissible only as the constant
/// quadratic-damping case. Throws constraint_violated or integral_unsupported.
SystemCase build_timedep(const Expr& alpha1, const Expr& beta1, const Expr& gamma1, const Domain& domain = {},
                         const CheckOptions& options = {});

/// gamma2 = e^(-I_alpha) [beta^2/4 int e^(I_alpha) dx + c] / x, the solution of
/// x gamma2' + gamma2 (1 + alpha2 x) = beta^2/4.
Expr solve_gamma2(const Expr& alpha2, const Expr& beta, const Expr& c);

/// x gamma2' + gamma2 (1 + alpha2 x) - beta^2/4.
Expr gamma2_constraint(const Expr& alpha2, const Expr& beta, const Expr& gamma2);

/// Displacement-dependent coefficients with constant damping beta.
SystemCase build_displacement(const Expr& alpha2, const Expr& beta, const Expr& gamma2, const Domain& domain = {},
                              const CheckOptions& options = {});

enum class TripleSystem { inertia, quadratic_damping, damped_oscillator_tied };

std::string_view triple_name(TripleSystem s);

/// Standard, non-standard and null Lagrangians of one system, and the target
/// equation. L_sd and L_nsd go through Euler-Lagrange, L_null through
/// Corollary 1.
struct ComparisonTriple {
  TripleSystem system;
  Lagrangian L_sd;
  Lagrangian L_nsd;
  NullPair L_null;
  Expr ode;
};

ComparisonTriple comparison_catalog(TripleSystem system, const CheckOptions& options = {});

/// Numeric defaults for the catalog constants: c1 = c2 = c3 = B0 = 1,
/// alpha0 = 1, beta0 = 2, and ao = vo = C1 = C2 = 1 for the inertia
/// non-standard Lagrangian.
const std::map<std::string, Rational>& default_constants();

/// One printed formula checked against its derived counterpart.
struct AuditEntry {
  std::string id;
  std::string description;
  Expr printed;
  Expr derived;
  EquivalenceReport comparison;
  /// Nullity of the derived (corrected) Lagrangian.
  NullityReport corrected;
  /// Nullity of the printed Lagrangian, when the printed object is one.
  std::optional<NullityReport> printed_nullity;

  bool detected() const { return comparison.verdict == Verdict::distinct && comparison.witness.has_value(); }
};

/// Printed-formula audit: the oscillator null Lagrangian factor, the sign of
/// the exponent in the beta = 0 displacement case, the non-standard
/// Lagrangian transcription, and the oscillator reciprocity claim.
std::vector<AuditEntry> audit(const CheckOptions& options = {});

}  // namespace nullag
