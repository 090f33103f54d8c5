#pragma once

#include "nullag/domain.hpp"
#include "nullag/equivalence.hpp"
#include "nullag/expr.hpp"
#include "nullag/variational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nullag {

struct SolveCResult {
  Expr xC;
  Expr C;
  /// Conditions attached by the antiderivative (ln arguments) and by the
  /// division by x.
  std::vector<Guard> guards;
  std::vector<std::string> warnings;
};

/// C with d(xC)/dx = dB/dt. The free function of t in xC is `free_t`
/// (zero by default). Warns "singular at origin" when C carries a negative
/// power of x and the domain's x interval contains 0.
SolveCResult solve_C(const Expr& B, const Domain& domain = {}, const Expr& free_t = Expr(0));

/// Certified (B, solve_C(B), f).
NullPair build_null(const Expr& B, const Expr& f = Expr(0), const Domain& domain = {},
                    const CheckOptions& options = {});

/// sum_{i=0..n} binom(n, n-i) d^i B / dx^i.
Expr weighted_B(const Expr& B, int n);

inline constexpr int kHarmonicOrderCap = 8;

struct HarmonicLagrangian {
  NullPair base;
  int order = 0;
  Expr Bn;
  Expr xCn;
  Expr body;
  NullityReport certificate;
};

/// L^(n) = B_n x' + [xC]_n + f with both weights applied. Certified null.
HarmonicLagrangian harmonic(const NullPair& base, int n, int cap = kHarmonicOrderCap,
                            const CheckOptions& options = {});

/// f1 / (f2 x + f3 t + f4), each f_i a constant or function of t.
struct FractionSpec {
  Expr f1;
  Expr f2;
  Expr f3;
  Expr f4;

  Expr denominator() const;
  Expr generating_function() const;
  Expr h2() const;  // f1' f2 - f1 f2'
  Expr h3() const;  // f1' f3 - f1 f3' - f1 f3
  Expr h4() const;  // f1' f4 - f1 f4'
};

/// Null pair generated by the fraction; the domain gains the guard
/// f2 x + f3 t + f4 > 0. Throws denominator_vanishes for a zero denominator.
NullPair build_nonstandard_null(const FractionSpec& spec, const Expr& f = Expr(0), const Domain& domain = {},
                                const CheckOptions& options = {});

/// Harmonic through the recursion L^(n) = L^(n-1) + d/dt B_(n-1); the result
/// is cross-checked against harmonic().
HarmonicLagrangian nonstandard_harmonic(const NullPair& base, int n, int cap = kHarmonicOrderCap,
                                        const CheckOptions& options = {});

/// The published transcription of the non-standard Lagrangian, with the
/// f3 x denominator in the bracket and h3 t + h4 in the last term.
Expr printed_nonstandard_lagrangian(const FractionSpec& spec, const Expr& f);

/// The same with the bracket denominator restored to f2 x + f3 t + f4.
Expr denominator_fixed_nonstandard_lagrangian(const FractionSpec& spec, const Expr& f);

/// The C-part x C in closed form:
///   h2/f2^2 [ln D + (f3 t + f4)/D] - ((f1' f3 - f1 f3') t - f1 f3 + h4)/(f2 D).
Expr nonstandard_xC_closed_form(const FractionSpec& spec);

/// One entry of the construction corpus.
struct CorpusEntry {
  enum class Kind { generating, fraction };
  std::string name;
  Kind kind = Kind::generating;
  Expr B;               // generating
  FractionSpec fraction;  // fraction
  Expr f;
  Domain domain;
};

/// The worked examples: linear, quadratic and sin/exp generating functions,
/// constant B, quadratic damping, the tied oscillator, the x^2 gauge example,
/// and three fraction specs.
const std::vector<CorpusEntry>& standard_corpus();

/// Builds the null pair of an entry.
NullPair build_entry(const CorpusEntry& entry, const CheckOptions& options = {});

}  // namespace nullag
