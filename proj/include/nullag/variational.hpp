#pragma once

#include "nullag/domain.hpp"
#include "nullag/equivalence.hpp"
#include "nullag/evaluate.hpp"
#include "nullag/expr.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace nullag {

/// L(x, x', t) with the box and guards on which it is studied.
struct Lagrangian {
  Expr body;
  Domain domain;

  /// Throws invalid_argument when body contains x'' or x'''.
  static Lagrangian make(const Expr& body, Domain domain = {});
};

/// Phi(x, t).
struct GaugeFunction {
  Expr body;
  Domain domain;

  /// Throws invalid_argument when body contains x' or higher.
  static GaugeFunction make(const Expr& body, Domain domain = {});
};

enum class Nullity { proven_null, numerically_null, not_null };

std::string_view nullity_name(Nullity n);

struct NullityReport {
  Nullity verdict = Nullity::not_null;
  Expr residual;
  EquivalenceReport check;

  bool null() const { return verdict != Nullity::not_null; }
};

/// d/dt(dL/dx') - dL/dx.
Expr euler_lagrange_residual(const Lagrangian& L);

NullityReport is_null(const Lagrangian& L, const CheckOptions& options = {});

/// dPhi/dt; null by construction.
Lagrangian from_gauge(const GaugeFunction& phi);

/// dB/dt - d(x C)/dx.
Expr null_condition_residual(const Expr& B, const Expr& C);

/// dL/dx'.
Expr momentum(const Lagrangian& L);

/// (B, C, f) with B x' + C x + f null. The certified factory checks both the
/// null condition and the Euler-Lagrange residual on the domain.
class NullPair {
 public:
  /// Throws null_certification_failed when either check fails.
  static NullPair certify(const Expr& B, const Expr& C, const Expr& f, const Domain& domain,
                          const CheckOptions& options = {});
  /// No checks; certified() is false.
  static NullPair uncertified(const Expr& B, const Expr& C, const Expr& f, const Domain& domain);

  const Expr& B() const { return B_; }
  const Expr& C() const { return C_; }
  const Expr& f() const { return f_; }
  const Domain& domain() const { return domain_; }
  bool certified() const { return certificate_.has_value(); }
  const std::optional<NullityReport>& certificate() const { return certificate_; }

  /// B x' + C x + f.
  Expr body() const;
  Lagrangian lagrangian() const { return Lagrangian::make(body(), domain_); }

 private:
  NullPair(Expr B, Expr C, Expr f, Domain domain);
  Expr B_, C_, f_;
  Domain domain_;
  std::optional<NullityReport> certificate_;
};

/// Closed-form trajectory on [t0, t1].
struct Path {
  double t0 = 0.0;
  double t1 = 1.0;
  std::function<double(double)> x;
  std::function<double(double)> xdot;

  static Path line(double t0, double x0, double t1, double x1);
  /// Adds A sin(pi k (t - t0) / (t1 - t0)), which vanishes at both ends.
  Path with_bump(double amplitude, int k) const;
};

/// Composite Simpson quadrature of L along the path. Named constants and
/// opaque functions come from `values`.
double action(const Lagrangian& L, const Path& p, const Bindings& values = {}, int panels = 2000);

/// `count` bumped copies of `base` with A uniform in (0, max_amplitude] and k
/// uniform in {1, 2, 3}, drawn from a mt19937_64 seeded with `seed`.
struct Bump {
  double amplitude;
  int k;
};
std::vector<Bump> bump_family(int count, double max_amplitude, std::uint64_t seed);

struct PathIndependenceReport {
  double action1 = 0.0;
  double action2 = 0.0;
  double difference = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Throws endpoint_mismatch when the paths do not share t0, t1, x(t0), x(t1).
PathIndependenceReport path_independence_check(const Lagrangian& L, const Path& p1, const Path& p2,
                                               const Bindings& values = {}, double tolerance = 1e-7,
                                               int panels = 2000);

struct GaugeReconstruction {
  bool reconstructed = false;
  Expr phi;
  std::string reason;
};

/// Phi with dPhi/dt = L, built as the x-antiderivative of dL/dx' plus a
/// t-antiderivative of what remains. Reports "gauge not reconstructed" when
/// either integral leaves the supported class.
GaugeReconstruction reconstruct_gauge(const Lagrangian& L);

}  // namespace nullag
