#pragma once

#include "nullag/domain.hpp"
#include "nullag/expr.hpp"
#include "nullag/point.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nullag {

enum class Verdict { proven_equal, numerically_equal, distinct };

std::string_view verdict_name(Verdict v);

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct CheckOptions {
  std::uint64_t seed = kDefaultSeed;
  int points = 50;
  double tolerance = 1e-9;
};

struct EquivalenceReport {
  Verdict verdict = Verdict::distinct;
  std::optional<Witness> witness;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = 0.0;
  int points = 0;   // accepted sample points per round
  int rounds = 0;   // instantiation rounds
  double max_error = 0.0;  // largest |e1 - e2| / (1 + |e1|) seen
  std::vector<std::string> instantiation_set;

  bool equal() const { return verdict != Verdict::distinct; }
};

/// True when e is zero after canonicalization, or after multiplying out the
/// largest negative power of every denominator base. Sound, incomplete.
bool proven_zero(const Expr& e);

/// Tri-state comparison: proven_equal by canonical form, numerically_equal
/// when |e1 - e2| <= tol * (1 + |e1|) at `points` guarded samples in every
/// instantiation round, distinct with a witness otherwise.
/// Throws infeasible_domain when the domain yields too few samples.
EquivalenceReport equivalent(const Expr& e1, const Expr& e2, const Domain& d,
                             const CheckOptions& options = {});

/// First guarded sample point (same seeding and instantiation rounds as
/// equivalent()) at which `bad` holds for the value of e, with e's value in
/// witness.lhs. Points where e cannot be evaluated are skipped.
std::optional<Witness> find_violation(const Expr& e, const Domain& d, const CheckOptions& options,
                                      const std::function<bool(double)>& bad);

}  // namespace nullag
