#pragma once

#include "nullag/point.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nullag {

enum class ErrorCode {
  syntax,
  unknown_function,
  malformed_derivative,
  unbound_atom,
  division_guard,
  ln_domain,
  non_finite,
  infeasible_domain,
  invalid_argument,
  antiderivative_unsupported,
  null_certification_failed,
  null_certification_missing,
  denominator_vanishes,
  range_guard_violated,
  leading_coefficient_vanishes,
  constraint_violated,
  integral_unsupported,
  endpoint_mismatch,
  path_exits_domain,
  quadrature_non_finite,
  domain_exit,
  grid_mismatch,
  harmonic_order_cap,
};

/// Stable machine-readable name, e.g. "antiderivative_unsupported".
std::string_view code_name(ErrorCode code);

/// Single exception type for the library; the code drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, Witness witness);
  Error(ErrorCode code, const std::string& message, std::size_t position);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<Witness>& witness() const noexcept { return witness_; }
  const std::optional<std::size_t>& position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<Witness> witness_;
  std::optional<std::size_t> position_;
};

}  // namespace nullag
